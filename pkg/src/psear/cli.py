"""psear command line.

Exit codes: 0 success, 1 invalid instance or refutation, 2 oracle budget
exhausted, 64 malformed input, 70 internal invariant failure.
"""

import argparse
import json
import sys

from .complex import f_vector, h_vector
from .ears import BaseSphere, build, dec_to_dict, dumps_instance, ear_counts, loads_instance, realize
from .engine import pure_witness
from .errors import GluingViolation, InfeasibleBudget, InternalInvariantError, ParseError, PsearError, UnsupportedBase
from .generate import GenSpec, gen_decomposition
from .graphs import dump_graph
from .multicomplex import BUDGET, DEFAULT_BUDGET, WITNESS, pure_oseq_oracle

EXIT_OK, EXIT_FAIL, EXIT_BUDGET, EXIT_PARSE, EXIT_INTERNAL = 0, 1, 2, 64, 70


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def _tup(t):
    return "(" + ",".join(str(v) for v in t) + ")"


def _ints(text, n=None):
    try:
        vals = tuple(int(v) for v in text.split(","))
    except ValueError:
        raise ParseError(f"expected comma-separated integers, got {text!r}") from None
    if n is not None and len(vals) != n:
        raise ParseError(f"expected {n} integers, got {len(vals)}")
    return vals


def _load(path):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return loads_instance(text)


def _emit(out, text, path=None):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        out.write(text)


def cmd_verify(args, out):
    dec = _load(args.file)
    try:
        b = build(dec)
    except GluingViolation as exc:
        if args.json:
            out.write(json.dumps({"valid": False, "ear": exc.index, "condition": exc.condition}) + "\n")
        else:
            out.write(f"invalid: {exc}\n")
        return EXIT_FAIL
    counts = ear_counts(dec)
    if args.json:
        out.write(json.dumps({"valid": True, "base": dec.base.value, "ears": len(dec.ears), "vertices": b.n, "counts": list(counts)}) + "\n")
    else:
        out.write(f"valid: {dec.base.value} base, {len(dec.ears)} ears, {b.n} vertices, counts (A,B,E,F) = {_tup(counts)}\n")
    if args.dump_graph:
        from .ears import labeled_graph_of

        try:
            out.write(dump_graph(labeled_graph_of(dec)))
        except UnsupportedBase as exc:
            out.write(f"# no labeled graph: {exc}\n")
    return EXIT_OK


def cmd_hvec(args, out):
    dec = _load(args.file)
    try:
        cx = realize(dec)
    except GluingViolation as exc:
        out.write(f"invalid: {exc}\n")
        return EXIT_FAIL
    f = f_vector(cx)
    h = h_vector(f)
    if args.json:
        out.write(json.dumps({"f": list(f), "h": list(h)}) + "\n")
    else:
        out.write(f"f = {_tup(f)}\nh = {_tup(h)}\n")
    return EXIT_OK


def _witness(args, out):
    dec = _load(args.file)
    try:
        build(dec)
    except GluingViolation as exc:
        out.write(f"invalid: {exc}\n")
        return None, EXIT_FAIL
    rep = pure_witness(dec)
    if not rep.ok:
        sys.stderr.write("internal invariant failure\nroute: " + " | ".join(rep.route) + f"\n{rep.diagnostics}\n")
        return rep, EXIT_INTERNAL
    return rep, EXIT_OK


def cmd_compress(args, out):
    rep, code = _witness(args, out)
    if code != EXIT_OK:
        return code
    if args.json:
        text = json.dumps(dec_to_dict(rep.compressed)) + "\n"
    else:
        text = dumps_instance(rep.compressed)
    _emit(out, text, args.out)
    return EXIT_OK


def cmd_witness(args, out):
    rep, code = _witness(args, out)
    if rep is None:
        return code
    _emit(out, rep.to_json() if args.json else rep.to_text(), args.out)
    return code


def cmd_check_oseq(args, out):
    F = _ints(args.vector)
    caps = {} if not args.no_caps else {"max_variables": None, "max_tops": None}
    res = pure_oseq_oracle(F, budget=args.budget, **caps)
    if args.json:
        d = {"status": res.status, "steps": res.steps}
        if res.status == WITNESS:
            d["monomials"] = res.witness.strings()
        out.write(json.dumps(d) + "\n")
    elif res.status == WITNESS:
        ms = res.witness.strings()
        out.write(f"pure O-sequence: {len(ms)} monomials\n" + " ".join(ms) + "\n")
    elif res.status == BUDGET:
        out.write(f"budget exhausted after {res.steps} steps\n")
    else:
        out.write("not a pure O-sequence\n")
    return {WITNESS: EXIT_OK, BUDGET: EXIT_BUDGET}.get(res.status, EXIT_FAIL)


def cmd_gen(args, out):
    base = args.base if args.base == "any" else BaseSphere(args.base)
    eta = _ints(args.eta, 4) if args.eta else None
    spec = GenSpec(seed=args.seed, base=base, eta=eta, total=args.total, max_vertices=args.max_vertices)
    try:
        dec = gen_decomposition(spec)
    except InfeasibleBudget as exc:
        sys.stderr.write(f"infeasible: {exc}\n")
        return EXIT_FAIL
    text = json.dumps(dec_to_dict(dec)) + "\n" if args.json else dumps_instance(dec)
    _emit(out, text, args.out)
    return EXIT_OK


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="structured JSON output")
    p = _Parser(prog="psear", description="PS ear-decomposable complexes and pure O-sequence witnesses")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("verify", parents=[common], help="check the gluing rule for every ear")
    s.add_argument("file")
    s.add_argument("--dump-graph", action="store_true", help="print the labeled 1-skeleton")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("hvec", parents=[common], help="print f- and h-vectors")
    s.add_argument("file")
    s.set_defaults(func=cmd_hvec)

    s = sub.add_parser("compress", parents=[common], help="write the compressed decomposition")
    s.add_argument("file")
    s.add_argument("--out")
    s.set_defaults(func=cmd_compress)

    s = sub.add_parser("witness", parents=[common], help="build and verify a pure multicomplex witness")
    s.add_argument("file")
    s.add_argument("--out")
    s.set_defaults(func=cmd_witness)

    s = sub.add_parser("check-oseq", parents=[common], help="exhaustive pure O-sequence test")
    s.add_argument("vector", help="F0,F1,...,Fd")
    s.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    s.add_argument("--no-caps", action="store_true", help="lift the F1 <= 6 and Fd <= 8 limits")
    s.set_defaults(func=cmd_check_oseq)

    s = sub.add_parser("gen", parents=[common], help="generate a random valid instance")
    s.add_argument("--base", default="tetrahedron", choices=[b.value for b in BaseSphere] + ["any"])
    s.add_argument("--eta", help="A,B,E,F ear counts")
    s.add_argument("--total", type=int, default=0, help="number of ears when --eta is not given")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--max-vertices", type=int)
    s.add_argument("--out")
    s.set_defaults(func=cmd_gen)
    return p


def run(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except ParseError as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return EXIT_PARSE
    except InternalInvariantError as exc:
        sys.stderr.write(f"internal invariant failure: {exc}\n")
        return EXIT_INTERNAL
    except PsearError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_FAIL


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
