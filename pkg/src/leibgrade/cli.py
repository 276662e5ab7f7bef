"""leibgrade command line.

Exit codes: 0 all requested checks pass, 1 a check fails, 2 malformed input.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from importlib import resources
from pathlib import Path

import jsonschema

from . import __version__
from .checks import CheckLog
from .chevalley import ChevalleyEmbedding, ConstructionFailure, build_chevalley
from .dialg import (
    Dialgebra,
    MissingBarUnit,
    NotAssociative,
    check_alternative,
    check_associative,
)
from .exactlin import ONE, format_scalar
from .leibniz import (
    DegreeTooLarge,
    LeibnizAlgebra,
    NotPerfect,
    check_leibniz,
    homology,
    universal_central_extension,
)
from .matrixleib import (
    NotCommutative,
    build_gl,
    build_sl,
    build_steinberg_model,
    build_tensor_algebra,
    sl_embedding,
)
from .recognition import GradingFailure, recognize, steinberg_grading
from .rootsys import UnsupportedType, a2_classes, enumerate_a2_pairs, parse_root_system


class InputError(Exception):
    """Malformed input file; maps to exit code 2."""


def _schemas() -> dict:
    return json.loads(resources.files("leibgrade").joinpath("data/schemas.json").read_text())


def validate(obj, kind: str, where: str = "input") -> None:
    schemas = _schemas()
    schema = {**schemas, **schemas[kind]}
    try:
        jsonschema.validate(obj, schema)
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise InputError(f"{where}: field {path}: {exc.message}") from None


def load_json(path: str, kind: str | None = None):
    p = Path(path)
    if not p.exists():
        bundled = resources.files("leibgrade").joinpath("data", p.name)
        if bundled.is_file():
            text = bundled.read_text()
        else:
            raise InputError(f"{path}: no such file")
    else:
        text = p.read_text()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if kind is not None:
        validate(obj, kind, path)
    return obj, hashlib.sha256(text.encode()).hexdigest()


def load_dialgebra(path: str) -> tuple[Dialgebra, str]:
    obj, digest = load_json(path, "dialgebra")
    try:
        return Dialgebra.from_json(obj), digest
    except (ValueError, IndexError, KeyError) as exc:
        raise InputError(f"{path}: {exc}") from None


def load_leibniz(path: str, check: bool = False) -> tuple[LeibnizAlgebra, str]:
    obj, digest = load_json(path, "leibniz")
    try:
        return LeibnizAlgebra.from_json(obj, check=check), digest
    except (ValueError, IndexError, KeyError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    return format_scalar(x) if hasattr(x, "denominator") else str(x)


class Report:
    def __init__(self, command: str):
        self.command = command
        self.inputs: dict = {}
        self.log = CheckLog()
        self.result: dict = {}
        self.start = time.perf_counter()

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "version": __version__,
            "inputs": dict(sorted(self.inputs.items())),
            "checks": _jsonable(self.log.to_json()),
            "result": _jsonable(self.result),
            "ok": self.log.ok,
            "timing": round(time.perf_counter() - self.start, 3),
        }

    def emit(self, fmt: str, out=None) -> int:
        out = out or sys.stdout
        data = self.to_json()
        if fmt == "json":
            validate(data, "report", "report")
            out.write(json.dumps(data, indent=1, sort_keys=True) + "\n")
        else:
            out.write(f"{self.command}: {'PASS' if data['ok'] else 'FAIL'}\n")
            for e in data["checks"]:
                extra = {k: v for k, v in e.items() if k not in ("check", "pass", "axiom", "holds")}
                tail = f" {json.dumps(extra, sort_keys=True)}" if extra and not e["pass"] else ""
                out.write(f"  [{'PASS' if e['pass'] else 'FAIL'}] {e['check']}{tail}\n")
            for k, v in data["result"].items():
                if not isinstance(v, (dict, list)):
                    out.write(f"  {k}: {v}\n")
        return 0 if data["ok"] else 1


def write_json(path: str, obj) -> None:
    Path(path).write_text(json.dumps(obj, indent=1) + "\n")


# ---------- subcommands ----------

def cmd_roots(args, rep: Report) -> None:
    rs = parse_root_system(f"{args.type}{args.rank}")
    rep.result.update(name=rs.name, num_roots=len(rs),
                      simple=[rs.root_name(a) for a in rs.simple],
                      roots=[rs.root_name(a) for a in range(len(rs))])
    rep.log.record("root-count", len(rs) == {"A": args.rank * (args.rank + 1), "D": 2 * args.rank * (args.rank - 1),
                                             "E": {6: 72, 7: 126, 8: 240}.get(args.rank)}[rs.kind])
    if args.a2_classes:
        classes = a2_classes(rs)
        pairs = enumerate_a2_pairs(rs)
        rep.result["pairs"] = [[rs.root_name(p.first), rs.root_name(p.second), p.class_tag.value] for p in pairs]
        rep.result["num_pairs"] = len(pairs)
        rep.result["num_classes"] = len(classes)
        rep.result["class_sizes"] = [len(c) for c in classes]


def cmd_chevalley(args, rep: Report) -> None:
    if args.roots:
        rs = parse_root_system(args.roots)
    elif args.type and args.rank:
        rs = parse_root_system(f"{args.type}{args.rank}")
    else:
        raise InputError("give --roots or both --type and --rank")
    g = build_chevalley(rs, verify=args.verify, seed=args.seed)
    rep.log.record("construction", True)
    rep.result.update(roots=rs.name, dim=g.dim, digest=g.digest())
    if args.out:
        write_json(args.out, g.algebra.to_json())


def cmd_dialg(args, rep: Report) -> None:
    d, digest = load_dialgebra(args.input)
    rep.inputs[args.input] = digest
    if args.axioms in ("ass", "all"):
        rep.log.extend(check_associative(d))
    if args.axioms in ("alt", "all"):
        rep.log.extend(check_alternative(d))
    rep.result.update(dim=d.dim, bar_unit=d.bar_unit is not None)


def cmd_leib(args, rep: Report) -> None:
    L, digest = load_leibniz(args.input)
    rep.inputs[args.input] = digest
    if args.action == "check":
        r, is_lie = check_leibniz(L)
        rep.log.extend([r])
        rep.result.update(dim=L.dim, is_lie=is_lie)
    elif args.action == "homology":
        h = homology(L, args.degree, cap=args.cap)
        rep.log.record("homology", True)
        rep.result.update(degree=h.degree, dim=h.dim, cycles=h.cycles_dim, boundaries=h.boundaries_dim)
    else:
        u = universal_central_extension(L, cap=args.cap)
        rep.log.record("uce", True)
        rep.result.update(dim=u.dim, kernel_dim=u.kernel.dim)
        if args.out:
            write_json(args.out, u.total.to_json())


def _build(args, rep: Report):
    """Returns (algebra, embedding or None, index map)."""
    D, digest = load_dialgebra(args.dialgebra)
    rep.inputs[args.dialgebra] = digest
    if args.what == "tensor":
        if not args.roots:
            raise InputError("--roots is required for --what tensor")
        g = build_chevalley(parse_root_system(args.roots))
        T = build_tensor_algebra(g, D)
        index = [[g.algebra.basis[k // D.dim], D.basis[k % D.dim]] for k in range(T.dim)]
        return T.algebra, T.embedding(), index
    if args.what == "gl":
        gl = build_gl(args.n, D)
        return gl.carrier, None, [list(gl.unindex(k)) for k in range(gl.dim)]
    if args.what == "sl":
        sl = build_sl(args.n, D)
        emb = None
        if D.bar_unit is not None and args.n >= 3:
            emb = sl_embedding(sl, build_chevalley(parse_root_system(f"A{args.n - 1}")))
        index = [[[k, format_scalar(x)] for k, x in sorted(v.items())] for v in sl.space.basis]
        return sl.carrier, emb, index
    st = build_steinberg_model(args.n, D, cap=args.cap)
    for e in st.log.entries:
        rep.log.record(e["check"], e["pass"])
    emb = steinberg_grading(st, build_chevalley(parse_root_system(f"A{args.n - 1}")))
    index = [list(st.uce.representative(a)) for a in range(st.uce.dim)]
    return st.algebra, emb, index


def cmd_build(args, rep: Report) -> None:
    L, emb, index = _build(args, rep)
    rep.log.record("leibniz-identity", check_leibniz(L)[0].holds)
    rep.result.update(what=args.what, dim=L.dim, is_lie=L.is_lie())
    if args.out:
        write_json(args.out, L.to_json())
        side = {"index": index}
        if emb is not None:
            side["embedding"] = emb.to_json()
        write_json(args.out + ".index.json", side)


def _recognition_report(rec, rep: Report) -> None:
    for e in rec.log().entries:
        rep.log.record(e["check"], e["pass"], **{k: v for k, v in e.items() if k not in ("check", "pass")})
    D = rec.dialgebra
    rep.result.update(R_dim=D.dim, dialgebra=D.to_json(),
                      base_root=rec.gd.rs.root_name(rec.chart.base))


def cmd_recognize(args, rep: Report) -> None:
    L, d1 = load_leibniz(args.algebra)
    emb_obj, d2 = load_json(args.embedding)
    rep.inputs.update({args.algebra: d1, args.embedding: d2})
    rs = parse_root_system(args.roots)
    if isinstance(emb_obj, dict) and "embedding" in emb_obj and "e" not in emb_obj:
        emb_obj = emb_obj["embedding"]
    validate(emb_obj, "embedding", args.embedding)
    try:
        emb = ChevalleyEmbedding.from_json(emb_obj, L, build_chevalley(rs))
    except (KeyError, ValueError) as exc:
        raise InputError(f"{args.embedding}: {exc}") from None
    alpha = rs.lookup(args.alpha) if args.alpha else None
    rec = recognize(L, emb, alpha=alpha, alt_words=args.alt_words, seed=args.seed)
    _recognition_report(rec, rep)
    if args.out:
        write_json(args.out, rec.dialgebra.to_json())


def cmd_roundtrip(args, rep: Report) -> None:
    L, emb, _ = _build(args, rep)
    if emb is None:
        raise InputError("round-trip needs sl, stl or tensor with a unital dialgebra")
    rs = emb.rs
    if args.roots and parse_root_system(args.roots).name != rs.name:
        raise InputError(f"--roots {args.roots} does not match the built grading {rs.name}")
    D = Dialgebra.from_json(load_json(args.dialgebra, "dialgebra")[0])
    a = rs.simple[0]
    # canonical identification R -> L_alpha: r -> e_alpha(r)
    if args.what == "tensor":
        basis = [_tensor_vec(emb, a, p, D.dim) for p in range(D.dim)]
    else:
        basis = [_typeA_vec(args, L, emb, p, D) for p in range(D.dim)]
    rec = recognize(L, emb, basis=basis, alt_words=args.alt_words, seed=args.seed)
    _recognition_report(rec, rep)
    R = rec.dialgebra
    rep.log.record("round-trip-left", R.left == D.left)
    rep.log.record("round-trip-right", R.right == D.right)
    rep.log.record("round-trip-bar-unit", R.bar_unit == D.bar_unit)


def _tensor_vec(emb, a, p, m):
    (k,) = emb.chev.e(a)
    return {k * m + p: ONE}


def _typeA_vec(args, L, emb, p, D):
    # rebuild cheaply: the first off-diagonal generator E_12(d_p) or v_12(d_p)
    key = (args.what, args.n, args.dialgebra)
    cache = _typeA_vec.__dict__.setdefault("cache", {})
    if key not in cache:
        if args.what == "sl":
            sl = build_sl(args.n, D, check=False)
            cache[key] = lambda q: sl.E(0, 1, {q: ONE})
        else:
            st = build_steinberg_model(args.n, D, cap=args.cap, check=False)
            cache[key] = lambda q: st.v(0, 1, {q: ONE})
    return cache[key](p)


def cmd_acceptance(args, rep: Report) -> None:
    from .acceptance import run_all
    numbers = [int(x) for x in args.only.split(",")] if args.only else None
    for r in run_all(numbers):
        rep.log.record(f"criterion-{r.number}", r.passed, title=r.title,
                       failures=r.log.failures(), error=r.error)
        if args.report == "text":
            print(r.line())


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="leibgrade", description="Exact toolkit for root-graded Leibniz algebras.")
    p.add_argument("--report", choices=("text", "json"), default="text")
    p.add_argument("--cap", type=int, default=10 ** 7, help="tensor-coordinate cap for chain complexes")
    p.add_argument("--seed", type=int, default=0, help="seed for sampled Weyl-word cross-checks")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("roots", help="root system data and A2-pair classes")
    r.add_argument("--type", required=True, choices=("A", "D", "E"))
    r.add_argument("--rank", required=True, type=int)
    r.add_argument("--a2-classes", action="store_true")
    r.set_defaults(fn=cmd_roots)

    c = sub.add_parser("chevalley", help="build a Chevalley algebra")
    c.add_argument("--roots")
    c.add_argument("--type", choices=("A", "D", "E"))
    c.add_argument("--rank", type=int)
    c.add_argument("--verify", nargs="?", const="full", default="full", choices=("full", "sample"))
    c.add_argument("--out")
    c.set_defaults(fn=cmd_chevalley)

    d = sub.add_parser("dialg", help="dialgebra axiom checks")
    d.add_argument("action", choices=("check",))
    d.add_argument("--input", required=True)
    d.add_argument("--axioms", choices=("ass", "alt", "all"), default="all")
    d.set_defaults(fn=cmd_dialg)

    lb = sub.add_parser("leib", help="Leibniz identity, homology, universal central extension")
    lb.add_argument("action", choices=("check", "homology", "uce"))
    lb.add_argument("--input", required=True)
    lb.add_argument("--degree", type=int, default=2)
    lb.add_argument("--out")
    lb.set_defaults(fn=cmd_leib)

    for name, fn in (("build", cmd_build), ("roundtrip", cmd_roundtrip)):
        b = sub.add_parser(name)
        b.add_argument("--what", required=True, choices=("gl", "sl", "stl", "tensor") if name == "build"
                       else ("sl", "stl", "tensor"))
        b.add_argument("--n", type=int, default=3)
        b.add_argument("--dialgebra", required=True)
        b.add_argument("--roots")
        if name == "build":
            b.add_argument("--out")
        else:
            b.add_argument("--alt-words", type=int, default=3)
        b.set_defaults(fn=fn)

    g = sub.add_parser("recognize", help="recover the coordinate dialgebra of a graded algebra")
    g.add_argument("--algebra", required=True)
    g.add_argument("--embedding", required=True)
    g.add_argument("--roots", required=True)
    g.add_argument("--alpha", help="base root name, default the first simple root")
    g.add_argument("--alt-words", type=int, default=3)
    g.add_argument("--out")
    g.set_defaults(fn=cmd_recognize)

    a = sub.add_parser("acceptance", help="run the acceptance scenarios")
    a.add_argument("--only", help="comma-separated criterion numbers")
    a.set_defaults(fn=cmd_acceptance)
    for sp in sub.choices.values():
        sp.add_argument("--report", dest="report_path", metavar="PATH", help="also write the JSON report here")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    rep = Report(args.command if args.command not in ("dialg", "leib") else f"{args.command} {args.action}")
    try:
        args.fn(args, rep)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except UnsupportedType as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (NotAssociative, NotCommutative, MissingBarUnit, NotPerfect, DegreeTooLarge, GradingFailure,
            ConstructionFailure) as exc:
        rep.log.record(type(exc).__name__, False, message=str(exc),
                       witness=_jsonable(getattr(exc, "witness", None)))
    if getattr(args, "report_path", None):
        data = rep.to_json()
        validate(data, "report", "report")
        write_json(args.report_path, data)
    return rep.emit(args.report)


if __name__ == "__main__":
    sys.exit(main())
