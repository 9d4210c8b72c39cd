"""Command-line front end.

Exit codes: 0 when every check passes, 1 when a mathematical check fails,
2 for usage, parse or validation errors.
"""

from __future__ import annotations

import argparse
import configparser
import json
import sys
from dataclasses import dataclass, field
from typing import Sequence

from . import catalog, classify, qlimits, spectral
from .exactnum import Scalar, ScalarParseError, format_poly, format_scalar
from .report import Report

Q1_KEYS = {"h": ("a0", "a1", "a2"), "x": ("b0", "b1", "b2"), "g": ("d1", "d2", "d3", "d4")}
Q_KEYS = {"h": ("am1", "a0", "a1"), "x": ("bm1", "b0", "b1"), "g": ("dm2", "dm1", "d0", "d1", "d2")}


class UsageError(ValueError):
    """Anything that should end the process with exit code 2."""


class SpecParseError(UsageError):
    def __init__(self, message: str, *, line: int | None = None, field: str | None = None) -> None:
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)
        self.line = line
        self.field = field


# ---------------------------------------------------------------------------
# spec documents
# ---------------------------------------------------------------------------


@dataclass
class SpecDocument:
    """Either ``family`` plus ``params``, or raw coefficients per section.

    ``q`` set means the coefficients are the Laurent form in ``q**k``.
    """

    family: str | None = None
    params: dict[str, Scalar] = field(default_factory=dict)
    coeffs: dict[str, dict[str, Scalar]] = field(default_factory=dict)
    q: Scalar | None = None

    def keyset(self) -> dict[str, tuple[str, ...]]:
        return Q_KEYS if self.q is not None else Q1_KEYS

    def to_spec(self):
        if self.family is not None:
            raise UsageError("catalog documents are built through the catalog")
        flat = {k: v for sec in self.coeffs.values() for k, v in sec.items()}
        try:
            if self.q is not None:
                full = {k: flat.get(k, Scalar(0)) for k in classify.Q_FIELDS}
                return classify.SeqSpecQ(**full, q=self.q)
            return classify.SeqSpecQ1(**flat)
        except classify.InvalidSpec as e:
            raise SpecParseError(str(e)) from None


def _scalar(text: str, *, line: int | None = None, name: str | None = None) -> Scalar:
    try:
        return Scalar.parse(text)
    except ScalarParseError as e:
        raise SpecParseError(str(e), line=line, field=name) from None


def _line_of(text: str, section: str, key: str) -> int | None:
    current = "spec"
    for i, raw in enumerate(text.splitlines(), 1):
        s = raw.strip()
        if s.startswith("[") and s.endswith("]"):
            current = s[1:-1].strip()
        elif current == section and "=" in s and s.split("=", 1)[0].strip() == key:
            return i
    return None


def parse_document(text: str) -> SpecDocument:
    cp = configparser.ConfigParser(
        interpolation=None, delimiters=("=",), comment_prefixes=("#", ";"), inline_comment_prefixes=("#",)
    )
    cp.optionxform = str  # type: ignore[assignment]
    body = text if text.lstrip().startswith("[") else "[spec]\n" + text
    offset = 0 if body is text else -1
    try:
        cp.read_string(body)
    except configparser.Error as e:
        lineno = getattr(e, "lineno", None)
        raise SpecParseError(e.message.splitlines()[0] if hasattr(e, "message") else str(e),
                             line=None if lineno is None else lineno + offset) from None

    sections = set(cp.sections())
    unknown = sections - {"spec", "h", "x", "g"}
    if unknown:
        raise SpecParseError(f"unknown section(s) {sorted(unknown)}")
    top = dict(cp["spec"]) if "spec" in sections else {}

    doc = SpecDocument()
    if "q" in top:
        doc.q = _scalar(top.pop("q"), line=_line_of(text, "spec", "q"), name="q")
    if "family" in top:
        name = top.pop("family").strip()
        try:
            entry = catalog.family(name)
        except catalog.UnknownFamily:
            raise SpecParseError(f"unknown family {name!r}", line=_line_of(text, "spec", "family"),
                                 field="family") from None
        if sections & {"h", "x", "g"}:
            raise SpecParseError("a family document cannot also give raw [h]/[x]/[g] sections")
        doc.family = entry.key
        for k, v in top.items():
            key = catalog.GREEK.get(k, k)
            if key not in entry.params:
                raise SpecParseError(f"{entry.key} has no parameter {k!r}",
                                     line=_line_of(text, "spec", k), field=k)
            doc.params[key] = _scalar(v, line=_line_of(text, "spec", k), name=k)
        if doc.q is not None and "q" in entry.params:
            doc.params["q"] = doc.q
            doc.q = None
        return doc

    if top:
        k = next(iter(top))
        raise SpecParseError("unexpected top-level key (coefficients belong in [h], [x], [g])",
                             line=_line_of(text, "spec", k), field=k)
    if not sections & {"h", "x", "g"}:
        raise SpecParseError("document needs 'family = <name>' or [h], [x], [g] sections")
    keys = doc.keyset()
    for sec in ("h", "x", "g"):
        doc.coeffs[sec] = {}
        if sec not in sections:
            continue
        for k, v in cp[sec].items():
            if k not in keys[sec]:
                raise SpecParseError(f"[{sec}] accepts {', '.join(keys[sec])}",
                                     line=_line_of(text, sec, k), field=k)
            doc.coeffs[sec][k] = _scalar(v, line=_line_of(text, sec, k), name=k)
    return doc


def serialize_document(doc: SpecDocument) -> str:
    out: list[str] = []
    if doc.family is not None:
        out.append(f"family = {doc.family}")
        for k, v in doc.params.items():
            out.append(f"{k} = {format_scalar(v)}")
        return "\n".join(out) + "\n"
    if doc.q is not None:
        out.append(f"q = {format_scalar(doc.q)}")
    for sec in ("h", "x", "g"):
        out.append(f"[{sec}]")
        for k, v in doc.coeffs.get(sec, {}).items():
            out.append(f"{k} = {format_scalar(v)}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# argument handling
# ---------------------------------------------------------------------------


def parse_params(text: str | None) -> dict[str, Scalar]:
    out: dict[str, Scalar] = {}
    if not text:
        return out
    for item in text.split(","):
        if not item.strip():
            continue
        if "=" not in item:
            raise UsageError(f"--params entry {item!r} is not k=v")
        k, v = (s.strip() for s in item.split("=", 1))
        out[catalog.GREEK.get(k, k)] = _scalar(v, name=k)
    return out


@dataclass
class Target:
    """What a verb operates on: a catalog family or a raw spec."""

    built: catalog.BuiltFamily | None = None
    spec: object | None = None
    triple: spectral.TripleData | None = None

    @property
    def is_q(self) -> bool:
        return isinstance(self.spec, classify.SeqSpecQ)


def _load(args) -> Target:
    if getattr(args, "spec", None) and getattr(args, "family", None):
        raise UsageError("give either --family or --spec, not both")
    if getattr(args, "spec", None):
        try:
            with open(args.spec, encoding="utf-8") as fh:
                doc = parse_document(fh.read())
        except OSError as e:
            raise UsageError(f"cannot read {args.spec}: {e.strerror}") from None
        if doc.family is not None:
            return _load_family(doc.family, doc.params, args)
        spec = doc.to_spec()
        return Target(spec=spec, triple=_triple(spec, args.K))
    if getattr(args, "family", None):
        return _load_family(args.family, parse_params(args.params), args)
    raise UsageError("--family or --spec is required")


def _triple(spec, K: int | None) -> spectral.TripleData:
    try:
        return spec.to_triple(K or 12)
    except (spectral.HCollision, classify.InvalidSpec) as e:
        raise UsageError(f"{type(e).__name__}: {e}") from None


def _load_family(name, params, args) -> Target:
    try:
        built = catalog.build_family(name, params, K=args.K)
    except catalog.UnknownFamily:
        raise UsageError(f"unknown family {name!r}") from None
    except catalog.InadmissibleParameters as e:
        raise UsageError(f"InadmissibleParameters: {e}") from None
    return Target(built=built, spec=built.spec, triple=built.triple)


def _out(text: str = "") -> None:
    print(text)


# ---------------------------------------------------------------------------
# verbs
# ---------------------------------------------------------------------------


def cmd_construct(args) -> int:
    tgt = _load(args)
    t = tgt.triple
    n = args.n
    if n < 0 or n > t.K - 1:
        raise UsageError(f"n must lie in 0..{t.K - 1} at depth K={t.K}")
    for k in range(n + 1):
        _out(f"u_{k} = {format_poly(spectral.monic_u(t, k))}")
    try:
        _out(f"U_{n}/u_{n} = {format_scalar(spectral.hypergeometric_factor(t, n))}")
    except spectral.ZeroGInRange as e:
        _out(f"U_{n}/u_{n} undefined: {e}")
    _out("n\tA_n\tB_n")
    for k in range(min(n, t.K - 1) + 1):
        A, B = spectral.recurrence(t, k)
        _out(f"{k}\t{format_scalar(A)}\t{'-' if B is None else format_scalar(B)}")
    return 0


def cmd_classify(args) -> int:
    tgt = _load(args)
    s = tgt.spec
    if tgt.is_q:
        ok = classify.check_q_constraints(s)
        _out(f"bidegree {classify.bidegree_triple(s)}")
        r = Report()
        r.add("constraints", ok, "d2 = a1 b1 / q, d-2 = q a-1 b-1")
        _out(r.render())
        return r.exit_code()
    viol = classify.q1_constraint_report(s)
    if viol:
        r = Report()
        r.add("constraints", False, "; ".join(f"{n} = {format_scalar(a)}, required {format_scalar(b)}"
                                              for n, a, b in viol))
        _out(r.render())
        return 1
    try:
        node = classify.classify_spec(s)
    except classify.NoMatch as e:
        r = Report()
        r.add("classify", False, str(e))
        _out(r.render())
        return 1
    _out(f"{classify.degree_triple(s)} node={node}")
    try:
        a2, b1, b2, d2 = classify.normalize_uniform(s)
        _out(f"normalized a2={format_scalar(a2)} b1={format_scalar(b1)} "
             f"b2={format_scalar(b2)} d2={format_scalar(d2)}")
    except classify.NotNormalizable as e:
        _out(f"normalized: not available ({e})")
    return 0


def cmd_verify(args) -> int:
    if args.all_catalog:
        if args.family or args.spec:
            raise UsageError("--all-catalog takes no --family or --spec")
        r = Report()
        for name in catalog.catalog_names():
            sub = catalog.verify_family(name, None, args.nmax)
            r.extend(sub, prefix=f"{name}.")
            r.add(name, sub.ok, f"{len(sub.checks)} checks")
        _out(r.render())
        return r.exit_code()
    if args.family:
        try:
            catalog.family(args.family)
        except catalog.UnknownFamily:
            raise UsageError(f"unknown family {args.family!r}") from None
        if args.perturb and args.perturb not in ("a0", "a1", "a2", "b0", "b1", "b2", "d1", "d2", "d3", "d4"):
            raise UsageError(f"--perturb expects a q=1 coefficient name, got {args.perturb!r}")
        r = catalog.verify_family(args.family, parse_params(args.params), args.nmax, perturb=args.perturb)
        if args.perturb and not r.ok:
            _print_residuals(args, r)
        _out(r.render())
        return r.exit_code()
    tgt = _load(args)
    r = Report()
    if tgt.is_q:
        r.add("constraints", classify.check_q_constraints(tgt.spec))
    else:
        viol = classify.q1_constraint_report(tgt.spec)
        r.add("constraints", not viol, "; ".join(f"{n}: {format_scalar(a)} != {format_scalar(b)}"
                                                 for n, a, b in viol))
    catalog.verify_triple(tgt.triple, args.nmax, r)
    _out(r.render())
    return r.exit_code()


def _print_residuals(args, r: Report) -> None:
    built = catalog.build_family(args.family, parse_params(args.params))
    spec = built.spec.with_coeff(args.perturb, getattr(built.spec, args.perturb) + 1)
    t = spec.to_triple(built.triple.K)
    for n in range(1, min(3, t.K - 2) + 1):
        res = spectral.ttrr_residual(t, n)
        if not res.is_zero():
            _out(f"residual n={n}: {format_poly(res)}")
            return


def cmd_dual(args) -> int:
    tgt = _load(args)
    t = tgt.triple
    r = Report()
    try:
        d = spectral.dualize(t)
    except spectral.DualNotDefined as e:
        r.error("dual", e)
        _out(r.render())
        return 1
    _out("k\th~_k\tx~_k\tg_k")
    for k in range(d.K + 1):
        _out(f"{k}\t{format_scalar(d.h[k])}\t{format_scalar(d.x[k])}\t{format_scalar(d.g[k])}")
    top = min(6, t.max_degree())
    bad = [(n, m) for n in range(top + 1) for m in range(top + 1) if not spectral.dual_identity_check(t, n, m)]
    r.add("duality", not bad, f"U_n(x_m) = U~_m(h_n) for 0 <= n,m <= {top}" if not bad else f"fails at {bad[:3]}")
    _out(r.render())
    return r.exit_code()


def cmd_limit(args, extra: Sequence[str]) -> int:
    try:
        case = qlimits.limit_case(args.case)
    except qlimits.UnknownLimitCase:
        raise UsageError(f"unknown limit case {args.case!r}; known: {', '.join(qlimits.CASES)}") from None
    params = parse_params(args.params)
    it = iter(extra)
    for tok in it:
        if not tok.startswith("--"):
            raise UsageError(f"unexpected argument {tok!r}")
        name = tok[2:]
        if "=" in name:
            name, val = name.split("=", 1)
        else:
            val = next(it, None)
            if val is None:
                raise UsageError(f"--{name} needs a value")
        params[catalog.GREEK.get(name, name)] = _scalar(val, name=name)
    unknown = [k for k in params if k not in case.params]
    if unknown:
        raise UsageError(f"{case.name} takes parameters {list(case.params)}, not {unknown}")
    r = qlimits.certify_limit(case, args.K or 8, params)
    if case.name == "aw-to-wilson" and r.ok:
        r.extend(qlimits.degenerate_check(params, args.K or 8))
    _out(r.render())
    return r.exit_code()


def graph_json(g: classify.SchemeGraph) -> str:
    data = {
        "nodes": [
            {
                "id": n.id,
                "names": list(n.names),
                "degree_triple": list(n.degree_triple.as_tuple()),
                "vanishing": sorted(n.vanishing),
            }
            for n in g.nodes
        ],
        "edges": [{"src": a, "dst": b} for a, b in g.edges],
        "duals": [[a, b] for a, b in g.duals],
    }
    return json.dumps(data, indent=2)


def graph_dot(g: classify.SchemeGraph) -> str:
    lines = ["digraph scheme {"]
    for n in g.nodes:
        van = "=".join(sorted(n.vanishing)) + "=0" if n.vanishing else "generic"
        lines.append(f'  "{n.id}" [label="{", ".join(n.names)}\\n{n.degree_triple}\\n{van}"];')
    for a, b in g.edges:
        lines.append(f'  "{a}" -> "{b}";')
    lines.append("}")
    return "\n".join(lines)


def cmd_graph(args) -> int:
    g = classify.scheme_graph()
    _out(graph_json(g) if args.format == "json" else graph_dot(g))
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="verdestar", description="Exact Verde-Star data triples and their scheme.")
    sub = p.add_subparsers(dest="verb", required=True)

    def common(sp, nmax=True):
        sp.add_argument("--family")
        sp.add_argument("--params", help="k=v[,k=v...]; values as p/q or p/q+r/s*i")
        sp.add_argument("--spec", help="spec document file")
        sp.add_argument("--K", type=int, default=None, help="depth of the evaluated triple")
        if nmax:
            sp.add_argument("--nmax", type=int, default=8)

    c = sub.add_parser("construct", help="print u_0..u_n, U_n/u_n and the recurrence table")
    common(c, nmax=False)
    c.add_argument("-n", "--n", type=int, default=3)

    common(sub.add_parser("classify", help="degree triple, scheme node, uniform parameters"), nmax=False)

    v = sub.add_parser("verify", help="run the check battery")
    common(v)
    v.add_argument("--perturb", help="add 1 to this q=1 coefficient before checking")
    v.add_argument("--all-catalog", action="store_true")

    common(sub.add_parser("dual", help="dual triple and duality identity"), nmax=False)

    lim = sub.add_parser("limit", help="certify a q -> 1 limit case")
    lim.add_argument("case")
    lim.add_argument("--params")
    lim.add_argument("--K", type=int, default=None)

    gr = sub.add_parser("graph", help="export the scheme graph")
    gr.add_argument("--format", choices=("json", "dot"), default="json")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args, extra = parser.parse_known_args(argv)
    if extra and args.verb != "limit":
        parser.error(f"unrecognized arguments: {' '.join(extra)}")
    try:
        if args.verb == "construct":
            return cmd_construct(args)
        if args.verb == "classify":
            return cmd_classify(args)
        if args.verb == "verify":
            return cmd_verify(args)
        if args.verb == "dual":
            return cmd_dual(args)
        if args.verb == "limit":
            return cmd_limit(args, extra)
        return cmd_graph(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
