"""Structure files: YAML documents describing one algebroid or patch.

Example::

    kind: jacobi
    base_vars: [x, y, z]
    rank: 4
    anchor: identity          # or a rank x dim matrix of literals
    table: {}                 # sparse "i,j,k": literal, or dense nested lists
    phi0: [0, 0, 0, 1]
    pi: {"0,1": 1, "1,2": -y, "3,2": 1}

Every scalar is written in the literal grammar of :mod:`algebroids.literal`.
Errors carry the line and column of the offending node.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

import yaml

from .lie import AnchoredBundle, LieAlgebroid, zero_table
from .literal import LiteralSyntaxError, parse_scalar
from .lsa import LeftSymmetricAlgebroid, SymmetricBivector
from .jlsa import JacobiLSA
from .manifold import AffinePatch, JKVPair, MetricTensor
from .poisson import JacobiAlgebroid
from .scalar import LINE_VAR, Scalar, to_literal
from .tensors import Cosection, Multisection, Section

__all__ = [
    "KINDS",
    "StructureFileError",
    "StructureFile",
    "parse",
    "parse_text",
    "emit",
    "digest",
    "from_lie",
]

KINDS = ("lie", "lsa", "jacobi", "jlsa", "manifold", "jkv-manifold")
_ALGEBROID_KINDS = ("lie", "lsa", "jacobi", "jlsa")
_FIELDS = ("kind", "base_vars", "rank", "anchor", "table", "phi0", "pi", "h", "E", "g", "theta", "gamma")


class StructureFileError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        where = f" at line {line}, column {column}" if line else ""
        super().__init__(message + where)
        self.line = line
        self.column = column


@dataclass(frozen=True)
class _Loc:
    value: Any
    line: int
    column: int


def _located(node: yaml.Node):
    """Plain data with every scalar leaf wrapped in ``_Loc``."""
    if isinstance(node, yaml.ScalarNode):
        return _Loc(node.value, node.start_mark.line + 1, node.start_mark.column + 1)
    if isinstance(node, yaml.SequenceNode):
        return _Loc([_located(n) for n in node.value], node.start_mark.line + 1, node.start_mark.column + 1)
    if isinstance(node, yaml.MappingNode):
        out = {}
        for k, v in node.value:
            key = _located(k)
            if not isinstance(key.value, str):
                raise StructureFileError("mapping keys must be plain scalars", key.line, key.column)
            if key.value in out:
                raise StructureFileError(f"duplicate key {key.value!r}", key.line, key.column)
            out[key.value] = (key, _located(v))
        return _Loc(out, node.start_mark.line + 1, node.start_mark.column + 1)
    raise StructureFileError("unsupported YAML node")


def _fail(msg: str, loc: _Loc):
    raise StructureFileError(msg, loc.line, loc.column)


def _scalar_leaf(loc: _Loc, variables) -> Scalar:
    if not isinstance(loc.value, str):
        _fail("expected a scalar literal", loc)
    try:
        value = parse_scalar(loc.value, variables, loc.line, loc.column)
    except LiteralSyntaxError as exc:
        raise StructureFileError(str(exc).rsplit(" at line", 1)[0], exc.line, exc.column) from None
    if LINE_VAR not in variables and (LINE_VAR in value.free_variables() or not value.is_exp_free()):
        _fail(f"{LINE_VAR!r} and exp need {LINE_VAR!r} among the base variables", loc)
    return value


def _list(loc: _Loc, length: Optional[int] = None, what: str = "list") -> list:
    if not isinstance(loc.value, list):
        _fail(f"{what} must be a list", loc)
    if length is not None and len(loc.value) != length:
        _fail(f"{what} must have length {length}, got {len(loc.value)}", loc)
    return loc.value


def _vector(loc: _Loc, n: int, variables, what: str) -> tuple[Scalar, ...]:
    return tuple(_scalar_leaf(v, variables) for v in _list(loc, n, what))


def _matrix(loc: _Loc, rows: int, cols: int, variables, what: str) -> tuple[tuple[Scalar, ...], ...]:
    return tuple(_vector(r, cols, variables, f"{what} row") for r in _list(loc, rows, what))


def _index_key(key: _Loc, arity: int, bound: int) -> tuple[int, ...]:
    parts = str(key.value).split(",")
    try:
        idx = tuple(int(p.strip()) for p in parts)
    except ValueError:
        _fail(f"index key must be {arity} comma-separated integers", key)
    if len(idx) != arity or any(not 0 <= i < bound for i in idx):
        _fail(f"index key must be {arity} integers in [0, {bound})", key)
    return idx


def _sparse(loc: _Loc, arity: int, bound: int, variables, what: str) -> dict:
    if not isinstance(loc.value, dict):
        _fail(f"{what} must be a mapping of index keys", loc)
    out = {}
    for key, val in loc.value.values():
        out[_index_key(key, arity, bound)] = _scalar_leaf(val, variables)
    return out


def _table(loc: _Loc, r: int, variables) -> tuple:
    z = Scalar.zero()
    if isinstance(loc.value, dict):
        sparse = _sparse(loc, 3, r, variables, "table")
        return tuple(tuple(tuple(sparse.get((i, j, k), z) for k in range(r)) for j in range(r)) for i in range(r))
    return tuple(_matrix(row, r, r, variables, "table") for row in _list(loc, r, "table"))


def _identity(n: int) -> tuple:
    return tuple(tuple(Scalar.one() if i == j else Scalar.zero() for j in range(n)) for i in range(n))


@dataclass(frozen=True)
class StructureFile:
    """Validated contents of one structure file."""

    kind: str
    base_vars: tuple[str, ...]
    rank: int
    anchor: Optional[tuple] = None
    table: Optional[tuple] = None
    phi0: Optional[tuple[Scalar, ...]] = None
    pi: Optional[dict] = field(default=None, compare=False)
    h: Optional[tuple] = None
    E: Optional[tuple[Scalar, ...]] = None
    g: Optional[tuple] = None
    theta: Optional[tuple[Scalar, ...]] = None
    gamma: Optional[tuple] = None

    def __eq__(self, other):
        if not isinstance(other, StructureFile):
            return NotImplemented
        mine = {f: getattr(self, f) for f in _FIELDS if f != "pi"}
        theirs = {f: getattr(other, f) for f in _FIELDS if f != "pi"}
        return mine == theirs and self.bivector() == other.bivector()

    __hash__ = None

    @property
    def is_manifold(self) -> bool:
        return self.kind in ("manifold", "jkv-manifold")

    def bundle(self) -> AnchoredBundle:
        return AnchoredBundle(self.base_vars, self.rank, self.anchor)

    def lie(self) -> LieAlgebroid:
        if self.kind not in ("lie", "jacobi"):
            raise StructureFileError(f"a {self.kind} file has no Lie bracket")
        return LieAlgebroid(self.bundle(), self.table)

    def lsa(self) -> LeftSymmetricAlgebroid:
        if self.kind not in ("lsa", "jlsa"):
            raise StructureFileError(f"a {self.kind} file has no left-symmetric product")
        return LeftSymmetricAlgebroid(self.bundle(), self.table)

    def phi(self) -> Cosection:
        if self.phi0 is None:
            raise StructureFileError("phi0 is missing")
        return Cosection.from_coeffs(self.phi0)

    def jacobi(self) -> JacobiAlgebroid:
        return JacobiAlgebroid(self.lie(), self.phi())

    def jlsa(self) -> JacobiLSA:
        return JacobiLSA(self.lsa(), self.phi())

    def bivector(self) -> Optional[Multisection]:
        if self.pi is None:
            return None
        return Multisection(self.rank, 2, dict(self.pi))

    def symmetric(self) -> Optional[SymmetricBivector]:
        return None if self.h is None else SymmetricBivector(self.h)

    def patch(self) -> AffinePatch:
        return AffinePatch(self.base_vars, self.gamma)

    def metric(self) -> Optional[MetricTensor]:
        return None if self.g is None else MetricTensor(self.g)

    def jkv_pair(self) -> JKVPair:
        if self.h is None or self.E is None:
            raise StructureFileError("a JKV pair needs both h and E")
        return JKVPair(SymmetricBivector(self.h), Section(self.E))


def _build(doc: _Loc) -> StructureFile:
    if not isinstance(doc.value, dict):
        _fail("a structure file is a mapping", doc)
    items = doc.value
    for name, (key, _) in items.items():
        if name not in _FIELDS:
            _fail(f"unknown field {name!r}", key)

    def need(name: str) -> _Loc:
        if name not in items:
            _fail(f"missing field {name!r}", doc)
        return items[name][1]

    def opt(name: str) -> Optional[_Loc]:
        return items[name][1] if name in items else None

    kind_loc = need("kind")
    kind = kind_loc.value
    if kind not in KINDS:
        _fail(f"kind must be one of {', '.join(KINDS)}", kind_loc)

    bv_loc = need("base_vars")
    base = []
    for v in _list(bv_loc, what="base_vars"):
        if not isinstance(v.value, str) or not v.value.isidentifier() or v.value == "exp":
            _fail(f"invalid base variable {v.value!r}", v)
        if v.value in base:
            _fail(f"repeated base variable {v.value!r}", v)
        base.append(v.value)
    base = tuple(base)
    n = len(base)

    if kind in _ALGEBROID_KINDS:
        r_loc = need("rank")
        try:
            r = int(r_loc.value)
        except (TypeError, ValueError):
            _fail("rank must be an integer", r_loc)
        if r < 1:
            _fail("rank must be positive", r_loc)
        a_loc = need("anchor")
        if a_loc.value == "identity":
            if r != n:
                _fail("identity anchor needs rank equal to the base dimension", a_loc)
            anchor = _identity(n)
        else:
            anchor = _matrix(a_loc, r, n, base, "anchor")
        t_loc = opt("table")
        table = _table(t_loc, r, base) if t_loc is not None else tuple(tuple(row) for row in zero_table(r))
        for bad in ("g", "theta", "gamma", "E"):
            if bad in items:
                _fail(f"{bad} is not allowed in a {kind} file", items[bad][0])
        phi0 = pi = h = None
        if kind in ("jacobi", "jlsa"):
            phi0 = _vector(need("phi0"), r, base, "phi0")
        elif "phi0" in items:
            _fail(f"phi0 is not allowed in a {kind} file", items["phi0"][0])
        if kind in ("lie", "jacobi"):
            if "h" in items:
                _fail("h belongs to lsa and jlsa files", items["h"][0])
            if opt("pi") is not None:
                pi = _sparse(opt("pi"), 2, r, base, "pi")
                for (i, j) in pi:
                    if i == j:
                        _fail("pi has a diagonal entry", opt("pi"))
        else:
            if "pi" in items:
                _fail("pi belongs to lie and jacobi files", items["pi"][0])
            if opt("h") is not None:
                h = _matrix(opt("h"), r, r, base, "h")
        sf = StructureFile(kind, base, r, anchor, table, phi0, pi, h)
        try:
            sf.bundle()
            sf.symmetric()
            sf.bivector()
        except ValueError as exc:
            raise StructureFileError(str(exc), doc.line, doc.column) from None
        return sf

    # manifold kinds
    for bad in ("rank", "anchor", "table", "phi0", "pi"):
        if bad in items:
            _fail(f"{bad} is not allowed in a {kind} file", items[bad][0])
    gamma = None
    if opt("gamma") is not None:
        gamma = _table(opt("gamma"), n, base)
    g = _matrix(opt("g"), n, n, base, "g") if opt("g") is not None else None
    h = _matrix(opt("h"), n, n, base, "h") if opt("h") is not None else None
    theta = _vector(opt("theta"), n, base, "theta") if opt("theta") is not None else None
    E = _vector(opt("E"), n, base, "E") if opt("E") is not None else None
    if kind == "jkv-manifold":
        need("h")
        need("E")
    if gamma is None:
        gamma = tuple(tuple(tuple(Scalar.zero() for _ in range(n)) for _ in range(n)) for _ in range(n))
    sf = StructureFile(kind, base, n, None, None, None, None, h, E, g, theta, gamma)
    try:
        sf.symmetric()
        sf.metric()
    except ValueError as exc:
        raise StructureFileError(str(exc), doc.line, doc.column) from None
    return sf


def parse_text(text: str) -> StructureFile:
    try:
        node = yaml.compose(text, Loader=yaml.SafeLoader)
    except yaml.MarkedYAMLError as exc:
        mark = exc.problem_mark or exc.context_mark
        line, col = (mark.line + 1, mark.column + 1) if mark else (0, 0)
        raise StructureFileError(f"YAML syntax error: {exc.problem}", line, col) from None
    if node is None:
        raise StructureFileError("empty structure file", 1, 1)
    return _build(_located(node))


def parse(path) -> StructureFile:
    return parse_text(Path(path).read_text(encoding="utf-8"))


def digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def _lit(v: Scalar) -> str:
    return to_literal(v)


def _sparse_out(entries: dict) -> dict:
    return {",".join(map(str, k)): _lit(v) for k, v in sorted(entries.items()) if not v.is_zero()}


def _table_out(table) -> dict:
    r = len(table)
    return _sparse_out({(i, j, k): table[i][j][k] for i in range(r) for j in range(r) for k in range(r)})


def emit(sf: StructureFile) -> str:
    """Serialize to YAML in a fixed key order; ``parse_text(emit(sf)) == sf``."""
    doc: dict = {"kind": sf.kind, "base_vars": list(sf.base_vars)}
    if not sf.is_manifold:
        doc["rank"] = sf.rank
        doc["anchor"] = [[_lit(v) for v in row] for row in sf.anchor]
        doc["table"] = _table_out(sf.table)
        if sf.phi0 is not None:
            doc["phi0"] = [_lit(v) for v in sf.phi0]
        if sf.pi is not None:
            doc["pi"] = _sparse_out(sf.bivector().coeffs)
        if sf.h is not None:
            doc["h"] = [[_lit(v) for v in row] for row in sf.h]
    else:
        doc["gamma"] = _table_out(sf.gamma)
        for name in ("g", "h"):
            m = getattr(sf, name)
            if m is not None:
                doc[name] = [[_lit(v) for v in row] for row in m]
        for name in ("E", "theta"):
            v = getattr(sf, name)
            if v is not None:
                doc[name] = [_lit(c) for c in v]
    return yaml.safe_dump(doc, sort_keys=False, default_flow_style=None, width=100)


def from_lie(kind: str, L, phi0: Optional[Cosection] = None, pi: Optional[Multisection] = None,
             h: Optional[SymmetricBivector] = None) -> StructureFile:
    """Wrap an in-memory structure as a :class:`StructureFile` (used to emit constructions)."""
    anchor = tuple(tuple(row) for row in L.bundle.anchor)
    table = tuple(tuple(tuple(c) for c in row) for row in L.table)
    return StructureFile(
        kind,
        tuple(L.base_vars),
        L.rank,
        anchor,
        table,
        None if phi0 is None else tuple(phi0.as_list()),
        None if pi is None else dict(pi.coeffs),
        None if h is None else h.matrix,
    )
