"""H- and V-descriptions of polyhedra and the LP-based operations on them."""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence

from . import lp
from .numeric import as_rational, as_vector, dot, format_rational, format_vector

__all__ = [
    "Block", "Rel", "VarSpace", "LinearConstraint", "HPolyhedron", "VPolytope",
    "PolyhedronError", "InfeasibleError", "Containment", "Boundedness",
    "contains_point", "is_subset", "equals", "remove_redundant", "is_redundant",
    "is_bounded", "is_feasible", "polyhedron_to_json", "polyhedron_from_json",
    "load_polyhedron", "dump_polyhedron",
]


class PolyhedronError(ValueError):
    pass


class InfeasibleError(PolyhedronError):
    pass


class Block(str, enum.Enum):
    X = "X"
    W = "W"
    U_AUX = "U_AUX"


class Rel(str, enum.Enum):
    LE = "<="
    EQ = "="
    GE = ">="

    @classmethod
    def parse(cls, text) -> Rel:
        if isinstance(text, Rel):
            return text
        aliases = {"<=": cls.LE, "=<": cls.LE, "le": cls.LE, "=": cls.EQ, "==": cls.EQ,
                   "eq": cls.EQ, ">=": cls.GE, "=>": cls.GE, "ge": cls.GE}
        try:
            return aliases[str(text).strip().lower()]
        except KeyError:
            raise PolyhedronError(f"unknown relation {text!r}") from None


@dataclass(frozen=True)
class VarSpace:
    names: tuple
    blocks: tuple

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "blocks", tuple(Block(b) for b in self.blocks))
        if len(set(self.names)) != len(self.names):
            raise PolyhedronError(f"duplicate variable names in {self.names}")
        if len(self.blocks) != len(self.names):
            raise PolyhedronError("every variable needs exactly one block label")

    @classmethod
    def of(cls, names: Iterable[str], block: Block | str = Block.X) -> VarSpace:
        names = tuple(names)
        return cls(names, (Block(block),) * len(names))

    def __len__(self) -> int:
        return len(self.names)

    def __add__(self, other: VarSpace) -> VarSpace:
        return VarSpace(self.names + other.names, self.blocks + other.blocks)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise PolyhedronError(f"unknown variable {name!r}") from None

    def block_of(self, name: str) -> Block:
        return self.blocks[self.index(name)]

    def names_in(self, block: Block | str) -> tuple:
        block = Block(block)
        return tuple(n for n, b in zip(self.names, self.blocks) if b is block)

    def subspace(self, names: Iterable[str]) -> VarSpace:
        names = tuple(names)
        return VarSpace(names, tuple(self.block_of(n) for n in names))


@dataclass(frozen=True)
class LinearConstraint:
    coeffs: tuple
    rel: Rel
    rhs: Fraction

    def __post_init__(self):
        object.__setattr__(self, "coeffs", as_vector(self.coeffs))
        object.__setattr__(self, "rel", Rel.parse(self.rel))
        object.__setattr__(self, "rhs", as_rational(self.rhs))

    def lhs(self, z: Sequence[Fraction]) -> Fraction:
        return dot(self.coeffs, z)

    def satisfied_by(self, z: Sequence[Fraction]) -> bool:
        v = self.lhs(z)
        if self.rel is Rel.LE:
            return v <= self.rhs
        if self.rel is Rel.GE:
            return v >= self.rhs
        return v == self.rhs

    def is_trivial(self) -> bool:
        return not any(self.coeffs)

    def scaled(self, factor) -> LinearConstraint:
        factor = as_rational(factor)
        if factor <= 0:
            raise PolyhedronError("constraints may only be scaled by positive factors")
        return LinearConstraint(tuple(a * factor for a in self.coeffs), self.rel, self.rhs * factor)

    def as_le(self) -> list[LinearConstraint]:
        """Equivalent ``<=`` rows; an equality becomes a pair."""
        neg = LinearConstraint(tuple(-a for a in self.coeffs), Rel.LE, -self.rhs)
        if self.rel is Rel.LE:
            return [self]
        if self.rel is Rel.GE:
            return [neg]
        return [LinearConstraint(self.coeffs, Rel.LE, self.rhs), neg]

    def normalized(self) -> LinearConstraint:
        """Scale to coprime integers; ``>=`` is flipped to ``<=`` and equalities
        get a positive leading coefficient."""
        c = self
        if c.rel is Rel.GE:
            c = c.as_le()[0]
        vals = c.coeffs + (c.rhs,)
        den = 1
        for q in vals:
            den = den * q.denominator // gcd(den, q.denominator)
        ints = [int(q * den) for q in vals]
        g = 0
        for n in ints[:-1]:
            g = gcd(g, abs(n))
        if g == 0:
            return c
        if c.rel is Rel.EQ:
            lead = next(n for n in ints if n)
            if lead < 0:
                g = -g
        return LinearConstraint(tuple(Fraction(n, g) for n in ints[:-1]), c.rel, Fraction(ints[-1], g))

    def sort_key(self):
        return (self.rel is not Rel.EQ, tuple(-a for a in self.coeffs), self.rhs)

    def pretty(self, names: Sequence[str]) -> str:
        terms = []
        for a, n in zip(self.coeffs, names):
            if not a:
                continue
            sign = "-" if a < 0 else "+"
            mag = abs(a)
            coef = "" if mag == 1 else f"{format_rational(mag)}*"
            terms.append(f"{sign} {coef}{n}")
        lhs = " ".join(terms).lstrip("+ ") if terms else "0"
        return f"{lhs} {self.rel.value} {format_rational(self.rhs)}"


@dataclass(frozen=True)
class HPolyhedron:
    space: VarSpace
    constraints: tuple = ()
    nonneg: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "constraints", tuple(self.constraints))
        object.__setattr__(self, "nonneg", frozenset(self.nonneg))
        n = len(self.space)
        for c in self.constraints:
            if len(c.coeffs) != n:
                raise PolyhedronError(
                    f"constraint has {len(c.coeffs)} coefficients, space has {n} variables")
        unknown = self.nonneg - set(self.space.names)
        if unknown:
            raise PolyhedronError(f"nonnegativity on unknown variables {sorted(unknown)}")

    @classmethod
    def from_rows(cls, names: Sequence[str], rows: Iterable, nonneg: Iterable[str] | bool = (),
                  block: Block | str = Block.X, space: VarSpace | None = None) -> HPolyhedron:
        """Build from ``(coeffs, rel, rhs)`` triples; ``nonneg=True`` flags every variable."""
        space = space or VarSpace.of(names, block)
        cons = tuple(LinearConstraint(tuple(c), rel, rhs) for c, rel, rhs in rows)
        if nonneg is True:
            nonneg = space.names
        elif nonneg is False:
            nonneg = ()
        return cls(space, cons, frozenset(nonneg))

    @property
    def dim(self) -> int:
        return len(self.space)

    @property
    def names(self) -> tuple:
        return self.space.names

    def with_constraints(self, constraints: Iterable[LinearConstraint]) -> HPolyhedron:
        return replace(self, constraints=tuple(constraints))

    def add_constraints(self, constraints: Iterable[LinearConstraint]) -> HPolyhedron:
        return replace(self, constraints=self.constraints + tuple(constraints))

    def without(self, index: int) -> HPolyhedron:
        return self.with_constraints(c for i, c in enumerate(self.constraints) if i != index)

    def without_nonneg(self, name: str) -> HPolyhedron:
        return replace(self, nonneg=self.nonneg - {name})

    def nonneg_rows(self) -> list[LinearConstraint]:
        rows = []
        for j, name in enumerate(self.names):
            if name in self.nonneg:
                coeffs = [Fraction(0)] * self.dim
                coeffs[j] = Fraction(-1)
                rows.append(LinearConstraint(tuple(coeffs), Rel.LE, 0))
        return rows

    def reorder(self, names: Sequence[str]) -> HPolyhedron:
        """Same polyhedron with coordinates permuted into ``names`` order."""
        names = tuple(names)
        if sorted(names) != sorted(self.names):
            raise PolyhedronError(f"cannot reorder {self.names} into {names}")
        if names == self.names:
            return self
        perm = [self.space.index(n) for n in names]
        cons = [LinearConstraint(tuple(c.coeffs[p] for p in perm), c.rel, c.rhs)
                for c in self.constraints]
        return HPolyhedron(self.space.subspace(names), cons, self.nonneg)

    def lift(self, space: VarSpace) -> HPolyhedron:
        """Embed into a larger space; the new coordinates are left unconstrained."""
        idx = [space.index(n) for n in self.names]
        cons = []
        for c in self.constraints:
            coeffs = [Fraction(0)] * len(space)
            for j, a in zip(idx, c.coeffs):
                coeffs[j] = a
            cons.append(LinearConstraint(tuple(coeffs), c.rel, c.rhs))
        return HPolyhedron(space, cons, self.nonneg)

    def canonical(self) -> HPolyhedron:
        """Normalized, deduplicated, sorted rows; same point set."""
        seen = {}
        for c in self.constraints:
            n = c.normalized()
            seen.setdefault((n.rel, n.coeffs, n.rhs), n)
        return self.with_constraints(sorted(seen.values(), key=LinearConstraint.sort_key))

    def pretty(self) -> str:
        lines = [c.pretty(self.names) for c in self.constraints]
        if self.nonneg:
            lines.append(", ".join(n for n in self.names if n in self.nonneg) + " >= 0")
        return "\n".join(lines)


@dataclass(frozen=True)
class VPolytope:
    space: VarSpace
    vertices: tuple = ()
    rays: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(as_vector(v) for v in self.vertices))
        object.__setattr__(self, "rays", tuple(as_vector(r) for r in self.rays))
        if len(set(self.vertices)) != len(self.vertices):
            raise PolyhedronError("duplicate vertices")
        for r in self.rays:
            if not any(r):
                raise PolyhedronError("zero ray")

    @property
    def bounded(self) -> bool:
        return not self.rays

    @property
    def empty(self) -> bool:
        return not self.vertices and not self.rays

    def to_json(self) -> dict:
        return {"vars": list(self.space.names),
                "vertices": [format_vector(v) for v in self.vertices],
                "rays": [format_vector(r) for r in self.rays]}


@dataclass(frozen=True)
class Containment:
    """Outcome of a containment test; truthy iff the containment holds."""
    holds: bool
    witness: Optional[tuple] = None
    violated: Optional[LinearConstraint] = None
    note: str = ""

    def __bool__(self) -> bool:
        return self.holds


@dataclass(frozen=True)
class Boundedness:
    bounded: bool
    direction: Optional[tuple] = None

    def __bool__(self) -> bool:
        return self.bounded


def _check_dim(P: HPolyhedron, z) -> tuple:
    z = as_vector(z)
    if len(z) != P.dim:
        raise PolyhedronError(f"point has {len(z)} coordinates, polyhedron has {P.dim}")
    return z


def contains_point(P: HPolyhedron, z) -> bool:
    z = _check_dim(P, z)
    if any(z[j] < 0 for j, n in enumerate(P.names) if n in P.nonneg):
        return False
    return all(c.satisfied_by(z) for c in P.constraints)


def is_feasible(P: HPolyhedron) -> bool:
    return lp.find_feasible_point(P) is not None


def _escape_point(out: lp.LPOutcome, c: Sequence[Fraction], beyond: Fraction, upward: bool) -> tuple:
    """A point of P on the far side of ``c.z = beyond`` from an optimal or
    unbounded LP outcome in the given direction."""
    if out.status is lp.Status.OPTIMAL:
        return out.point
    p, r = out.point, out.ray
    cp, cr = dot(c, p), dot(c, r)
    gap = (beyond - cp) / cr if upward else (cp - beyond) / -cr
    t = max(gap, Fraction(0)) + 1
    return tuple(a + t * b for a, b in zip(p, r))


def _violation(P: HPolyhedron, c: LinearConstraint) -> Optional[tuple]:
    """A point of P violating ``c``, or None if ``c`` is valid for P."""
    if c.rel in (Rel.LE, Rel.EQ):
        out = lp.maximize(P, c.coeffs)
        if out.status is lp.Status.UNBOUNDED or out.value > c.rhs:
            return _escape_point(out, c.coeffs, c.rhs, upward=True)
    if c.rel in (Rel.GE, Rel.EQ):
        out = lp.minimize(P, c.coeffs)
        if out.status is lp.Status.UNBOUNDED or out.value < c.rhs:
            return _escape_point(out, c.coeffs, c.rhs, upward=False)
    return None


def is_subset(P: HPolyhedron, Q: HPolyhedron) -> Containment:
    """``P ⊆ Q`` by one LP per constraint (and nonnegativity flag) of Q.

    Q may list the same variables in a different order. On failure the
    result carries a point of P that violates some constraint of Q.
    """
    if set(P.names) != set(Q.names):
        raise PolyhedronError(f"variable spaces differ: {P.names} vs {Q.names}")
    Q = Q.reorder(P.names)
    if not is_feasible(P):
        return Containment(True, note="P is infeasible; containment holds vacuously")
    for c in tuple(Q.constraints) + tuple(Q.nonneg_rows()):
        z = _violation(P, c)
        if z is not None:
            return Containment(False, witness=z, violated=c)
    return Containment(True)


def equals(P: HPolyhedron, Q: HPolyhedron) -> Containment:
    fwd = is_subset(P, Q)
    if not fwd:
        return replace(fwd, note="P is not contained in Q")
    back = is_subset(Q.reorder(P.names), P)
    if not back:
        return replace(back, note="Q is not contained in P")
    return Containment(True, note="; ".join(n for n in (fwd.note, back.note) if n))


def is_redundant(P: HPolyhedron, index: int) -> bool:
    """Whether constraint ``index`` is implied by the other rows of P."""
    return _violation(P.without(index), P.constraints[index]) is None


def remove_redundant(P: HPolyhedron) -> tuple[HPolyhedron, list[LinearConstraint]]:
    """Drop rows one at a time while each is implied by the rows still kept.

    Nonnegativity flags are never removed. Trivially satisfied rows
    (all-zero coefficients) go first without an LP.
    """
    if not is_feasible(P):
        raise InfeasibleError("redundancy removal needs a nonempty polyhedron")
    removed = []
    kept = []
    for c in P.constraints:
        if c.is_trivial():
            removed.append(c)
        else:
            kept.append(c)
    current = P.with_constraints(kept)
    i = 0
    while i < len(current.constraints):
        if is_redundant(current, i):
            removed.append(current.constraints[i])
            current = current.without(i)
        else:
            i += 1
    return current, removed


def is_bounded(P: HPolyhedron) -> Boundedness:
    """Maximize and minimize every coordinate; report the first unbounded ray."""
    if not is_feasible(P):
        raise InfeasibleError("boundedness is only decided for nonempty polyhedra")
    for j in range(P.dim):
        e = [0] * P.dim
        e[j] = 1
        for out in (lp.maximize(P, e), lp.minimize(P, e)):
            if out.status is lp.Status.UNBOUNDED:
                return Boundedness(False, out.ray)
    return Boundedness(True)


# -- JSON ---------------------------------------------------------------------

def polyhedron_to_json(P: HPolyhedron) -> dict:
    return {
        "vars": [{"name": n, "block": b.value, "nonneg": n in P.nonneg}
                 for n, b in zip(P.space.names, P.space.blocks)],
        "constraints": [{"coeffs": format_vector(c.coeffs), "rel": c.rel.value,
                         "rhs": format_rational(c.rhs)} for c in P.constraints],
    }


def polyhedron_from_json(data: dict) -> HPolyhedron:
    try:
        vars_ = data["vars"]
        names = [v["name"] for v in vars_]
        blocks = [v.get("block", "X") for v in vars_]
        nonneg = [v["name"] for v in vars_ if v.get("nonneg", False)]
        cons = [LinearConstraint(tuple(c["coeffs"]), c.get("rel", "<="), c["rhs"])
                for c in data.get("constraints", [])]
        return HPolyhedron(VarSpace(tuple(names), tuple(blocks)), tuple(cons), frozenset(nonneg))
    except PolyhedronError:
        raise
    except (KeyError, TypeError) as exc:
        raise PolyhedronError(f"malformed polyhedron JSON: {exc!r}") from exc
    except ValueError as exc:
        raise PolyhedronError(f"malformed polyhedron JSON: {exc}") from exc


def dump_polyhedron(P: HPolyhedron, path) -> None:
    with open(path, "w") as fh:
        json.dump(polyhedron_to_json(P), fh, indent=2)
        fh.write("\n")


def load_polyhedron(path) -> HPolyhedron:
    with open(path) as fh:
        return polyhedron_from_json(json.load(fh))
