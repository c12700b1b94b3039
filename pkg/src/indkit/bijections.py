"""Exact algebra of eventually periodic ray sets and piecewise-affine partial bijections.

A :class:`RaySet` is a subset of the universe N + Z given by a modulus ``2**exp``,
one residue set per ray (N, negative Z, non-negative Z) and finitely many
exceptions. A :class:`PartialBijection` is a finite union of affine pieces
``x -> 2**z * x + r`` acting on ray indices, plus finitely many isolated pairs.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from .elements import (COMP_NAMES, COMPS, NAT, ZNEG, ZPOS, MElement, comp_is_up, element_of,
                       on_comp)

Residues = tuple  # three frozensets of ints, indexed by component


def _refine(res: frozenset, exp: int, new_exp: int) -> frozenset:
    step = 1 << exp
    return frozenset(r + k * step for r in res for k in range(1 << (new_exp - exp)))


@dataclass(frozen=True)
class RaySet:
    """``(periodic part - removed) | added``, stored canonically."""

    exp: int
    residues: Residues
    added: frozenset = frozenset()
    removed: frozenset = frozenset()

    # -- construction -----------------------------------------------------
    @classmethod
    def build(cls, exp: int, residues: Iterable[Iterable[int]], added: Iterable[MElement] = (),
              removed: Iterable[MElement] = ()) -> RaySet:
        mod = 1 << exp
        res = [frozenset(r % mod for r in rs) for rs in residues]
        while exp > 0:
            half = 1 << (exp - 1)
            if not all((r + half) % (1 << exp) in rs for rs in res for r in rs):
                break
            exp -= 1
            res = [frozenset(r % (1 << exp) for r in rs) for rs in res]
        mod = 1 << exp
        added, removed = frozenset(added), frozenset(removed)

        def periodic(e: MElement) -> bool:
            return e.index % mod in res[e.comp]

        return cls(exp, tuple(res),
                   frozenset(e for e in added if not periodic(e)),
                   frozenset(e for e in removed if periodic(e) and e not in added))

    @classmethod
    def empty(cls) -> RaySet:
        return cls(0, (frozenset(), frozenset(), frozenset()))

    @classmethod
    def universe(cls) -> RaySet:
        return cls(0, (frozenset({0}),) * 3)

    @classmethod
    def comp_set(cls, comp: int) -> RaySet:
        """One whole ray, e.g. ``comp_set(NAT)`` is the copy of N."""
        return cls(0, tuple(frozenset({0}) if c == comp else frozenset() for c in COMPS))

    @classmethod
    def finite(cls, elems: Iterable[MElement]) -> RaySet:
        return cls.build(0, ((), (), ()), added=elems)

    @classmethod
    def residue_class(cls, exp: int, s: int, comps: Iterable[int] = COMPS) -> RaySet:
        """Indices congruent to ``s`` modulo ``2**exp`` on the given rays."""
        comps = set(comps)
        return cls.build(exp, tuple({s} if c in comps else () for c in COMPS))

    @classmethod
    def uniform(cls, exp: int, residues: Iterable[int]) -> RaySet:
        rs = frozenset(residues)
        return cls.build(exp, (rs, rs, rs))

    # -- queries ----------------------------------------------------------
    @property
    def modulus(self) -> int:
        return 1 << self.exp

    def periodic_contains(self, e: MElement) -> bool:
        return e.index % self.modulus in self.residues[e.comp]

    def __contains__(self, e: MElement) -> bool:
        if e in self.added:
            return True
        if e in self.removed:
            return False
        return self.periodic_contains(e)

    def is_finite(self) -> bool:
        return not any(self.residues)

    def is_empty(self) -> bool:
        return self.is_finite() and not self.added

    def is_universe(self) -> bool:
        return self == RaySet.universe()

    def is_uniform(self) -> bool:
        """Same residues on all three rays (membership in the uniform class, up to exceptions)."""
        return self.residues[0] == self.residues[1] == self.residues[2]

    def elements(self) -> list[MElement]:
        if not self.is_finite():
            raise ValueError("infinite set")
        return sorted(self.added)

    def exception_bound(self) -> int:
        """Largest absolute index among the exceptions (0 when there are none)."""
        return max((abs(e.index) for e in self.added | self.removed), default=0)

    def measure(self) -> Fraction:
        """Asymptotic density over the three rays; finite exceptions do not count."""
        return Fraction(sum(len(r) for r in self.residues), 3 * self.modulus)

    # -- Boolean algebra --------------------------------------------------
    def _combine(self, other: RaySet, op: Callable[[bool, bool], bool]) -> RaySet:
        exp = max(self.exp, other.exp)
        a = [_refine(r, self.exp, exp) for r in self.residues]
        b = [_refine(r, other.exp, exp) for r in other.residues]
        mod = 1 << exp
        res = [frozenset(i for i in range(mod) if op(i in a[c], i in b[c])) for c in COMPS]
        added, removed = set(), set()
        for e in self.added | self.removed | other.added | other.removed:
            actual = op(e in self, e in other)
            per = e.index % mod in res[e.comp]
            if actual and not per:
                added.add(e)
            elif per and not actual:
                removed.add(e)
        return RaySet.build(exp, res, added, removed)

    def __or__(self, other: RaySet) -> RaySet:
        return self._combine(other, lambda x, y: x or y)

    def __and__(self, other: RaySet) -> RaySet:
        return self._combine(other, lambda x, y: x and y)

    def __sub__(self, other: RaySet) -> RaySet:
        return self._combine(other, lambda x, y: x and not y)

    def __xor__(self, other: RaySet) -> RaySet:
        return self._combine(other, lambda x, y: x != y)

    def __invert__(self) -> RaySet:
        full = frozenset(range(self.modulus))
        return RaySet(self.exp, tuple(full - r for r in self.residues), self.removed, self.added)

    complement = __invert__

    def union(self, other: RaySet) -> RaySet:
        return self | other

    def intersect(self, other: RaySet) -> RaySet:
        return self & other

    def restrict_comp(self, comp: int) -> RaySet:
        return self & RaySet.comp_set(comp)

    # -- output -----------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "modulus": self.modulus,
            "residues": {COMP_NAMES[c]: sorted(self.residues[c]) for c in COMPS},
            "added": [str(e) for e in sorted(self.added)],
            "removed": [str(e) for e in sorted(self.removed)],
            "uniform": self.is_uniform(),
            "measure": str(self.measure()),
        }

    def __str__(self) -> str:
        parts = [f"mod {self.modulus}"]
        parts += [f"{COMP_NAMES[c]}:{sorted(self.residues[c])}" for c in COMPS]
        if self.added:
            parts.append("+{" + ", ".join(str(e) for e in sorted(self.added)) + "}")
        if self.removed:
            parts.append("-{" + ", ".join(str(e) for e in sorted(self.removed)) + "}")
        return "RaySet(" + "; ".join(parts) + ")"


def measure(s: RaySet) -> Fraction:
    return s.measure()


def is_dyadic(q: Fraction | int) -> bool:
    """True iff ``q`` has a power-of-two denominator."""
    d = Fraction(q).denominator
    return d & (d - 1) == 0


# ---------------------------------------------------------------------------
# Affine maps


@dataclass(frozen=True, order=True)
class PhiMap:
    """``x -> 2**z * x + r`` on ray indices."""

    z: int
    r: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "r", Fraction(self.r))

    @property
    def scale(self) -> Fraction:
        return Fraction(2) ** self.z

    def __call__(self, x: int | Fraction) -> Fraction:
        return self.scale * x + self.r

    def compose(self, inner: PhiMap) -> PhiMap:
        """``self o inner``."""
        return PhiMap(inner.z + self.z, self.scale * inner.r + self.r)

    def inverse(self) -> PhiMap:
        return PhiMap(-self.z, -self.r / self.scale)

    def is_identity(self) -> bool:
        return self.z == 0 and self.r == 0

    @property
    def parity(self) -> str:
        return "even" if self.z % 2 == 0 else "odd"

    def fixed_point(self) -> Fraction | None:
        if self.z == 0:
            return None
        return self.r / (1 - self.scale)

    def __str__(self) -> str:
        lead = "x" if self.z == 0 else f"2^{self.z}x"
        return lead if self.r == 0 else f"{lead}{'+' if self.r > 0 else '-'}{abs(self.r)}"


IDENTITY_MAP = PhiMap(0)


def _index_range(lo: int, hi: int, comp: int) -> list[MElement]:
    return [element_of(comp, i) for i in range(lo, hi + 1) if on_comp(comp, i)]


def _clip_domain(src: int, dst: int, dom: RaySet, phi: PhiMap) -> RaySet:
    """Points of ``dom`` on ray ``src`` whose image is integral and lies on ray ``dst``."""
    dom = dom.restrict_comp(src)
    if phi.z >= 0:
        if phi.r.denominator != 1:
            return RaySet.empty()
    else:
        k = -phi.z
        shifted = phi.r * (1 << k)
        if shifted.denominator != 1:
            return RaySet.empty()
        dom = dom & RaySet.residue_class(k, int(-shifted) % (1 << k))
    inv = phi.inverse()
    if comp_is_up(dst):
        lo = math.ceil(inv(0))      # phi(n) >= 0  <=>  n >= lo
        if comp_is_up(src):
            return dom - RaySet.finite(_index_range(0, lo - 1, src))
        return dom & RaySet.finite(_index_range(lo, -1, src))
    hi = math.floor(inv(-1))        # phi(n) <= -1  <=>  n <= hi
    if comp_is_up(src):
        return dom & RaySet.finite(_index_range(0, hi, src))
    return dom - RaySet.finite(_index_range(hi + 1, -1, src))


def _apply_index(phi: PhiMap, e: MElement, dst: int) -> MElement:
    v = phi(e.index)
    assert v.denominator == 1, "non-integral image"
    return element_of(dst, int(v))


def _affine_image(t: RaySet, src: int, dst: int, phi: PhiMap) -> RaySet:
    """Image of ``t`` (already clipped for this piece) under ``phi``."""
    if t.is_finite():
        return RaySet.finite(_apply_index(phi, e, dst) for e in t.added)
    assert comp_is_up(src) == comp_is_up(dst), "infinite piece reverses direction"
    k = max(0, -phi.z)
    exp = max(t.exp, k)
    res_src = _refine(t.residues[src], t.exp, exp)
    new_exp = exp + phi.z
    res = set()
    for s in res_src:
        v = phi(s)
        assert v.denominator == 1, "residue outside integrality lattice"
        res.add(int(v) % (1 << new_exp))
    residues = tuple(res if c == dst else () for c in COMPS)
    mod = 1 << new_exp
    if comp_is_up(src):
        start = phi(0)
        boundary = [element_of(dst, m) for m in range(0, math.ceil(start)) if m % mod in res]
    else:
        end = phi(-1)
        boundary = [element_of(dst, m) for m in range(math.floor(end) + 1, 0) if m % mod in res]
    added = [_apply_index(phi, e, dst) for e in t.added]
    removed = list(boundary)
    for e in t.removed:
        v = phi(e.index)
        if v.denominator == 1 and on_comp(dst, int(v)):
            removed.append(element_of(dst, int(v)))
    return RaySet.build(new_exp, residues, added, removed)


# ---------------------------------------------------------------------------
# Partial bijections


@dataclass(frozen=True)
class Piece:
    src: int
    dst: int
    dom: RaySet
    phi: PhiMap

    def key(self) -> tuple:
        return (self.src, self.dst, self.phi.z, self.phi.r)

    def image(self, s: RaySet | None = None) -> RaySet:
        t = self.dom if s is None else self.dom & s
        return _affine_image(t, self.src, self.dst, self.phi)

    def inverse(self) -> Piece:
        return Piece(self.dst, self.src, self.image(), self.phi.inverse())


@dataclass(frozen=True)
class PartialBijection:
    """Finite union of affine pieces with pairwise disjoint domains and ranges."""

    pieces: tuple = ()
    points: tuple = ()

    @classmethod
    def build(cls, pieces: Iterable[tuple[int, int, RaySet, PhiMap]] = (),
              points: Iterable[tuple[MElement, MElement]] = ()) -> PartialBijection:
        groups: dict[tuple, Piece] = {}
        pts: dict[MElement, MElement] = {}
        for src, dst, dom, phi in pieces:
            dom = _clip_domain(src, dst, dom, phi)
            if dom.is_empty():
                continue
            if dom.is_finite():
                for e in dom.added:
                    pts[e] = _apply_index(phi, e, dst)
                continue
            p = Piece(src, dst, dom, phi)
            if p.key() in groups:
                old = groups[p.key()]
                p = Piece(src, dst, old.dom | dom, phi)
            groups[p.key()] = p
        for a, b in points:
            if pts.get(a, b) != b:
                raise ValueError(f"point {a} mapped twice")
            pts[a] = b
        # Fold isolated points back into a piece with the same affine law.
        leftover = {}
        for a, b in pts.items():
            for key, p in groups.items():
                if p.src == a.comp and p.dst == b.comp and p.phi(a.index) == b.index:
                    groups[key] = Piece(p.src, p.dst, p.dom | RaySet.finite([a]), p.phi)
                    break
            else:
                leftover[a] = b
        ordered = tuple(groups[k] for k in sorted(groups))
        return cls(ordered, tuple(sorted(leftover.items())))

    @classmethod
    def identity(cls, dom: RaySet | None = None) -> PartialBijection:
        dom = RaySet.universe() if dom is None else dom
        return cls.build([(c, c, dom, IDENTITY_MAP) for c in COMPS])

    @classmethod
    def shift(cls, n: int) -> PartialBijection:
        """Graph of ``x -> s^n(x)`` (successor iterated ``n`` times)."""
        phi = PhiMap(0, n)
        return cls.build([(NAT, NAT, RaySet.universe(), phi), (ZNEG, ZNEG, RaySet.universe(), phi),
                          (ZNEG, ZPOS, RaySet.universe(), phi), (ZPOS, ZPOS, RaySet.universe(), phi)])

    # -- queries ----------------------------------------------------------
    def apply(self, e: MElement) -> MElement | None:
        for p in self.pieces:
            if p.src == e.comp and e in p.dom:
                return _apply_index(p.phi, e, p.dst)
        for a, b in self.points:
            if a == e:
                return b
        return None

    def __call__(self, e: MElement) -> MElement | None:
        return self.apply(e)

    def holds(self, a: MElement, b: MElement) -> bool:
        return self.apply(a) == b

    def domain(self) -> RaySet:
        out = RaySet.finite(a for a, _ in self.points)
        for p in self.pieces:
            out = out | p.dom
        return out

    def range(self) -> RaySet:
        out = RaySet.finite(b for _, b in self.points)
        for p in self.pieces:
            out = out | p.image()
        return out

    def image(self, s: RaySet) -> RaySet:
        out = RaySet.finite(b for a, b in self.points if a in s)
        for p in self.pieces:
            out = out | p.image(s)
        return out

    def preimage(self, s: RaySet) -> RaySet:
        return self.inverse().image(s)

    def diagonal(self) -> RaySet:
        """``{x | R(x, x)}``."""
        out = RaySet.finite(a for a, b in self.points if a == b)
        for p in self.pieces:
            if p.src != p.dst:
                continue
            if p.phi.is_identity():
                out = out | p.dom
                continue
            fp = p.phi.fixed_point()
            if fp is not None and fp.denominator == 1 and on_comp(p.src, int(fp)):
                e = element_of(p.src, int(fp))
                if e in p.dom:
                    out = out | RaySet.finite([e])
        return out

    # -- algebra ----------------------------------------------------------
    def inverse(self) -> PartialBijection:
        return PartialBijection.build([(p.dst, p.src, p.image(), p.phi.inverse())
                                       for p in self.pieces],
                                      [(b, a) for a, b in self.points])

    def compose(self, inner: PartialBijection) -> PartialBijection:
        """``self o inner``: apply ``inner`` first."""
        pieces, points = [], []
        for p in inner.pieces:
            back = p.inverse()
            for q in self.pieces:
                if q.src != p.dst:
                    continue
                dom = p.dom & back.image(q.dom)
                if not dom.is_empty():
                    pieces.append((p.src, q.dst, dom, q.phi.compose(p.phi)))
            for b, c in self.points:
                if b.comp == p.dst:
                    a_idx = p.phi.inverse()(b.index)
                    if a_idx.denominator == 1 and on_comp(p.src, int(a_idx)):
                        a = element_of(p.src, int(a_idx))
                        if a in p.dom:
                            points.append((a, c))
        for a, b in inner.points:
            c = self.apply(b)
            if c is not None:
                points.append((a, c))
        return PartialBijection.build(pieces, points)

    def __matmul__(self, inner: PartialBijection) -> PartialBijection:
        return self.compose(inner)

    def restrict(self, dom: RaySet) -> PartialBijection:
        return PartialBijection.build([(p.src, p.dst, p.dom & dom, p.phi) for p in self.pieces],
                                      [(a, b) for a, b in self.points if a in dom])

    def restrict_range(self, rng: RaySet) -> PartialBijection:
        return PartialBijection.identity(rng).compose(self)

    def is_empty(self) -> bool:
        return not self.pieces and not self.points

    # -- output -----------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "pieces": [{"src": COMP_NAMES[p.src], "dst": COMP_NAMES[p.dst], "map": str(p.phi),
                        "domain": p.dom.to_json()} for p in self.pieces],
            "points": [[str(a), str(b)] for a, b in self.points],
        }

    def __str__(self) -> str:
        parts = [f"{COMP_NAMES[p.src]}->{COMP_NAMES[p.dst]} {p.phi} on {p.dom}" for p in self.pieces]
        parts += [f"{a}->{b}" for a, b in self.points]
        return "PartialBijection[" + "; ".join(parts) + "]"


def compose(r: PartialBijection, s: PartialBijection) -> PartialBijection:
    """``r o s`` in function-composition order."""
    return r.compose(s)


def inverse(r: PartialBijection) -> PartialBijection:
    return r.inverse()


def diagonal(r: PartialBijection) -> RaySet:
    return r.diagonal()


def image(r: PartialBijection, s: RaySet) -> RaySet:
    return r.image(s)


# Ray routing of the constructor below: even maps keep every ray, odd maps swap
# N with non-negative Z and keep negative Z.
EVEN_ROUTES = ((NAT, NAT), (ZNEG, ZNEG), (ZPOS, ZPOS))
ODD_ROUTES = ((NAT, ZPOS), (ZNEG, ZNEG), (ZPOS, NAT))


def make_routed_bijection(dom: RaySet, phi: PhiMap) -> tuple[PartialBijection, str]:
    """Bijection induced by ``phi`` on a uniform domain, routed by parity.

    Points that would break sign preservation or integrality are dropped; there
    are only finitely many of them.
    """
    if not dom.is_uniform():
        raise ValueError("domain must be uniform across the three rays")
    routes = EVEN_ROUTES if phi.parity == "even" else ODD_ROUTES
    return PartialBijection.build([(src, dst, dom, phi) for src, dst in routes]), phi.parity
