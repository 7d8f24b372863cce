"""Weighted polynomial rings, monomials, polynomials and monomial orders."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .coeff import DEFAULT_PRIME, FieldElement, FieldSpec


class RingError(ValueError):
    pass


@dataclass(frozen=True)
class MonomialOrder:
    """Weighted grevlex, or a two-block elimination order.

    For ``EliminationBlock`` the first ``block_cutoff`` variables form the
    leading block; its weighted grevlex comparison decides first.
    """

    kind: str = "WeightedGrevlex"
    block_cutoff: int = 0

    def __post_init__(self):
        if self.kind not in ("WeightedGrevlex", "EliminationBlock"):
            raise RingError(f"unknown order {self.kind!r}")

    def rows(self, weights: Sequence[int]) -> list[list[int]]:
        n = len(weights)
        if self.kind == "WeightedGrevlex":
            return grevlex_rows(weights, range(n))
        k = self.block_cutoff
        if not 0 < k < n:
            raise RingError(f"block cutoff {k} outside 1..{n - 1}")
        return grevlex_rows(weights, range(k)) + grevlex_rows(weights, range(k, n))

    def sort_key(self, weights: Sequence[int]):
        rows = self.rows(weights)

        def key(exps):
            return tuple(sum(r[i] * e for i, e in enumerate(exps) if e) for r in rows)

        return key


def grevlex_rows(weights: Sequence[int], block: Iterable[int]) -> list[list[int]]:
    """Matrix rows of weighted grevlex restricted to ``block`` (indices)."""
    block = list(block)
    n = len(weights)
    top = [weights[i] if i in block else 0 for i in range(n)]
    if not any(top):
        # weight-zero block: compare by exponent sum, larger first
        top = [1 if i in block else 0 for i in range(n)]
    rows = [top]
    for i in reversed(block[1:]):
        rows.append([-1 if j == i else 0 for j in range(n)])
    return rows


GREVLEX = MonomialOrder()


@dataclass(frozen=True)
class RingSpec:
    variables: tuple
    weights: tuple
    field: FieldSpec = field(default_factory=lambda: FieldSpec(DEFAULT_PRIME))

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        if len(self.variables) != len(self.weights):
            raise RingError("variables and weights differ in length")
        if len(set(self.variables)) != len(self.variables):
            raise RingError("repeated variable name")
        if any(w < 1 for w in self.weights):
            raise RingError("weights must be positive")

    @classmethod
    def make(cls, names: str | Sequence[str], weights: Sequence[int] | None = None,
             field: FieldSpec | int | None = None) -> "RingSpec":
        if isinstance(names, str):
            names = [s.strip() for s in names.replace(",", " ").split()]
        if weights is None:
            weights = [1] * len(names)
        if field is None:
            field = FieldSpec(DEFAULT_PRIME)
        elif isinstance(field, int):
            field = FieldSpec(field)
        return cls(tuple(names), tuple(weights), field)

    @property
    def n(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise RingError(f"unknown variable {name!r}") from None

    def degree(self, exps: Sequence[int]) -> int:
        return sum(w * e for w, e in zip(self.weights, exps))

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        c = self.field.norm(c.value if isinstance(c, FieldElement) else c)
        return Polynomial(self, {(0,) * self.n: c} if c else {})

    def var(self, name: str) -> "Polynomial":
        e = [0] * self.n
        e[self.index(name)] = 1
        return Polynomial(self, {tuple(e): 1 if self.field.modulus else self.field.norm(1)})

    def gens(self) -> list["Polynomial"]:
        return [self.var(v) for v in self.variables]

    def __getitem__(self, name: str) -> "Polynomial":
        return self.var(name)

    def monomial(self, exps: Sequence[int], coeff=1) -> "Polynomial":
        c = self.field.norm(coeff)
        return Polynomial(self, {tuple(exps): c} if c else {})

    def monomials_of_degree(self, d: int, among: Sequence[str] | None = None) -> list[tuple]:
        """Exponent vectors of weighted degree ``d`` (optionally only in ``among``)."""
        idx = list(range(self.n)) if among is None else [self.index(v) for v in among]
        out = []

        def rec(pos, left, acc):
            if pos == len(idx):
                if left == 0:
                    e = [0] * self.n
                    for i, a in zip(idx, acc):
                        e[i] = a
                    out.append(tuple(e))
                return
            w = self.weights[idx[pos]]
            for a in range(left // w + 1):
                rec(pos + 1, left - a * w, acc + [a])

        rec(0, d, [])
        out.sort(key=GREVLEX.sort_key(self.weights), reverse=True)
        return out

    def random_poly(self, d: int, rng: random.Random, among: Sequence[str] | None = None,
                    fixed: Mapping[tuple, object] | None = None) -> "Polynomial":
        """Dense polynomial of degree ``d`` with uniform nonzero coefficients."""
        fixed = fixed or {}
        terms = {}
        for e in self.monomials_of_degree(d, among):
            if e in fixed:
                c = self.field.norm(fixed[e])
            else:
                c = self.field.random_nonzero(rng)
            if c:
                terms[e] = c
        return Polynomial(self, terms)

    def with_field(self, fld: FieldSpec) -> "RingSpec":
        return RingSpec(self.variables, self.weights, fld)

    def __str__(self):
        w = ",".join(map(str, self.weights))
        return f"ring {self.field} [{w}] {','.join(self.variables)}"


@dataclass(frozen=True)
class Monomial:
    exponents: tuple
    degree: int

    @classmethod
    def of(cls, ring: RingSpec, exps: Sequence[int]) -> "Monomial":
        exps = tuple(exps)
        return cls(exps, ring.degree(exps))

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(tuple(a + b for a, b in zip(self.exponents, other.exponents)),
                        self.degree + other.degree)

    def divides(self, other: "Monomial") -> bool:
        return all(a <= b for a, b in zip(self.exponents, other.exponents))


class Polynomial:
    """Immutable sparse polynomial; terms map exponent tuples to raw field values."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: RingSpec, terms: Mapping[tuple, object]):
        self.ring = ring
        self._terms = dict(terms)
        self._hash = None

    # construction helpers
    def _new(self, terms):
        return Polynomial(self.ring, terms)

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingError("polynomials from different rings")
            return other
        if isinstance(other, FieldElement):
            return self.ring.const(other.value)
        if isinstance(other, int):
            return self.ring.const(other)
        from fractions import Fraction

        if isinstance(other, Fraction):
            return self.ring.const(other)
        return NotImplemented

    @property
    def terms(self) -> list[tuple[Monomial, FieldElement]]:
        """Terms in decreasing weighted grevlex order."""
        return [(Monomial.of(self.ring, e), FieldElement(self.ring.field, c))
                for e, c in self.sorted_items()]

    def sorted_items(self, order: MonomialOrder = GREVLEX) -> list[tuple[tuple, object]]:
        key = order.sort_key(self.ring.weights)
        return sorted(self._terms.items(), key=lambda t: key(t[0]), reverse=True)

    def items(self):
        return self._terms.items()

    def coeff(self, exps: Sequence[int]):
        return self._terms.get(tuple(exps), 0)

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def degrees(self) -> set[int]:
        return {self.ring.degree(e) for e in self._terms}

    @property
    def degree(self) -> int:
        return max(self.degrees(), default=-1)

    @property
    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def lead(self, order: MonomialOrder = GREVLEX) -> tuple[tuple, object]:
        if not self._terms:
            raise RingError("zero polynomial has no lead term")
        key = order.sort_key(self.ring.weights)
        return max(self._terms.items(), key=lambda t: key(t[0]))

    def support(self) -> set[str]:
        used = set()
        for e in self._terms:
            used.update(v for v, a in zip(self.ring.variables, e) if a)
        return used

    # arithmetic
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        f = self.ring.field
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = f.add(out.get(e, 0), c)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        f = self.ring.field
        return self._new({e: f.neg(c) for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def scale(self, c) -> "Polynomial":
        f = self.ring.field
        c = f.norm(c.value if isinstance(c, FieldElement) else c)
        if not c:
            return self.ring.zero()
        return self._new({e: f.mul(v, c) for e, v in self._terms.items()})

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        f = self.ring.field
        p = f.modulus
        out: dict = {}
        a_items = list(self._terms.items())
        for eb, cb in other._terms.items():
            for ea, ca in a_items:
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = out.get(e, 0) + ca * cb
        if p:
            out = {e: c % p for e, c in out.items() if c % p}
        else:
            out = {e: c for e, c in out.items() if c}
        return self._new(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise RingError("negative power")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, FieldElement)):
            other = self._coerce(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def monic(self, order: MonomialOrder = GREVLEX) -> "Polynomial":
        if not self._terms:
            return self
        return self.scale(self.ring.field.inv(self.lead(order)[1]))

    def diff(self, name: str) -> "Polynomial":
        i = self.ring.index(name)
        f = self.ring.field
        out = {}
        for e, c in self._terms.items():
            if e[i]:
                v = f.mul(c, f.norm(e[i]))
                if v:
                    e2 = list(e)
                    e2[i] -= 1
                    out[tuple(e2)] = v
        return self._new(out)

    def divide_monomial(self, exps: Sequence[int]) -> "Polynomial":
        out = {}
        for e, c in self._terms.items():
            q = tuple(a - b for a, b in zip(e, exps))
            if min(q, default=0) < 0:
                raise RingError("monomial does not divide polynomial")
            out[q] = c
        return self._new(out)

    def substitute(self, images: Mapping[str, "Polynomial"] | Sequence["Polynomial"],
                   target: RingSpec | None = None) -> "Polynomial":
        return substitute(self, images, target)

    def evaluate(self, point: Sequence) -> FieldElement:
        return evaluate_at_point(self, point)

    def __str__(self):
        from .parse import print_poly

        return print_poly(self)

    def __repr__(self):
        return f"Polynomial({self})"


def substitute(f: Polynomial, images, target: RingSpec | None = None) -> Polynomial:
    """Ring homomorphism sending each variable of ``f.ring`` to its image.

    ``images`` is a list aligned with the variables or a dict by name;
    variables missing from the dict map to themselves (then the target ring
    must contain them).
    """
    ring = f.ring
    if isinstance(images, Mapping):
        seq = []
        for v in ring.variables:
            if v in images:
                seq.append(images[v])
            else:
                if target is None:
                    seq.append(ring.var(v))
                else:
                    seq.append(target.var(v))
        images = seq
    images = list(images)
    if len(images) != ring.n:
        raise RingError("wrong number of images")
    if target is None:
        target = images[0].ring if images else ring
    for im in images:
        if im.ring != target:
            raise RingError("images must live in one ring")
    powers: list[dict[int, Polynomial]] = [{0: target.one(), 1: im} for im in images]

    def power(i, k):
        cache = powers[i]
        if k not in cache:
            cache[k] = power(i, k // 2) * power(i, k - k // 2)
        return cache[k]

    acc: dict = {}
    fld = target.field
    for e, c in f.items():
        c = fld.norm(c)
        term = target.const(c)
        for i, k in enumerate(e):
            if k:
                term = term * power(i, k)
                if not term:
                    break
        for te, tc in term.items():
            acc[te] = fld.add(acc.get(te, 0), tc)
    return Polynomial(target, {e: c for e, c in acc.items() if c})


def evaluate_at_point(f: Polynomial, point: Sequence) -> FieldElement:
    fld = f.ring.field
    pt = [fld.norm(v.value if isinstance(v, FieldElement) else v) for v in point]
    if len(pt) != f.ring.n:
        raise RingError("point has wrong dimension")
    total = 0
    for e, c in f.items():
        t = c
        for v, k in zip(pt, e):
            if k:
                t = fld.mul(t, fld.norm(v) ** k if not fld.modulus else pow(v, k, fld.modulus))
        total = fld.add(total, t)
    return FieldElement(fld, total)


def poly_arith(a: Polynomial, b: Polynomial, op: str) -> Polynomial:
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    raise RingError(f"unknown operation {op!r}")


def matrix_minors(rows: Sequence[Sequence[Polynomial]], k: int) -> list[Polynomial]:
    """All k x k minors, rows and columns taken in lexicographic order."""
    nr, nc = len(rows), len(rows[0])
    out = []
    for ri in itertools.combinations(range(nr), k):
        for ci in itertools.combinations(range(nc), k):
            out.append(det([[rows[i][j] for j in ci] for i in ri]))
    return out


def det(m: Sequence[Sequence[Polynomial]]) -> Polynomial:
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = m[0][0].ring.zero()
    for j in range(n):
        if not m[0][j]:
            continue
        t = m[0][j] * det([row[:j] + row[j + 1:] for row in m[1:]])
        total = total - t if j % 2 else total + t
    return total
