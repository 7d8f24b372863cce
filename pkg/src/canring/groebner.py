"""Ideals, Groebner bases and the derived ideal operations."""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import engine
from .engine import Frame, GBTimeout  # noqa: F401 (re-exported)
from .ring import GREVLEX, MonomialOrder, Polynomial, RingError, RingSpec, grevlex_rows


class TruncationError(ValueError):
    pass


_FRAMES: dict = {}


def frame_for(ring: RingSpec, rows, weights=None, twists=(0,)) -> Frame:
    weights = tuple(ring.weights if weights is None else weights)
    key = (weights, tuple(map(tuple, rows)), tuple(twists), ring.field.modulus)
    fr = _FRAMES.get(key)
    if fr is None:
        fr = _FRAMES[key] = Frame(weights, rows, twists, ring.field.modulus)
    return fr


def order_frame(ring: RingSpec, order: MonomialOrder) -> Frame:
    return frame_for(ring, order.rows(ring.weights))


def to_elt(frame: Frame, f: Polynomial, pad: int = 0) -> engine.Elt:
    z = (0,) * pad
    return frame.elt([(e + z, 0, c) for e, c in f.items()])


def from_elt(ring: RingSpec, frame: Frame, e: engine.Elt, keep: int | None = None) -> Polynomial:
    terms = {}
    for exps, _, c in frame.items(e):
        terms[exps if keep is None else exps[:keep]] = c
    return Polynomial(ring, terms)


@dataclass
class GroebnerBasis:
    ring: RingSpec
    order: MonomialOrder
    polys: list
    truncation: int | None
    frame: Frame
    elts: list
    stats: dict

    @property
    def complete(self) -> bool:
        return self.truncation is None

    def leads(self) -> list[tuple]:
        return [e.lexp for e in self.elts]

    def covers(self, degree: int) -> bool:
        return self.truncation is None or degree <= self.truncation

    def reduce(self, f: Polynomial) -> Polynomial:
        if f.ring != self.ring:
            raise RingError("polynomial from another ring")
        r = engine.normal_form(self.frame, self.elts, to_elt(self.frame, f))
        return from_elt(self.ring, self.frame, r)


class Ideal:
    """Generators in a ring plus memoized Groebner bases.

    The memo is keyed by monomial order; a complete basis answers every
    question, a basis truncated at degree d only questions in degrees <= d.
    """

    def __init__(self, ring: RingSpec, generators: Iterable[Polynomial] = ()):
        gens = []
        for g in generators:
            if g.ring != ring:
                raise RingError("generator from another ring")
            if g:
                gens.append(g)
        self.ring = ring
        self.generators = tuple(gens)
        self.gb_cache: dict = {}

    def __repr__(self):
        return f"Ideal({self.ring}, {len(self.generators)} generators)"

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    @property
    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous for g in self.generators)

    def __add__(self, other: "Ideal | Iterable[Polynomial]") -> "Ideal":
        more = other.generators if isinstance(other, Ideal) else tuple(other)
        return Ideal(self.ring, self.generators + tuple(more))

    def cached(self, order: MonomialOrder = GREVLEX, degree: int | None = None):
        gb = self.gb_cache.get(order)
        if gb is not None and (degree is None and gb.complete or degree is not None and gb.covers(degree)):
            return gb
        return None

    def gb(self, order: MonomialOrder = GREVLEX, truncation: int | None = None,
           time_budget: float | None = None) -> GroebnerBasis:
        hit = self.cached(order, truncation)
        if hit is not None:
            return hit
        if truncation is not None and not self.is_homogeneous:
            raise TruncationError("truncation needs homogeneous generators")
        frame = order_frame(self.ring, order)
        deadline = None if time_budget is None else time.monotonic() + time_budget
        res = engine.buchberger(frame, [to_elt(frame, g) for g in self.generators],
                                truncation=truncation, deadline=deadline)
        polys = [from_elt(self.ring, frame, e) for e in res.basis]
        gb = GroebnerBasis(self.ring, order, polys, None if res.complete else truncation,
                           frame, res.basis, res.stats)
        old = self.gb_cache.get(order)
        if old is None or gb.complete or (not old.complete and gb.truncation > old.truncation):
            self.gb_cache[order] = gb
        return gb


def normal_form(p: Polynomial, basis: Sequence[Polynomial], order: MonomialOrder = GREVLEX) -> Polynomial:
    ring = p.ring
    frame = order_frame(ring, order)
    elts = []
    for b in basis:
        if b.ring != ring:
            raise RingError("basis from another ring")
        if b:
            e = to_elt(frame, b)
            engine._set_lead(frame, e, 0)
            elts.append(engine.make_monic(frame, e))
    r = engine.normal_form(frame, elts, to_elt(frame, p))
    return from_elt(ring, frame, r)


def buchberger(I: Ideal, order: MonomialOrder = GREVLEX, truncation_degree: int | None = None,
               time_budget: float | None = None) -> Ideal:
    I.gb(order, truncation_degree, time_budget)
    return I


def ideal_member(p: Polynomial, I: Ideal, truncation: int | None = None) -> bool:
    if p.ring != I.ring:
        raise RingError("polynomial from another ring")
    if not p:
        return True
    gb = I.cached(GREVLEX)
    if gb is None:
        homog = p.is_homogeneous and I.is_homogeneous
        if truncation is not None:
            if not homog:
                raise TruncationError("truncated membership needs homogeneous input")
            if p.degree > truncation:
                raise TruncationError(f"degree {p.degree} exceeds truncation {truncation}")
        elif homog:
            truncation = p.degree
        gb = I.cached(GREVLEX, truncation) if truncation is not None else None
        if gb is None:
            gb = I.gb(GREVLEX, truncation)
    if not gb.covers(p.degree):
        raise TruncationError(f"degree {p.degree} exceeds truncation {gb.truncation}")
    return gb.reduce(p).is_zero()


def contains(I: Ideal, J: Ideal | Iterable[Polynomial], truncation: int | None = None) -> bool:
    """J inside I."""
    gens = J.generators if isinstance(J, Ideal) else list(J)
    if not gens:
        return True
    if truncation is None and I.is_homogeneous and all(g.is_homogeneous for g in gens):
        top = max(g.degree for g in gens)
        gb = I.cached(GREVLEX) or I.cached(GREVLEX, top) or I.gb(GREVLEX, top)
    else:
        gb = I.cached(GREVLEX, truncation) or I.gb(GREVLEX, truncation)
    return all(gb.reduce(g).is_zero() for g in gens)


def ideals_equal(I: Ideal, J: Ideal) -> bool:
    return contains(I, J) and contains(J, I)


def subring(ring: RingSpec, drop: Iterable[str]) -> tuple[RingSpec, list[int]]:
    drop = set(drop)
    for v in drop:
        ring.index(v)
    keep = [i for i, v in enumerate(ring.variables) if v not in drop]
    return RingSpec(tuple(ring.variables[i] for i in keep), tuple(ring.weights[i] for i in keep),
                    ring.field), keep


def _gb_with(ring: RingSpec, frame: Frame, polys, pad, truncation, time_budget):
    deadline = None if time_budget is None else time.monotonic() + time_budget
    return engine.buchberger(frame, [to_elt(frame, g, pad) for g in polys],
                             truncation=truncation, deadline=deadline)


def eliminate(I: Ideal, drop: Iterable[str], truncation: int | None = None,
              time_budget: float | None = None) -> Ideal:
    """I intersected with the subring on the variables not in ``drop``."""
    ring = I.ring
    small, keep = subring(ring, drop)
    gone = [i for i in range(ring.n) if i not in keep]
    if not gone:
        return Ideal(small, I.generators)
    rows = grevlex_rows(ring.weights, gone) + grevlex_rows(ring.weights, keep)
    frame = frame_for(ring, rows)
    if truncation is not None and not I.is_homogeneous:
        raise TruncationError("truncation needs homogeneous generators")
    res = _gb_with(ring, frame, I.generators, 0, truncation, time_budget)
    out = []
    for e in res.basis:
        if e.lexp is not None and not any(e.lexp[i] for i in gone):
            terms = {}
            for exps, _, c in frame.items(e):
                terms[tuple(exps[i] for i in keep)] = c
            out.append(Polynomial(small, terms))
    return Ideal(small, out)


def intersect(I: Ideal, J: Ideal, truncation: int | None = None,
              time_budget: float | None = None) -> Ideal:
    """I ∩ J from t*I + (1-t)*J with t eliminated.

    t gets grading weight 0, so homogeneous input stays homogeneous and
    degree truncation stays sound.
    """
    ring = I.ring
    if J.ring != ring:
        raise RingError("ideals from different rings")
    if not I.generators or not J.generators:
        return Ideal(ring, [])
    n = ring.n
    weights = list(ring.weights) + [0]
    rows = [[0] * n + [1]] + [r + [0] for r in grevlex_rows(ring.weights, range(n))]
    frame = frame_for(ring, rows, weights)
    p = ring.field.modulus
    minus_one = p - 1 if p else -1
    gens = []
    for g in I.generators:
        gens.append(frame.elt([(e + (1,), 0, c) for e, c in g.items()]))
    for g in J.generators:
        items = [(e + (0,), 0, c) for e, c in g.items()]
        items += [(e + (1,), 0, c * minus_one) for e, c in g.items()]
        gens.append(frame.elt(items))
    deadline = None if time_budget is None else time.monotonic() + time_budget
    if truncation is not None and not (I.is_homogeneous and J.is_homogeneous):
        raise TruncationError("truncation needs homogeneous generators")
    res = engine.buchberger(frame, gens, truncation=truncation, deadline=deadline)
    out = []
    for e in res.basis:
        if e.lexp[n] == 0:
            out.append(from_elt(ring, frame, e, keep=n))
    return Ideal(ring, out)


def colon(I: Ideal, f: Polynomial, truncation: int | None = None) -> Ideal:
    """I : f, from the generators of I ∩ (f) divided by f."""
    ring = I.ring
    if not f:
        return Ideal(ring, [ring.one()])
    K = intersect(I, Ideal(ring, [f]), truncation)
    return Ideal(ring, [exact_divide(g, f) for g in K.generators])


def exact_divide(g: Polynomial, f: Polynomial) -> Polynomial:
    ring = g.ring
    frame = order_frame(ring, GREVLEX)
    fe = engine.make_monic(frame, _with_lead(frame, to_elt(frame, f)))
    lc = f.lead()[1]
    q = ring.zero()
    r = g
    fld = ring.field
    while r:
        e, c = r.lead()
        le = fe.lexp
        m = tuple(a - b for a, b in zip(e, le))
        if min(m) < 0:
            raise RingError("division is not exact")
        t = ring.monomial(m, fld.div(c, lc))
        q = q + t
        r = r - t * f
    return q


def _with_lead(frame, e):
    engine._set_lead(frame, e, 0)
    return e


def saturate(I: Ideal, f: Polynomial, max_rounds: int = 64) -> Ideal:
    """I : f^∞.

    For a variable of a homogeneous ideal the basis in grevlex with that
    variable last is divided by the largest power of it; otherwise colons
    are iterated until the Groebner bases agree.
    """
    ring = I.ring
    if f.is_constant():
        if f.is_zero():
            return Ideal(ring, [ring.one()])
        return Ideal(ring, I.generators)
    var = _single_variable(f)
    if var is not None and I.is_homogeneous:
        return _saturate_variable(I, var)
    cur = I
    for _ in range(max_rounds):
        nxt = colon(cur, f)
        if contains(cur, nxt):
            return cur
        cur = nxt
    raise RuntimeError("saturation did not stabilize")


def _single_variable(f: Polynomial):
    if len(f) != 1:
        return None
    (e, _), = f.items()
    if sum(e) != 1:
        return None
    return e.index(1)


def _saturate_variable(I: Ideal, i: int) -> Ideal:
    ring = I.ring
    n = ring.n
    block = [j for j in range(n) if j != i] + [i]
    top = list(ring.weights)
    rows = [top] + [[-1 if j == b else 0 for j in range(n)] for b in reversed(block[1:])]
    frame = frame_for(ring, rows)
    res = _gb_with(ring, frame, I.generators, 0, None, None)
    out = []
    for e in res.basis:
        g = from_elt(ring, frame, e)
        k = min(ex[i] for ex, _ in g.items())
        if k:
            shift = [0] * n
            shift[i] = k
            g = g.divide_monomial(shift)
        out.append(g)
    return Ideal(ring, out)


def restrict_to(I: Ideal, kept: Iterable[str]) -> Ideal:
    """Set the variables outside ``kept`` to zero; result in the kept subring."""
    ring = I.ring
    kept = list(kept)
    small, keep = subring(ring, [v for v in ring.variables if v not in kept])
    out = []
    for g in I.generators:
        terms = {}
        for e, c in g.items():
            if all(e[j] == 0 for j in range(ring.n) if j not in keep):
                terms[tuple(e[j] for j in keep)] = c
        if terms:
            out.append(Polynomial(small, terms))
    return Ideal(small, out)


def locus_disjoint(I: Ideal, kept_variables: Iterable[str]) -> bool:
    J = restrict_to(I, kept_variables)
    if not J.generators:
        return False
    gb = J.gb()
    n = J.ring.n
    for i in range(n):
        if not any(e[i] and sum(e) == e[i] for e in gb.leads()):
            return False
    return True


def dehomogenize(I: Ideal, chart_variable: str) -> Ideal:
    ring = I.ring
    small, keep = subring(ring, [chart_variable])
    out = []
    for g in I.generators:
        acc: dict = {}
        for e, c in g.items():
            k = tuple(e[j] for j in keep)
            acc[k] = ring.field.add(acc.get(k, 0), c)
        out.append(Polynomial(small, {k: c for k, c in acc.items() if c}))
    return Ideal(small, out)


def jacobian_ideal(I: Ideal, chart_variable: str) -> Ideal:
    """Affine singular-locus ideal of V(I) in the chart ``chart_variable = 1``."""
    from .hilbert import krull_dimension
    from .ring import matrix_minors

    ring = I.ring
    if ring.weights[ring.index(chart_variable)] != 1:
        raise RingError("the chart variable must have weight 1")
    A = dehomogenize(I, chart_variable)
    dim = krull_dimension(A)
    codim = A.ring.n - dim
    gens = list(A.generators)
    if dim < 0 or codim == 0:
        return A
    jac = [[g.diff(v) for v in A.ring.variables] for g in gens]
    minors = [m for m in matrix_minors(jac, codim) if m] if codim <= len(gens) else []
    return Ideal(A.ring, gens + minors)


def is_unit_ideal(I: Ideal) -> bool:
    gb = I.gb()
    return any(not any(e) for e in gb.leads())
