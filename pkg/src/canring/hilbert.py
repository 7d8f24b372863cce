"""Hilbert series of weighted-graded quotients and the invariants read off them."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

# integer polynomials in t are coefficient lists, lowest degree first


def _trim(a: list[int]) -> list[int]:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def poly_add(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] += x
    return _trim(out)


def one_minus(w: int) -> list[int]:
    return [1] + [0] * (w - 1) + [-1]


def poly_divmod_one_minus(a: Sequence[int], w: int) -> tuple[list[int], bool]:
    """Divide by (1 - t^w); returns (quotient, exact)."""
    a = list(a)
    if not a:
        return [], True
    # a = (1 - t^w) q  <=>  q_i = a_i + q_{i-w}
    n = len(a)
    q = [0] * max(n - w, 0)
    for i in range(len(q)):
        q[i] = a[i] + (q[i - w] if i >= w else 0)
    check = poly_mul(q, one_minus(w)) if q else []
    return q, check == _trim(a)


def poly_str(a: Sequence[int], var: str = "t") -> str:
    a = _trim(a)
    if not a:
        return "0"
    parts = []
    for i, c in enumerate(a):
        if not c:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        mag = abs(c)
        body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


@dataclass(frozen=True)
class RationalSeries:
    """numerator / prod (1 - t^w) over the denominator weights."""

    numerator: tuple
    denominator: tuple
    truncated: bool = field(default=False, compare=False)

    @classmethod
    def make(cls, numerator: Sequence[int], denominator: Sequence[int]) -> "RationalSeries":
        return cls(tuple(_trim(numerator)), tuple(sorted(denominator)))

    def canonical(self) -> "RationalSeries":
        """Cancel (1 - t^w) factors of the denominator that divide the numerator."""
        num = list(self.numerator)
        den = list(self.denominator)
        changed = True
        while changed and num:
            changed = False
            for w in sorted(set(den), reverse=True):
                q, exact = poly_divmod_one_minus(num, w)
                if exact:
                    num = q
                    den.remove(w)
                    changed = True
                    break
        return RationalSeries.make(num, den)

    def expand(self, upto: int) -> list[int]:
        coeffs = [0] * (upto + 1)
        for i, c in enumerate(self.numerator[: upto + 1]):
            coeffs[i] = c
        for w in self.denominator:
            for i in range(w, upto + 1):
                coeffs[i] += coeffs[i - w]
        return coeffs

    def same_function(self, other: "RationalSeries") -> bool:
        lhs = list(self.numerator)
        for w in other.denominator:
            lhs = poly_mul(lhs, one_minus(w))
        rhs = list(other.numerator)
        for w in self.denominator:
            rhs = poly_mul(rhs, one_minus(w))
        return _trim(lhs) == _trim(rhs)

    def equals(self, other: "RationalSeries", upto: int = 20) -> bool:
        return self.same_function(other) and self.expand(upto) == other.expand(upto)

    def times(self, factor: Sequence[int]) -> "RationalSeries":
        return RationalSeries.make(poly_mul(self.numerator, factor), self.denominator)

    def pole_order(self) -> int:
        """Order of the pole at t = 1; -1 for the zero series."""
        num = list(self.numerator)
        if not num:
            return -1
        k = 0
        while True:
            q, exact = poly_divmod_one_minus(num, 1)
            if not exact or not q:
                break
            num = q
            k += 1
        return len(self.denominator) - k

    def leading_coefficient(self) -> Fraction:
        """lim (1-t)^d H(t) at t=1 for d the pole order."""
        num = list(self.numerator)
        while True:
            q, exact = poly_divmod_one_minus(num, 1)
            if not exact or not q:
                break
            num = q
        prod = 1
        for w in self.denominator:
            prod *= w
        return Fraction(sum(num), prod)

    def __str__(self):
        den = []
        for w in sorted(set(self.denominator)):
            k = self.denominator.count(w)
            base = "(1-t)" if w == 1 else f"(1-t^{w})"
            den.append(base + (f"^{k}" if k > 1 else ""))
        return f"num = {poly_str(self.numerator)}; den = {''.join(den) or '1'}"


@dataclass(frozen=True)
class TruncatedSeries:
    """Coefficient vector certified only up to ``degree``."""

    coefficients: tuple
    degree: int
    truncated: bool = True

    def expand(self, upto: int) -> list[int]:
        if upto > self.degree:
            raise ValueError(f"series only certified up to degree {self.degree}")
        return list(self.coefficients[: upto + 1])

    def __str__(self):
        return f"coefficients (certified to degree {self.degree}) = {list(self.coefficients)}"


TARGET = RationalSeries.make(one_minus(10), (1, 1, 2, 5))


def _minimalize(gens):
    gens = sorted(set(gens), key=sum)
    out = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return out


def hilbert_numerator(leads: Sequence[Sequence[int]], weights: Sequence[int]) -> list[int]:
    """Numerator of the series of k[x]/M over prod (1 - t^w_i), M monomial."""
    memo: dict = {}
    weights = tuple(weights)

    def deg(m):
        return sum(w * e for w, e in zip(weights, m))

    def rec(gens):
        gens = _minimalize(gens)
        key = tuple(sorted(gens))
        if key in memo:
            return memo[key]
        if not gens:
            res = [1]
        elif any(not any(g) for g in gens):
            res = []
        else:
            support = [[i for i, e in enumerate(g) if e] for g in gens]
            used: dict = {}
            clash = False
            for s in support:
                for i in s:
                    if i in used:
                        clash = True
                    used[i] = used.get(i, 0) + 1
            if not clash:
                res = [1]
                for g in gens:
                    res = poly_mul(res, one_minus(deg(g)))
            else:
                i = max(used, key=lambda v: (used[v], -v))
                exps = sorted(g[i] for g in gens if g[i])
                e = exps[(len(exps) - 1) // 2]
                pivot = tuple(e if j == i else 0 for j in range(len(weights)))
                plus = rec(gens + [pivot])
                quot = rec([tuple(max(a - b, 0) for a, b in zip(g, pivot)) for g in gens])
                shift = [0] * deg(pivot) + quot
                res = poly_add(plus, shift)
        memo[key] = res
        return res

    return rec([tuple(m) for m in leads])


def series_of_leads(leads, weights) -> RationalSeries:
    return RationalSeries.make(hilbert_numerator(leads, weights), weights)


def hilbert_series(I, truncation: int | None = None, time_budget: float | None = None):
    """Series of R/I via the lead-term ideal of a Groebner basis.

    With a truncation (or a cached truncated basis) the result is a
    TruncatedSeries holding the certified coefficients only.
    """
    if not I.is_homogeneous:
        raise ValueError("Hilbert series needs a homogeneous ideal")
    gb = I.cached()
    if gb is None:
        gb = I.gb(truncation=truncation, time_budget=time_budget)
    s = series_of_leads(gb.leads(), I.ring.weights)
    if gb.complete:
        return s
    d = gb.truncation if truncation is None else min(truncation, gb.truncation)
    return TruncatedSeries(tuple(s.expand(d)), d)


def series_expand(s, upto: int) -> list[int]:
    return s.expand(upto)


def krull_dimension(I) -> int:
    """Dimension of R/I (affine ideals allowed); -1 for the unit ideal."""
    gb = I.gb()
    return series_of_leads(gb.leads(), I.ring.weights).pole_order()


@dataclass
class InvariantReport:
    chi: int | None
    Ksq: Fraction | None
    plurigenera: list
    pg: int | None
    q: int | None
    surface: bool
    checks: dict = field(default_factory=dict)
    flagged: list = field(default_factory=list)  # degrees m where P_m misses the formula
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.surface and all(self.checks.values())


def check_invariants(s, upto: int = 20) -> InvariantReport:
    """Read chi, K^2, p_g, q and plurigenera off a surface series and test them
    against the I-surface values (chi = 3, K^2 = 1, P_m = 3 + m(m-1)/2)."""
    coeffs = s.expand(upto)
    flagged = [k for k in range(2, upto + 1) if coeffs[k] != 3 + k * (k - 1) // 2]
    if isinstance(s, RationalSeries):
        dim = s.pole_order() - 1
        if dim != 2:
            return InvariantReport(None, None, coeffs, None, None, False, flagged=flagged,
                                   note=f"projective dimension {dim}; not a surface series")
        ksq = s.leading_coefficient()
    else:
        # second difference of the tail
        ksq = Fraction(coeffs[upto] - 2 * coeffs[upto - 1] + coeffs[upto - 2])
    m = upto
    chi = coeffs[m] - ksq * m * (m - 1) / 2
    chi = int(chi) if chi.denominator == 1 else chi
    pg = coeffs[1]
    q = 1 + pg - chi if isinstance(chi, int) else None
    checks = {
        "chi = 3": chi == 3,
        "K^2 = 1": ksq == 1,
        "p_g = 2": pg == 2,
        "q = 0": q == 0,
        "P_2 = chi + K^2 = 4": coeffs[2] == 4,
    }
    checks["P_m = 3 + m(m-1)/2 for 2 <= m <= %d" % upto] = not flagged
    odd = [k for k in range(3, upto + 1, 2) if coeffs[k] != 3 + (k // 2) * k]
    checks["P_{2m+1} = 3 + m(2m+1)"] = not odd
    return InvariantReport(chi, ksq, coeffs, pg, q, True, checks, flagged)
