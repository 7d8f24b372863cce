"""Graded minimal free resolutions via Schreyer's syzygy construction."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import engine
from .groebner import Ideal, frame_for
from .ring import GREVLEX, Polynomial, RingSpec


@dataclass(frozen=True)
class GradedFreeModule:
    twists: tuple

    @property
    def rank(self) -> int:
        return len(self.twists)

    def __str__(self):
        return " + ".join(f"R(-{t})" for t in self.twists) or "0"


@dataclass
class SyzygyMatrix:
    """A map F_source -> F_target; column j is the image of basis vector j."""

    ring: RingSpec
    target: GradedFreeModule
    source: GradedFreeModule
    columns: list  # list of lists of Polynomial, each of length target.rank

    def entry(self, i: int, j: int) -> Polynomial:
        return self.columns[j][i]

    def has_unit_entry(self) -> bool:
        return any(p and p.is_constant() for col in self.columns for p in col)

    def compose(self, other: "SyzygyMatrix") -> list:
        """self * other as a list of columns."""
        out = []
        for col in other.columns:
            acc = [self.ring.zero() for _ in range(self.target.rank)]
            for j, c in enumerate(col):
                if c:
                    for i in range(self.target.rank):
                        e = self.columns[j][i]
                        if e:
                            acc[i] = acc[i] + c * e
            out.append(acc)
        return out


@dataclass
class BettiTable:
    steps: list  # twists of F_0, F_1, ...

    def ranks(self) -> list[int]:
        return [len(s) for s in self.steps]

    def entry(self, i: int, d: int) -> int:
        return sum(1 for t in self.steps[i] if t == d)

    def __str__(self):
        if not self.steps:
            return "0"
        rows = sorted({t - i for i, s in enumerate(self.steps) for t in s})
        cols = range(len(self.steps))
        cells = [[str(i) for i in cols], [str(len(self.steps[i])) for i in cols]]
        labels = ["", "total:"]
        for r in rows:
            labels.append(f"{r}:")
            cells.append([str(self.entry(i, i + r)) if self.entry(i, i + r) else "." for i in cols])
        width = [max(len(row[i]) for row in cells) for i in cols]
        lw = max(len(lb) for lb in labels)
        lines = []
        for lb, row in zip(labels, cells):
            lines.append(lb.rjust(lw) + " " + " ".join(c.rjust(w) for c, w in zip(row, width)))
        return "\n".join(line.rstrip() for line in lines)


@dataclass
class Resolution:
    ring: RingSpec
    maps: list = field(default_factory=list)  # d_1, d_2, ...

    @property
    def betti(self) -> BettiTable:
        steps = [tuple(self.maps[0].target.twists)] if self.maps else [(0,)]
        steps += [tuple(m.source.twists) for m in self.maps]
        return BettiTable(steps)

    @property
    def length(self) -> int:
        return len(self.maps)


def _module_frame(ring: RingSpec, twists):
    return frame_for(ring, GREVLEX.rows(ring.weights), twists=tuple(twists))


def _column_elt(frame, col) -> engine.Elt:
    items = []
    for comp, p in enumerate(col):
        for e, c in p.items():
            items.append((e, comp, c))
    return frame.elt(items)


def _elt_column(ring: RingSpec, frame, e: engine.Elt, rank: int) -> list:
    cols = [dict() for _ in range(rank)]
    for exps, comp, c in frame.items(e):
        cols[comp][exps] = c
    return [Polynomial(ring, d) for d in cols]


def column_degree(col, twists) -> int:
    degs = {p.ring.degree(e) + t for p, t in zip(col, twists) for e, _ in p.items()}
    if len(degs) != 1:
        raise ValueError("column is not homogeneous")
    return degs.pop()


def minimal_subset(ring: RingSpec, columns, twists) -> list[int]:
    """Indices of a minimal generating subset of homogeneous columns."""
    frame = _module_frame(ring, twists)
    elts = [_column_elt(frame, c) for c in columns]
    return engine.buchberger(frame, elts, reduce_result=False).minimal


def syzygies(M: SyzygyMatrix) -> SyzygyMatrix:
    """Minimal generators of the kernel of M (columns assumed homogeneous)."""
    ring = M.ring
    frame = _module_frame(ring, M.target.twists)
    src = list(M.source.twists)
    rep_frame = _module_frame(ring, src)
    gens = []
    for j, col in enumerate(M.columns):
        e = _column_elt(frame, col)
        e.rep = rep_frame.elt([((0,) * ring.n, j, 1)])
        if e.keys:
            e.sugar = src[j]
        gens.append(e)
    res = engine.buchberger(frame, gens, rep_frame=rep_frame, reduce_result=False)
    syz = []
    for s in res.syzygies:
        if s is None or not s.keys:
            continue
        syz.append(rep_frame.elt(rep_frame.items(s)))
    mins = engine.buchberger(rep_frame, syz, reduce_result=False).minimal
    cols = [_elt_column(ring, rep_frame, syz[i], len(src)) for i in mins]
    twists = [column_degree(c, src) for c in cols]
    order = sorted(range(len(cols)), key=lambda i: twists[i])
    cols = [cols[i] for i in order]
    twists = [twists[i] for i in order]
    return SyzygyMatrix(ring, GradedFreeModule(tuple(src)), GradedFreeModule(tuple(twists)), cols)


def minimal_generators(I: Ideal) -> list[Polynomial]:
    gens = [g for g in I.generators]
    idx = minimal_subset(I.ring, [[g] for g in gens], [0])
    out = [gens[i] for i in idx]
    out.sort(key=lambda g: g.degree)
    return out


def minimal_resolution(I: Ideal, max_steps: int | None = None) -> Resolution:
    ring = I.ring
    if not I.is_homogeneous:
        raise ValueError("resolution needs a homogeneous ideal")
    if max_steps is None:
        max_steps = ring.n
    gens = minimal_generators(I)
    res = Resolution(ring)
    if not gens:
        return res
    d1 = SyzygyMatrix(ring, GradedFreeModule((0,)), GradedFreeModule(tuple(g.degree for g in gens)),
                      [[g] for g in gens])
    res.maps.append(d1)
    while len(res.maps) < max_steps:
        nxt = syzygies(res.maps[-1])
        if not nxt.columns:
            break
        res.maps.append(nxt)
    return res


def canonical_twist(res: Resolution) -> int:
    """Last twist minus the sum of the weights, for a Gorenstein (rank 1 tail) resolution."""
    last = res.betti.steps[-1]
    if len(last) != 1:
        raise ValueError(f"last module has rank {len(last)}, not 1")
    return last[0] - sum(res.ring.weights)


def is_complex(res: Resolution) -> bool:
    for a, b in zip(res.maps, res.maps[1:]):
        if any(p for col in a.compose(b) for p in col):
            return False
    return True
