"""Golden ideal files for every stratum kind; ``python -m canring.strata.golden`` rewrites them."""

from __future__ import annotations

import sys
from pathlib import Path

from ..coeff import DEFAULT_PRIME
from ..parse import format_ideal
from .build import BUILDERS

CORPUS_DIR = Path(__file__).resolve().parent.parent / "corpus"
CORPUS_SEED = 0

VARIANTS = {
    "type_a.ideal": ("TypeA", {}),
    "type_a_through_0010.ideal": ("TypeA", {"through_0010": True}),
    "type_b.ideal": ("TypeB", {}),
    "type_dd.ideal": ("TypeDD", {}),
    "type_de.ideal": ("TypeDE", {}),
    "curve_a.ideal": ("CurveA", {}),
    "curve_b.ideal": ("CurveB", {}),
    "type_d_component.ideal": ("TypeD_component", {}),
    "type_d_component_pinched.ideal": ("TypeD_component", {"pinched": True}),
    "type_e_component.ideal": ("TypeE_component", {}),
    "type_e_component_pinched.ideal": ("TypeE_component", {"pinched": True}),
    "x1_de.ideal": ("X1_DE", {}),
    "x2_de.ideal": ("X2_DE", {}),
}


def corpus_texts(seed: int = CORPUS_SEED, prime: int = DEFAULT_PRIME) -> dict[str, str]:
    out = {}
    for name, (kind, opts) in VARIANTS.items():
        inst = BUILDERS[kind](seed, prime, **opts)
        extra = "".join(f", {k}" for k in opts)
        comment = f"{kind} seed {seed}{extra}"
        out[name] = format_ideal(inst.ring, inst.ideal.generators, comment)
    return out


def write_corpus(directory=CORPUS_DIR) -> list[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, text in corpus_texts().items():
        p = directory / name
        p.write_text(text)
        paths.append(p)
    return paths


if __name__ == "__main__":
    for p in write_corpus(sys.argv[1] if len(sys.argv) > 1 else CORPUS_DIR):
        print(p)
