"""The standard profile corpus: 12 fixed mixtures plus 2 seeded tabulated profiles.

The mixtures are hard-coded (three shapes, each normalized to per-coordinate
variance 1, across d in {2, 3, 5, 8}); the tabulated entries are
bump-perturbed Gaussians generated deterministically from the seed with a
counter-based generator and rounded to 12 significant digits so profile
hashes are stable across platforms.
"""

import numpy as np

from .radial_core import chi_quantile

__all__ = ["corpus", "MIXTURE_SHAPES", "CORPUS_DIMS"]

MIXTURE_SHAPES = (
    ("even2", (0.5, 0.5), (0.5, 1.5)),
    ("skew2", (0.3, 0.7), (0.4, 1.2571428571428571)),
    ("sym3", (0.25, 0.5, 0.25), (0.5, 1.0, 1.5)),
)
CORPUS_DIMS = (2, 3, 5, 8)
_TABULATED_DIMS = (2, 3)
_N_GRID = 1601


def _round12(x: float) -> float:
    return float(f"{x:.12g}")


def _bump_profile_literal(d: int, seed: int, index: int) -> dict:
    rng = np.random.Generator(np.random.Philox(key=[int(seed) & (2**64 - 1), index]))
    amp = 0.1 + 0.2 * rng.random()
    center = 0.8 + 0.8 * rng.random()
    width = 0.3 + 0.3 * rng.random()
    r_max = float(chi_quantile(d, 1.0 - 1e-13)) + 1.0
    r = np.linspace(0.0, r_max, _N_GRID)
    gauss = (2.0 * np.pi) ** (-0.5 * d) * np.exp(-0.5 * r * r)
    phi = gauss * (1.0 + amp * np.exp(-(((r - center) / width) ** 2)))
    return {
        "type": "tabulated",
        "d": d,
        "r": [_round12(x) for x in r],
        "phi": [_round12(x) for x in phi],
        "interp_order": 3,
    }


def corpus(seed: int = 0) -> list:
    """Named profile literals of the standard corpus, deterministic per seed."""
    entries = []
    for d in CORPUS_DIMS:
        for tag, weights, variances in MIXTURE_SHAPES:
            entries.append(
                {
                    "name": f"{tag}_d{d}",
                    "profile": {
                        "type": "gaussian_mixture",
                        "d": d,
                        "weights": list(weights),
                        "variances": list(variances),
                    },
                }
            )
    for i, d in enumerate(_TABULATED_DIMS):
        entries.append({"name": f"bump_d{d}", "profile": _bump_profile_literal(d, seed, i)})
    return entries
