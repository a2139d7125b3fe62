"""Common-information landscape of correlated source pairs.

Thin Python surface over the C++ core: Gacs-Korner and Wyner common
information (lossless and lossy), Gray-Wyner tradeoff curves, bivariate
Gaussian closed forms, and the brute-force reference oracles.
"""

from gwci._core import (  # noqa: F401
    GwciError,
    __version__,
    c_curve,
    classify_regime,
    ergodic_components,
    gaussian_joint_rd,
    gaussian_lossy_gk,
    gaussian_lossy_wyner_ci,
    gaussian_slb,
    gaussian_wyner_ci_lossless,
    gk_from_curve,
    joint_rd,
    k_curve,
    lossy_gk_ci,
    lossy_wyner_ci,
    oracle_c_curve,
    run_acceptance,
    source_summary,
    wyner_ci,
    wyner_from_curve,
)


def dsbs(crossover):
    """Doubly symmetric binary source as a 2x2 joint PMF."""
    p = crossover
    return [[(1 - p) / 2, p / 2], [p / 2, (1 - p) / 2]]
