"""Betti numbers of the residue field and the deviations they determine."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from math import comb

from .errors import ResourceLimitError, TheoremMismatch
from .invariants import minimal_presentation
from .modules import PresentedModule, minimal_free_resolution

DEFAULT_CUTOFF = 6
MIN_CUTOFF = 4
MAX_CUTOFF = 10
CHAR_P_LABEL = "char-p: deviation-based, not AQ-based"


def betti_of_residue_field(algebra, cutoff=DEFAULT_CUTOFF):
    """Total Betti numbers ``b_0..b_cutoff`` of k over the algebra."""
    if not MIN_CUTOFF <= cutoff <= MAX_CUTOFF:
        if cutoff > MAX_CUTOFF:
            raise ResourceLimitError(f"deviation cutoff {cutoff} exceeds the maximum {MAX_CUTOFF}")
        raise ValueError(f"cutoff must be at least {MIN_CUTOFF}")

    def compute():
        A = minimal_presentation(algebra)[0]
        res = minimal_free_resolution(PresentedModule.residue_field(A), cutoff, check_termination=False)
        b = res.betti()
        return b + [0] * (cutoff + 1 - len(b))

    return algebra.cached(("betti_k", cutoff), compute)


def _times_odd(series, i, e, n):
    # multiply by (1 + t^i)^e, truncated at degree n
    out = [0] * (n + 1)
    for k in range(e + 1):
        c = comb(e, k)
        s = k * i
        if s > n:
            break
        for d in range(n + 1 - s):
            out[d + s] += c * series[d]
    return out


def _times_even(series, i, e, n):
    # multiply by 1 / (1 - t^i)^e, truncated at degree n
    out = list(series)
    for _ in range(e):
        for d in range(i, n + 1):
            out[d] += out[d - i]
    return out


def product_series(eps, n):
    """Coefficients up to ``t^n`` of ``prod (1+t^odd)^e / prod (1-t^even)^e``."""
    series = [1] + [0] * n
    for i, e in enumerate(eps, start=1):
        if e:
            series = _times_odd(series, i, e, n) if i % 2 else _times_even(series, i, e, n)
    return series


def deviations_from_betti(betti, upto=4):
    """Deviations ``eps_1..eps_upto`` matching the Poincare series term by term."""
    betti = list(betti)
    if len(betti) < upto + 1:
        raise ValueError(f"need at least {upto + 1} Betti numbers, got {len(betti)}")
    if betti[0] != 1:
        raise ValueError("b_0 must be 1")
    eps = []
    for n in range(1, upto + 1):
        current = product_series(eps, n)
        e = betti[n] - current[n]
        if e < 0:
            raise TheoremMismatch(
                f"deviation eps_{n} would be negative",
                {"betti": betti, "deviations_so_far": eps, "eps": e},
            )
        eps.append(e)
    return eps


@dataclass(frozen=True)
class DeviationProfile:
    cutoff: int
    betti: list
    deviations: list
    ci_by_eps3: bool
    ci_by_eps4: bool
    label: str = None

    def as_dict(self):
        return asdict(self)


def deviation_profile(algebra, cutoff=DEFAULT_CUTOFF):
    betti = betti_of_residue_field(algebra, cutoff)
    eps = deviations_from_betti(betti, min(cutoff, 4))
    label = CHAR_P_LABEL if algebra.field.characteristic else None
    return DeviationProfile(
        cutoff=cutoff,
        betti=betti,
        deviations=eps,
        ci_by_eps3=eps[2] == 0,
        ci_by_eps4=eps[3] == 0,
        label=label,
    )
