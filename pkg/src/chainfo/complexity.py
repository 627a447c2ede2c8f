"""The four complexity families C = A exp(b B).

Order factors A are the Onicescu energy (E) or Fisher information (I);
disorder factors B are the Shannon (S) or Renyi (R) entropy. Families are
keyed ES, ER, IS, IR; spaces r, p, t. Total-space values factorize exactly,
C_t = C_r * C_p, because A_t is a product and B_t a sum.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError

FAMILIES = ("ES", "ER", "IS", "IR")
SPACES = ("r", "p", "t")
DEFAULT_B_VALUES = (2.0 / 3.0, 1.0)


def complexity_value(order, disorder, b):
    """A * exp(b * B) for order factor A > 0 and disorder scalar B."""
    if order <= 0:
        raise DomainError(f"order factor must be positive, got {order}")
    return order * np.exp(b * disorder)


@dataclass(frozen=True)
class ComplexityReport:
    """All families x spaces x scaling parameters for one MeasureSet."""

    state: object
    r_c: float
    alpha: float
    beta: float
    entries: dict = field(default_factory=dict)  # (family, space, b) -> value

    def value(self, family, space, b):
        return self.entries[(family, space, float(b))]


def assemble_report(ms, b_list=DEFAULT_B_VALUES):
    """ComplexityReport over the given scaling parameters (default 2/3, 1)."""
    if not b_list:
        raise DomainError("b_list must be nonempty")
    order = {
        ("E", "r"): ms.E_r, ("E", "p"): ms.E_p, ("E", "t"): ms.E_t,
        ("I", "r"): ms.I_r, ("I", "p"): ms.I_p, ("I", "t"): ms.I_t,
    }
    disorder = {
        ("S", "r"): ms.S_r, ("S", "p"): ms.S_p, ("S", "t"): ms.S_t,
        ("R", "r"): ms.R_r_alpha, ("R", "p"): ms.R_p_beta, ("R", "t"): ms.R_t,
    }
    entries = {}
    for family in FAMILIES:
        a_key, b_key = family[0], family[1]
        for space in SPACES:
            for b in b_list:
                entries[(family, space, float(b))] = complexity_value(
                    order[(a_key, space)], disorder[(b_key, space)], b
                )
    return ComplexityReport(state=ms.state, r_c=ms.r_c,
                            alpha=ms.alpha, beta=ms.beta, entries=entries)
