"""Nonnegative sesquilinear forms as Gram matrices.

A nonnegative form ``t`` on C^n in a fixed basis is carried by its PSD
Gram matrix through ``t(x, y) = y* G x`` (conjugation on the second
argument, matching the pairing convention of `core.rank_one`).  The
correspondence is an order isomorphism with PSD matrices, so suprema and
infima of forms delegate to the operator-level decisions.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import core, lattice
from .core import DEFAULT_TOL, Tolerance

__all__ = [
    "SesquilinearForm",
    "to_operator",
    "from_operator",
    "form_leq",
    "form_sup_exists",
    "form_inf_exists",
]


@dataclass(frozen=True)
class SesquilinearForm:
    """Nonnegative form given by its PSD Gram matrix in the standard basis."""

    gram: np.ndarray
    label: str = field(default="")

    def evaluate(self, x, y) -> complex:
        """Value ``t(x, y) = y* gram x``."""
        vx = core.as_vector(x)
        vy = core.as_vector(y)
        return complex(vy.conj() @ core.as_matrix(self.gram) @ vx)

    def __call__(self, x, y) -> complex:
        return self.evaluate(x, y)


def to_operator(t: SesquilinearForm, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """PSD matrix representing the form (validated)."""
    return core.as_psd(t.gram, tol)


def from_operator(m, label: str = "", tol: Tolerance = DEFAULT_TOL) -> SesquilinearForm:
    """Form whose Gram matrix is the given PSD matrix (validated)."""
    return SesquilinearForm(core.as_psd(m, tol), label)


def form_leq(t: SesquilinearForm, s: SesquilinearForm, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Pointwise order of forms, decided on the Gram matrices."""
    return core.loewner_leq(to_operator(t, tol), to_operator(s, tol), tol)


def form_sup_exists(
    t: SesquilinearForm, s: SesquilinearForm, tol: Tolerance = DEFAULT_TOL
) -> bool:
    """Supremum of two nonnegative forms exists iff they are comparable."""
    return lattice.sup_exists(to_operator(t, tol), to_operator(s, tol), tol).exists


def form_inf_exists(
    t: SesquilinearForm, s: SesquilinearForm, tol: Tolerance = DEFAULT_TOL
) -> bool:
    """Infimum of two nonnegative forms exists iff their AC parts are comparable."""
    return lattice.inf_exists(to_operator(t, tol), to_operator(s, tol), tol).exists
