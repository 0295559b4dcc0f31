"""Suprema and infima of PSD matrices in the Loewner order.

The PSD cone is an anti-lattice: two PSD matrices have a supremum exactly
when they are comparable (Kadison's theorem).  `kadison_witness` makes the
negative direction constructive: given any strict upper bound ``t`` of an
incomparable pair, it builds another upper bound that is not comparable
with ``t``, so no candidate can be least.

Infima are subtler (Ando's theorem): ``a`` and ``b`` have an infimum
exactly when the absolutely continuous parts ``[b]a`` and ``[a]b`` are
comparable, and then the infimum is the smaller part.  The decision runs
through the compression of the pair onto the range of ``a + b``, where
``a`` is represented by a contraction ``a~`` with ``a~ + b~ = 1``; the
infimum exists iff the spectrum of ``a~`` stays on one side of ``1/2``.
When it straddles, `ando_witness` builds a common lower bound that is not
comparable with the spectral candidate ``min(a~, b~)``, refuting every
candidate infimum.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import core, lebesgue
from .core import (
    DEFAULT_TOL,
    Comparison,
    MatrixError,
    Tolerance,
    ToleranceBreakdownError,
)
from .strength import strength

__all__ = [
    "SupremumVerdict",
    "Compression",
    "InfimumVerdict",
    "sup_exists",
    "kadison_witness",
    "compress",
    "ando_candidate",
    "spectral_criterion",
    "inf_exists",
    "ando_witness",
]


@dataclass(frozen=True)
class SupremumVerdict:
    """Outcome of the supremum decision.

    ``sup`` is present iff ``exists``.  ``witness`` is only populated when
    a candidate upper bound was supplied to `sup_exists` and refuted: it is
    then a PSD upper bound of both inputs not comparable with the candidate.
    """

    exists: bool
    sup: np.ndarray | None
    witness: np.ndarray | None


@dataclass(frozen=True)
class Compression:
    """Representation of a pair on the range of its sum.

    ``j`` is the PSD square root of ``a + b`` and ``range_proj`` the
    projector onto its range (the identity of the compressed space).  The
    contractions satisfy ``a_tilde + b_tilde = range_proj``,
    ``j a_tilde j = a`` and ``j b_tilde j = b``, with
    ``0 <= a_tilde <= range_proj``.  ``range_basis`` holds an orthonormal
    basis of the range in its columns, for spectral work on the compressed
    space.
    """

    a_tilde: np.ndarray
    b_tilde: np.ndarray
    j: np.ndarray
    range_proj: np.ndarray
    range_basis: np.ndarray


@dataclass(frozen=True)
class InfimumVerdict:
    """Outcome of the infimum decision.

    ``candidate`` is always the spectral candidate of `ando_candidate`.
    When the infimum exists, ``inf`` equals the smaller of the two
    absolutely continuous parts (and agrees with ``candidate``).  When it
    does not, ``witness`` is a common lower bound not comparable with the
    candidate.  ``reduced_a`` / ``reduced_b`` expose the mutually
    absolutely continuous parts the decision reduces to.
    """

    exists: bool
    inf: np.ndarray | None
    candidate: np.ndarray
    witness: np.ndarray | None
    reduced_a: np.ndarray
    reduced_b: np.ndarray


def sup_exists(a, b, tol: Tolerance = DEFAULT_TOL, refute=None) -> SupremumVerdict:
    """Supremum of a PSD pair: exists iff the pair is comparable.

    With ``refute`` set to a strict upper bound of both inputs, a failed
    verdict additionally carries a `kadison_witness` for it.
    """
    cmp = core.comparable(a, b, tol)
    if cmp is not Comparison.INCOMPARABLE:
        sup = core.as_hermitian(b if cmp is Comparison.LEQ else a, tol)
        return SupremumVerdict(True, sup, None)
    witness = None
    if refute is not None:
        try:
            witness = kadison_witness(a, b, refute, tol)
        except MatrixError:
            witness = None
    return SupremumVerdict(False, None, witness)


def _first_orthogonal_basis_ray(e: np.ndarray) -> np.ndarray:
    """First standard basis vector not parallel to ``e``, orthogonalized."""
    n = e.size
    for i in range(n):
        cand = np.zeros(n, dtype=np.complex128)
        cand[i] = 1.0
        cand = cand - e * np.vdot(e, cand)
        norm = float(np.linalg.norm(cand))
        if norm > 1e-6:
            return cand / norm
    raise ToleranceBreakdownError("no basis direction independent of the given ray")


def kadison_witness(a, b, t, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Upper bound of ``a`` and ``b`` that is not comparable with ``t``.

    Requires ``t >= a``, ``t >= b`` with ``t`` distinct from both; the
    result ``s`` is PSD, satisfies ``s >= a`` and ``s >= b``, and both
    ``s - t`` and ``t - s`` have a negative eigenvalue.  Rejects dimension
    1, where all PSD matrices are comparable and no witness can exist.

    Two constructions cover the two possible geometries:

    * the ranges of ``t - a`` and ``t - b`` share a direction ``e``: subtract
      the common strength along ``e`` and add an independent rank-one bump,
      ``s = t - lam e e* + f f*``;
    * the ranges are disjoint: pick strength-scaled rays ``e``, ``f`` in
      them with ``e e* <= t - a`` and ``f f* <= t - b`` and perturb by a
      third of the indefinite ``s0 = e e* + 2 e f* + 2 f e* + f f*``.
    """
    ha = core.as_hermitian(a, tol)
    hb = core.as_hermitian(b, tol)
    ht = core.as_hermitian(t, tol)
    core._same_dim(ha, hb)
    core._same_dim(ha, ht)
    n = ha.shape[0]
    if n == 1:
        raise MatrixError(
            "no witness in dimension 1: all PSD matrices are comparable"
        )
    ta = core.hermitian_part(ht - ha)
    tb = core.hermitian_part(ht - hb)
    if not core.is_psd(ta, tol):
        raise MatrixError("precondition failed: t >= a does not hold")
    if not core.is_psd(tb, tol):
        raise MatrixError("precondition failed: t >= b does not hold")
    scale = max(1.0, float(np.max(np.abs(ht))))
    if float(np.max(np.abs(ta))) <= tol.rel * scale:
        raise MatrixError("precondition failed: t coincides with a within tolerance")
    if float(np.max(np.abs(tb))) <= tol.rel * scale:
        raise MatrixError("precondition failed: t coincides with b within tolerance")

    if not lebesgue.mutually_singular(ta, tb, tol):
        # Shared range direction: strength along it is positive for both gaps.
        pa = core.range_projector(ta, tol)
        pb = core.range_projector(tb, tol)
        dec = core.eig_hermitian(pa + pb, tol)
        e = dec.vectors[:, -1]
        lam = min(strength(ta, e, tol).value, strength(tb, e, tol).value)
        if lam <= 0.0:
            raise ToleranceBreakdownError(
                "shared range direction carries no strength; rank tests disagree"
            )
        f = _first_orthogonal_basis_ray(e)
        s = ht - lam * core.rank_one(e) + core.rank_one(f)
    else:
        # Disjoint ranges: strength-scaled rays from each gap.
        dec_a = core.eig_hermitian(ta, tol)
        u = dec_a.vectors[:, -1]
        e = np.sqrt(strength(ta, u, tol).value) * u
        dec_b = core.eig_hermitian(tb, tol)
        v = dec_b.vectors[:, -1]
        f = np.sqrt(strength(tb, v, tol).value) * v
        ef = np.outer(e, f.conj())
        s0 = core.rank_one(e) + 2.0 * ef + 2.0 * ef.conj().T + core.rank_one(f)
        s = ht + s0 / 3.0
    return core.hermitian_part(s)


def compress(a, b, tol: Tolerance = DEFAULT_TOL) -> Compression:
    """Represent ``a`` and ``b`` as contractions on the range of ``a + b``.

    ``a_tilde = s^{+1/2} a s^{+1/2}`` with ``s = a + b``; when ``a`` and
    ``b`` are mutually absolutely continuous the spectrum of ``a_tilde``
    on the range of ``s`` lies strictly inside ``(0, 1)``.
    """
    ha = core.as_hermitian(a, tol)
    hb = core.as_hermitian(b, tol)
    core._same_dim(ha, hb)
    s = core.hermitian_part(ha + hb)
    dec = core.eig_hermitian(s, tol)
    cut = dec.rank_cutoff(tol)
    keep = dec.eigenvalues > cut
    j = dec.apply(lambda w: np.sqrt(np.clip(w, 0.0, None)) * (w > cut))
    pinv_sqrt = dec.apply(
        lambda w: np.where(w > cut, 1.0 / np.sqrt(np.where(w > cut, w, 1.0)), 0.0)
    )
    basis = dec.vectors[:, keep]
    proj = core.hermitian_part(basis @ basis.conj().T)
    a_tilde = core.hermitian_part(pinv_sqrt @ ha @ pinv_sqrt)
    b_tilde = core.hermitian_part(pinv_sqrt @ hb @ pinv_sqrt)
    return Compression(a_tilde, b_tilde, j, proj, basis)


def _active_spectrum(comp: Compression, tol: Tolerance):
    """Spectrum of ``a_tilde`` restricted to the range of the sum.

    Returns ascending eigenvalues and ambient eigenvectors (orthonormal,
    inside the range).  ``b_tilde`` has the same eigenvectors with
    eigenvalues ``1 - w``.
    """
    basis = comp.range_basis
    if basis.shape[1] == 0:
        return np.zeros(0), np.zeros((basis.shape[0], 0), dtype=np.complex128)
    h = core.hermitian_part(basis.conj().T @ comp.a_tilde @ basis)
    dec = core.eig_hermitian(h, tol)
    return dec.eigenvalues, basis @ dec.vectors


def ando_candidate(a, b, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Spectral candidate for the infimum: ``j g(a_tilde) j``, ``g(t) = min(t, 1-t)``.

    Always a common lower bound of ``a`` and ``b``; equals the infimum
    whenever the infimum exists.
    """
    comp = compress(a, b, tol)
    dec = core.eig_hermitian(comp.a_tilde, tol)
    g = dec.apply(lambda w: np.clip(np.minimum(w, 1.0 - w), 0.0, None))
    return core.hermitian_part(comp.j @ g @ comp.j)


def spectral_criterion(a, b, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Spectral form of the infimum decision for mutually AC pairs.

    True iff the spectrum of ``a_tilde`` on the range of ``a + b`` lies
    entirely in ``[0, 1/2]`` or entirely in ``[1/2, 1]`` (within tolerance).
    Rejects pairs that are not mutually absolutely continuous.
    """
    if not (
        lebesgue.absolutely_continuous(a, b, tol)
        and lebesgue.absolutely_continuous(b, a, tol)
    ):
        raise MatrixError(
            "spectral criterion requires mutually absolutely continuous inputs"
        )
    comp = compress(a, b, tol)
    w, _ = _active_spectrum(comp, tol)
    return bool(np.all(w <= 0.5 + tol.rel) or np.all(w >= 0.5 - tol.rel))


def inf_exists(a, b, tol: Tolerance = DEFAULT_TOL) -> InfimumVerdict:
    """Infimum decision: exists iff the AC parts of the pair are comparable.

    The reduction replaces ``(a, b)`` by the mutually absolutely continuous
    pair ``(a', b')`` of maximal parts; when those are comparable, the
    smaller one is the infimum and agrees with the spectral candidate.
    Otherwise the verdict carries an `ando_witness`.
    """
    ap = lebesgue.ac_part(a, b, tol).ac
    bp = lebesgue.ac_part(b, a, tol).ac
    cand = ando_candidate(a, b, tol)
    cmp = core.comparable(ap, bp, tol)
    if cmp is not Comparison.INCOMPARABLE:
        inf = ap if cmp in (Comparison.LEQ, Comparison.EQUAL) else bp
        return InfimumVerdict(True, inf, cand, None, ap, bp)
    try:
        witness = ando_witness(a, b, tol)
    except MatrixError as exc:
        raise ToleranceBreakdownError(
            f"parts are incomparable but no spectral witness exists: {exc}"
        ) from exc
    return InfimumVerdict(False, None, cand, witness, ap, bp)


def _window_margin(w: np.ndarray) -> float:
    """Largest eps whose windows [3 eps, 1/2 - 3 eps] / [1/2 + 3 eps, 1 - 3 eps]
    each still catch an eigenvalue of ``w``."""
    low = w[(w > 0.0) & (w < 0.5)]
    high = w[(w > 0.5) & (w < 1.0)]
    if low.size == 0 or high.size == 0:
        return 0.0
    eps_low = float(np.max(np.minimum(low, 0.5 - low))) / 3.0
    eps_high = float(np.max(np.minimum(high - 0.5, 1.0 - high))) / 3.0
    return min(eps_low, eps_high)


def ando_witness(a, b, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Common lower bound of ``a`` and ``b`` not comparable with the candidate.

    Constructed on the reduced (mutually absolutely continuous) pair: with
    the compressed spectrum straddling ``1/2``, take the largest ``eps``
    for which the spectral windows ``[1/2 + 3 eps, 1 - 3 eps]`` and
    ``[3 eps, 1/2 - 3 eps]`` both catch eigenvalues, couple the two window
    subspaces by a partial isometry ``v``, and map

        d~ = (x~ - eps) p2 + (y~ - eps) p1 + sqrt(2) eps (v p2 + p2 v*)

    back through ``j``.  The roles of the two contractions are swapped if
    needed so that the low window is the smaller one.  Rejects the pair
    when no window pair is populated: then the spectrum is one-sided and
    the infimum exists, violating the precondition.
    """
    ap = lebesgue.ac_part(a, b, tol).ac
    bp = lebesgue.ac_part(b, a, tol).ac
    comp = compress(ap, bp, tol)
    w, vecs = _active_spectrum(comp, tol)

    eps = _window_margin(w)
    if eps <= tol.rel / 3.0:
        raise MatrixError(
            "no spectral straddle: the infimum of the pair exists, "
            "so no witness can be constructed"
        )

    slack = 1e-12
    low = (w >= 3.0 * eps - slack) & (w <= 0.5 - 3.0 * eps + slack)
    high = (w >= 0.5 + 3.0 * eps - slack) & (w <= 1.0 - 3.0 * eps + slack)
    flipped = int(np.count_nonzero(low)) > int(np.count_nonzero(high))
    wx = 1.0 - w if flipped else w
    if flipped:
        low, high = high, low

    v_low = vecs[:, low]
    v_high = vecs[:, high]
    k = v_low.shape[1]
    if k == 0 or v_high.shape[1] < k:
        raise ToleranceBreakdownError("spectral windows lost their eigenvalues")
    v_iso = v_high[:, :k] @ v_low.conj().T

    d_tilde = (
        (v_low * (wx[low] - eps)) @ v_low.conj().T
        + (v_high * (1.0 - wx[high] - eps)) @ v_high.conj().T
        + np.sqrt(2.0) * eps * (v_iso + v_iso.conj().T)
    )
    d = comp.j @ core.hermitian_part(d_tilde) @ comp.j
    return core.hermitian_part(d)
