"""Witnesses for translating a text: frame states, output Grams, unitaries.

A translation of a text {psi_i} is a unitary U on a doubled space together
with a unit *tablet* state psi_0 and a parameter q such that the frame
states

    Omega_i = (psi_i (x) psi_0 + q psi_0 (x) psi_i) / sqrt(A_i)

are mapped onto product states chi_i (x) psi_i.  Such a unitary exists iff
the two families have equal Gram matrices, which reduces to the overlap
conditions

    z_ij + Q a_i conj(a_j) = sqrt(B_i B_j) y_ij z_ij        (i < j)

with a_i = <psi_i|psi_0>, B_i = 1 + Q |a_i|^2 and Q = 2 Re(q) / (1 + |q|^2).
Pairs with z_ij = 0 impose no condition: the corresponding output overlaps
y_ij are free, subject only to the output Gram being a valid text.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .texts import (
    Text,
    StateEmbedding,
    ZERO_TOL,
    embed_text,
    null_index_set,
    subtext,
    validate_text,
    TextError,
)

EQ4_TOL = 1e-8
EQ2_TOL = 1e-8
UNITARITY_TOL = 1e-10
TABLET_NORM_TOL = 1e-10
Q_CONSISTENCY_TOL = 1e-12
B_FLOOR = 1e-12
NORMALIZER_FLOOR = 1e-12
FRAME_RANK_TOL = 1e-12
MODULUS_MARGIN = 1e-6


class TranslationError(ValueError):
    pass


class QOutOfRange(TranslationError):
    pass


class DegenerateNormalizer(TranslationError):
    pass


class DegenerateB(TranslationError):
    pass


class Infeasible(TranslationError):
    pass


class GramMismatch(TranslationError):
    pass


class DimensionMismatch(TranslationError):
    pass


def q_from_Q(Q: float) -> complex:
    """Real representative q of the class with 2 Re(q) / (1 + |q|^2) = Q.

    Uses the cancellation-free form q = Q / (1 + sqrt(1 - Q^2)); q = 0 for
    Q = 0 and q = +-1 at Q = +-1.
    """
    Q = float(Q)
    if not -1.0 <= Q <= 1.0:
        raise QOutOfRange(f"Q = {Q} outside [-1, 1]")
    return complex(Q / (1.0 + np.sqrt(max(0.0, 1.0 - Q * Q))))


def Q_from_q(q: complex) -> float:
    """Entanglement parameter Q = 2 Re(q) / (1 + |q|^2) in [-1, 1]."""
    q = complex(q)
    return 2.0 * q.real / (1.0 + abs(q) ** 2)


def tablet_overlaps(emb: StateEmbedding, tablet: np.ndarray) -> np.ndarray:
    """Vector of overlaps a_i = <psi_i|psi_0> for a tablet in emb coordinates."""
    tablet = np.asarray(tablet, dtype=complex)
    if tablet.shape != (emb.dim,):
        raise DimensionMismatch(
            f"tablet has length {tablet.shape}, embedding dimension is {emb.dim}")
    return emb.vectors.conj().T @ tablet


@dataclass(frozen=True)
class OmegaSystem:
    """Frame states Omega_i as columns, with their normalizers A_i."""

    q: complex
    tablet: np.ndarray
    normalizers: np.ndarray
    omegas: np.ndarray

    def __post_init__(self):
        self.tablet.setflags(write=False)
        self.normalizers.setflags(write=False)
        self.omegas.setflags(write=False)


def build_omega(emb: StateEmbedding, tablet: np.ndarray, q: complex) -> OmegaSystem:
    """Frame states on the doubled space of an embedding.

    A_i = 1 + |q|^2 + 2 Re(q) |<psi_i|psi_0>|^2 must stay above 1e-12.
    """
    q = complex(q)
    tablet = np.array(tablet, dtype=complex)
    a = tablet_overlaps(emb, tablet)
    A = 1.0 + abs(q) ** 2 + 2.0 * q.real * np.abs(a) ** 2
    if np.min(A) <= NORMALIZER_FLOOR:
        raise DegenerateNormalizer(f"min A_i = {np.min(A):.3e}")
    d = emb.vectors.shape[0]
    omegas = np.empty((d * d, emb.vectors.shape[1]), dtype=complex)
    for i in range(emb.vectors.shape[1]):
        psi = emb.vectors[:, i]
        omegas[:, i] = (np.kron(psi, tablet) + q * np.kron(tablet, psi)) / np.sqrt(A[i])
    return OmegaSystem(q=q, tablet=tablet, normalizers=A, omegas=omegas)


@dataclass(frozen=True)
class PartialGram:
    """Output Gram with the entries of orthogonal input pairs left free."""

    values: np.ndarray
    free: frozenset[tuple[int, int]]

    def __post_init__(self):
        self.values.setflags(write=False)


def output_gram(t: Text, Q: float, tablet: np.ndarray,
                emb: StateEmbedding | None = None) -> PartialGram:
    """Forced output overlaps y_ij = (1 + Q a_i conj(a_j) / z_ij) / sqrt(B_i B_j).

    Entries of orthogonal input pairs are left at zero and reported free.
    """
    if not -1.0 <= float(Q) <= 1.0:
        raise QOutOfRange(f"Q = {Q} outside [-1, 1]")
    if emb is None:
        emb = embed_text(t, pad_extra_dim=(len(tablet) == embed_text(t).dim + 1))
    a = tablet_overlaps(emb, tablet)
    B = 1.0 + Q * np.abs(a) ** 2
    if np.min(B) <= B_FLOOR:
        raise DegenerateB(f"min B_i = {np.min(B):.3e}")
    free = null_index_set(t)
    n = t.n
    vals = np.eye(n, dtype=complex)
    scale = np.sqrt(np.outer(B, B))
    for i in range(n):
        for j in range(i + 1, n):
            if (i, j) in free:
                continue
            y = (1.0 + Q * a[i] * np.conj(a[j]) / t.gram[i, j]) / scale[i, j]
            vals[i, j] = y
            vals[j, i] = np.conj(y)
    return PartialGram(values=vals, free=free)


def complete_output_gram(partial: PartialGram, free_values: dict | None = None) -> np.ndarray:
    """Fill the free entries of a partial output Gram and validate the result.

    With `free_values` the given entries are used directly; otherwise the
    free entries default to zero, followed by an alternating-projection
    repair pass if plain zeros are not PSD.  Raises Infeasible when no
    valid completion is found.
    """
    n = partial.values.shape[0]
    y = np.array(partial.values, dtype=complex)
    off = ~np.eye(n, dtype=bool)
    fixed_mask = off.copy()
    for (i, j) in partial.free:
        fixed_mask[i, j] = fixed_mask[j, i] = False
    if fixed_mask.any() and np.any(np.abs(y[fixed_mask]) >= 1.0 - 1e-12):
        raise Infeasible("a forced output overlap has modulus >= 1")
    if free_values is not None:
        for (i, j), v in free_values.items():
            if (min(i, j), max(i, j)) not in partial.free:
                raise Infeasible(f"entry ({i}, {j}) is not free")
            y[i, j] = complex(v)
            y[j, i] = np.conj(complex(v))
        try:
            return validate_text(y).gram
        except TextError as exc:
            raise Infeasible(f"supplied free entries invalid: {exc}") from exc
    try:
        return validate_text(y).gram
    except TextError:
        pass
    # Alternating projections between the PSD cone and the fixed entries.
    cap = 1.0 - 1e-9
    for _ in range(500):
        lam, vec = np.linalg.eigh((y + y.conj().T) / 2.0)
        y = (vec * np.clip(lam, 0.0, None)) @ vec.conj().T
        y[fixed_mask] = partial.values[fixed_mask]
        np.fill_diagonal(y, 1.0)
        hot = (np.abs(y) > cap) & ~fixed_mask & off
        if hot.any():
            y[hot] *= cap / np.abs(y[hot])
    try:
        return validate_text(y).gram
    except TextError as exc:
        raise Infeasible(f"no valid completion found: {exc}") from exc


@dataclass
class TranslationWitness:
    """Everything needed to check one translation.

    Q             : entanglement parameter in [-1, 1]
    q             : a representative with 2 Re(q)/(1+|q|^2) = Q
    tablet        : unit tablet in embedding coordinates (optionally padded)
    output_gram   : Gram matrix of the output text
    b             : the factors B_i = 1 + Q |<psi_i|psi_0>|^2
    unitary       : optional unitary on the doubled padded space
    residuals     : {'eq4': overlap residual, 'eq2': mapping residual}
    """

    Q: float
    q: complex
    tablet: np.ndarray
    output_gram: np.ndarray
    b: np.ndarray | None = None
    unitary: np.ndarray | None = None
    residuals: dict = field(default_factory=dict)

    @property
    def embedding_dim(self) -> int:
        return int(len(self.tablet))


def _embedding_for_tablet(t: Text, tablet_len: int) -> StateEmbedding:
    base = embed_text(t)
    if tablet_len == base.dim:
        return base
    if tablet_len == base.dim + 1:
        return embed_text(t, pad_extra_dim=True)
    raise DimensionMismatch(
        f"tablet length {tablet_len} does not match embedding dimension "
        f"{base.dim} (or {base.dim} + 1)")


def overlap_residual(t: Text, Q: float, overlaps: np.ndarray,
                     output: np.ndarray) -> float:
    """Max modulus of z_ij + Q a_i conj(a_j) - sqrt(B_i B_j) y_ij z_ij over
    all pairs i < j.

    For an orthogonal pair the condition degenerates to |Q a_i conj(a_j)|:
    the output entry there is free, but the tablet still has to avoid
    overlapping both states at once.
    """
    a = np.asarray(overlaps, dtype=complex)
    B = 1.0 + Q * np.abs(a) ** 2
    lhs = t.gram + Q * np.outer(a, a.conj())
    rhs = np.sqrt(np.outer(B, B)) * output * t.gram
    resid = np.abs(lhs - rhs)
    iu = np.triu_indices(t.n, k=1)
    if iu[0].size == 0:
        return 0.0
    return float(np.max(resid[iu]))


def witness_from_overlaps(t: Text, Q: float, overlaps: np.ndarray,
                          output: np.ndarray, with_unitary: bool = False) -> TranslationWitness:
    """Assemble a witness from the overlap vector it must induce.

    The tablet is reconstructed inside the span of the states (minimal
    norm), with the remaining weight on one fresh padded coordinate.
    """
    if not -1.0 <= float(Q) <= 1.0:
        raise QOutOfRange(f"Q = {Q} outside [-1, 1]")
    o = np.asarray(overlaps, dtype=complex)
    emb = embed_text(t, pad_extra_dim=True)
    span = emb.vectors[:-1, :]
    gram = t.gram
    try:
        coeff = np.linalg.solve(gram, o)
    except np.linalg.LinAlgError:
        coeff = np.linalg.lstsq(gram, o, rcond=None)[0]
    tau = span @ coeff
    s2 = float(np.real(np.vdot(o, coeff)))
    if s2 > 1.0 + 1e-9:
        raise Infeasible(f"overlap vector needs tablet norm {np.sqrt(s2):.6f} > 1")
    pad = np.sqrt(max(0.0, 1.0 - s2))
    tablet = np.concatenate([tau, [pad]])
    norm = np.linalg.norm(tablet)
    if norm <= 0:
        raise Infeasible("overlap vector gives a vanishing tablet")
    tablet = tablet / norm
    a = tablet_overlaps(emb, tablet)
    B = 1.0 + Q * np.abs(a) ** 2
    if np.min(B) <= B_FLOOR:
        raise DegenerateB(f"min B_i = {np.min(B):.3e}")
    out = validate_text(output).gram
    w = TranslationWitness(
        Q=float(Q), q=q_from_Q(Q), tablet=tablet, output_gram=out,
        b=B, unitary=None,
        residuals={"eq4": overlap_residual(t, float(Q), a, out), "eq2": None},
    )
    if with_unitary:
        w.unitary = synthesize_unitary(t, w)
        report = check_witness(t, w)
        w.residuals = {"eq4": report.r1, "eq2": report.r3}
    return w


@dataclass(frozen=True)
class WitnessReport:
    """Verification summary: overlap residual r1, output validity r2,
    mapping residual r3, unitarity defect, and the overall pass flag."""

    r1: float
    r2_ok: bool
    r2_error: str | None
    r3: float | None
    unitarity: float | None
    passed: bool


def check_witness(t: Text, w: TranslationWitness) -> WitnessReport:
    """Verify a witness against its text.

    Pass requires r1 <= 1e-8, a valid output Gram, and, when a unitary is
    attached, mapping residual r3 <= 1e-8.  Internal consistency (unit
    tablet, q vs Q) is enforced with hard errors.
    """
    if abs(Q_from_q(w.q) - w.Q) > Q_CONSISTENCY_TOL:
        raise QOutOfRange(f"q = {w.q} does not represent Q = {w.Q}")
    tablet = np.asarray(w.tablet, dtype=complex)
    norm = np.linalg.norm(tablet)
    if abs(norm - 1.0) > TABLET_NORM_TOL:
        raise TranslationError(f"tablet norm {norm:.12f} is not 1")
    emb = _embedding_for_tablet(t, len(tablet))
    a = tablet_overlaps(emb, tablet)
    B = 1.0 + w.Q * np.abs(a) ** 2
    if np.min(B) <= B_FLOOR:
        raise DegenerateB(f"min B_i = {np.min(B):.3e}")
    try:
        out = validate_text(w.output_gram)
        r2_ok, r2_error = True, None
    except TextError as exc:
        r2_ok, r2_error = False, f"{type(exc).__name__}: {exc}"
    r1 = overlap_residual(t, w.Q, a, np.asarray(w.output_gram, dtype=complex))
    r3 = None
    unitarity = None
    if w.unitary is not None and r2_ok:
        U = np.asarray(w.unitary, dtype=complex)
        D = emb.vectors.shape[0] ** 2
        if U.shape != (D, D):
            raise DimensionMismatch(f"unitary has shape {U.shape}, expected {(D, D)}")
        unitarity = float(np.max(np.abs(U.conj().T @ U - np.eye(D))))
        omega = build_omega(emb, tablet, w.q)
        targets = _product_targets(out, emb)
        r3 = float(np.max(np.linalg.norm(U @ omega.omegas - targets, axis=0)))
    passed = bool(r1 <= EQ4_TOL and r2_ok and (r3 is None or r3 <= EQ2_TOL))
    return WitnessReport(r1=r1, r2_ok=r2_ok, r2_error=r2_error,
                         r3=r3, unitarity=unitarity, passed=passed)


def _product_targets(out_text: Text, emb: StateEmbedding) -> np.ndarray:
    """Columns chi_i (x) psi_i in the doubled space of `emb`."""
    d = emb.vectors.shape[0]
    y_emb = embed_text(out_text)
    if y_emb.dim > d:
        raise DimensionMismatch(
            f"output text needs dimension {y_emb.dim}, language has {d}")
    chi = np.zeros((d, out_text.n), dtype=complex)
    chi[:y_emb.dim, :] = y_emb.vectors
    targets = np.empty((d * d, out_text.n), dtype=complex)
    for i in range(out_text.n):
        targets[:, i] = np.kron(chi[:, i], emb.vectors[:, i])
    return targets


def _orthonormal_polar(W: np.ndarray) -> np.ndarray:
    u, _, vh = np.linalg.svd(W, full_matrices=False)
    return u @ vh


def synthesize_unitary(t: Text, w: TranslationWitness) -> np.ndarray:
    """Unitary mapping each frame state Omega_i onto chi_i (x) psi_i.

    Exists iff the two families share a Gram matrix (checked at 1e-8).
    Both frames are orthonormalized with the same spectral coefficients and
    completed by SVD null-space bases, so the result is deterministic.
    """
    tablet = np.asarray(w.tablet, dtype=complex)
    emb = _embedding_for_tablet(t, len(tablet))
    omega = build_omega(emb, tablet, w.q)
    out = validate_text(w.output_gram)
    targets = _product_targets(out, emb)
    A = omega.omegas
    Bm = targets
    Ga = A.conj().T @ A
    Gb = Bm.conj().T @ Bm
    mismatch = float(np.max(np.abs(Ga - Gb)))
    if mismatch > EQ4_TOL:
        raise GramMismatch(f"frame Grams differ by {mismatch:.3e}")
    lam, vec = np.linalg.eigh((Ga + Ga.conj().T) / 2.0)
    order = np.argsort(lam)[::-1]
    lam = lam[order]
    vec = vec[:, order]
    keep = lam > max(lam[0], 1.0) * FRAME_RANK_TOL
    coeff = vec[:, keep] / np.sqrt(lam[keep])
    P = _orthonormal_polar(A @ coeff)
    Qf = _orthonormal_polar(Bm @ coeff)
    Np = scipy.linalg.null_space(P.conj().T)
    Nq = scipy.linalg.null_space(Qf.conj().T)
    U = np.hstack([Qf, Nq]) @ np.hstack([P, Np]).conj().T
    return U


def restrict_witness(t: Text, w: TranslationWitness, indices) -> TranslationWitness:
    """Witness for the subtext on `indices`, inherited from a parent witness.

    Keeps Q, restricts the overlaps and the output Gram, and rebuilds the
    tablet inside the subtext's own embedding.  No unitary is attached.
    """
    idx = list(indices)
    emb = _embedding_for_tablet(t, len(w.tablet))
    a = tablet_overlaps(emb, np.asarray(w.tablet, dtype=complex))
    sub = subtext(t, idx)
    out_sub = np.asarray(w.output_gram, dtype=complex)[np.ix_(idx, idx)]
    return witness_from_overlaps(sub, w.Q, a[idx], out_sub, with_unitary=False)
