"""Seeded text generators and a sampling feasibility oracle.

The oracle knows nothing about the decision theory: it samples the
parameter Q, random tablets, and random values for the free output
overlaps, then accepts a sample iff the forced output Gram completes to a
valid text and the overlap conditions hold.  It can certify feasibility,
never infeasibility.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .texts import Text, embed_text, null_index_set, psd_tol, validate_text
from .graphs import SimpleGraph, graph_of_text
from .translation import TranslationWitness, overlap_residual, q_from_Q
from .classify import hadamard_inverse_signature

MODULUS_CAP = 1.0 - 1e-6


class InfeasibleSpec(ValueError):
    pass


@dataclass(frozen=True)
class GenSpec:
    """Recipe for one generated text.

    mode  : 'random_efficient' | 'uniform' | 'from_graph' | 'untranslatable4'
    n     : number of states (ignored by untranslatable4, fixed at 4)
    seed  : RNG seed; identical specs generate identical texts
    z     : common overlap for 'uniform'
    graph : overlap graph for 'from_graph'
    """

    mode: str
    n: int = 3
    seed: int = 0
    z: float | None = None
    graph: SimpleGraph | None = None


def _row_dominant(n: int, rng: np.random.Generator,
                  mask: np.ndarray | None = None) -> np.ndarray:
    """Random Hermitian unit-diagonal matrix with row sums of off-diagonal
    moduli at most 0.9, hence positive definite; `mask` selects which
    off-diagonal entries may be nonzero."""
    raw = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    raw = (raw + raw.conj().T) / 2.0
    np.fill_diagonal(raw, 0.0)
    # keep magnitudes visibly away from the orthogonality tolerance
    mags = np.abs(raw)
    with np.errstate(invalid="ignore", divide="ignore"):
        raw = np.where(mags > 0, raw * (0.2 + 0.8 * np.tanh(mags)) / mags, 0.0)
    if mask is not None:
        raw = raw * mask
    rowsum = np.max(np.abs(raw).sum(axis=1))
    if rowsum > 0:
        raw = raw * (0.9 / max(rowsum, 0.9 / 0.95))
    gram = np.eye(n, dtype=complex) + raw
    return gram


def gen_text(spec: GenSpec) -> Text:
    """Generate a validated text from a spec; deterministic per (spec, seed)."""
    rng = np.random.default_rng([spec.seed, 31415])
    if spec.mode == "random_efficient":
        if spec.n < 1:
            raise InfeasibleSpec("n must be positive")
        return validate_text(_row_dominant(spec.n, rng))
    if spec.mode == "uniform":
        n = spec.n
        if spec.z is None:
            # keep away from the PSD boundary and from zero
            lo = -1.0 / (n - 1) + 0.02
            z = 0.0
            while abs(z) < 0.02:
                z = float(rng.uniform(lo, 0.95))
        else:
            z = float(spec.z)
        if n < 2 or not (-1.0 / (n - 1) < z < 1.0) or z == 0.0:
            raise InfeasibleSpec(
                f"uniform overlap must lie in (-1/{n - 1}, 1) minus 0, got {z}")
        gram = np.full((n, n), complex(z))
        np.fill_diagonal(gram, 1.0)
        return validate_text(gram)
    if spec.mode == "from_graph":
        if spec.graph is None:
            raise InfeasibleSpec("from_graph mode needs a graph")
        g = spec.graph
        mask = np.zeros((g.n, g.n))
        for (i, j) in g.edges:
            mask[i, j] = mask[j, i] = 1.0
        t = validate_text(_row_dominant(g.n, rng, mask=mask))
        if graph_of_text(t) != g:
            raise InfeasibleSpec("internal: generated text has the wrong graph")
        return t
    if spec.mode == "untranslatable4":
        for k in range(10000):
            sub = np.random.default_rng([spec.seed, k, 27182])
            t = validate_text(_row_dominant(4, sub))
            sig = hadamard_inverse_signature(t)
            if (sig.n_pos, sig.n_neg, sig.n_zero) == (2, 2, 0):
                return t
        raise InfeasibleSpec(
            "no signature (2,2,0) text found within 10000 rejection samples")
    raise InfeasibleSpec(f"unknown mode {spec.mode!r}")


@dataclass
class OracleReport:
    found: bool
    best_penalty: float
    samples: int
    seed: int
    witness: TranslationWitness | None = None
    accepted_Q: list[float] | None = None


def oracle_feasible(t: Text, samples: int = 100000, seed: int = 0,
                    keep_all: bool = False) -> OracleReport:
    """Sampling check for the existence of any translation of a text.

    Draws Q uniformly in [-1, 1], tablets uniformly on the padded sphere,
    and free output overlaps in the unit disc; a sample is accepted when
    the assembled output Gram validates and the overlap conditions hold at
    1e-8.  The first probe is deterministic (Q = 0, bare padded tablet,
    free entries 0) so classical texts are found immediately.  A report
    with found=False says nothing beyond "not found in `samples` tries".
    Samples are processed in batches for speed; results are identical for
    identical (text, samples, seed).
    """
    rng = np.random.default_rng([seed, 1618])
    emb = embed_text(t, pad_extra_dim=True)
    E = emb.vectors
    n = t.n
    free = sorted(null_index_set(t))
    nonnull = ~np.eye(n, dtype=bool)
    for (i, j) in free:
        nonnull[i, j] = nonnull[j, i] = False
    z = t.gram
    iu = np.triu_indices(n, 1)
    best = np.inf
    used = 0
    accepted_Q: list[float] = []
    witness = None

    free_i = np.array([i for i, _ in free], dtype=int)
    free_j = np.array([j for _, j in free], dtype=int)

    def evaluate(Q: np.ndarray, tablets: np.ndarray, free_vals: np.ndarray):
        """Batched acceptance test; returns per-sample (ok, penalty, Y, A)."""
        nonlocal best
        m = len(Q)
        A = tablets @ E.conj()
        B = 1.0 + Q[:, None] * np.abs(A) ** 2
        Y = np.broadcast_to(np.eye(n, dtype=complex), (m, n, n)).copy()
        okB = B.min(axis=1) > 1e-12
        safeB = np.where(B > 1e-12, B, 1.0)
        num = z[None, :, :] + Q[:, None, None] * (A[:, :, None] * A.conj()[:, None, :])
        den = np.sqrt(safeB[:, :, None] * safeB[:, None, :])
        with np.errstate(divide="ignore", invalid="ignore"):
            forced = num / (den * np.where(nonnull, z, 1.0)[None, :, :])
        Y[:, nonnull] = forced[:, nonnull]
        for idx, (i, j) in enumerate(free):
            Y[:, i, j] = free_vals[:, idx]
            Y[:, j, i] = free_vals[:, idx].conj()
        lam = np.linalg.eigvalsh(Y)
        offmod = np.abs(Y[:, iu[0], iu[1]]) if n > 1 else np.zeros((m, 0))
        pen = np.maximum(0.0, -lam[:, 0]) ** 2
        if offmod.shape[1]:
            pen = pen + np.sum(np.maximum(0.0, offmod - MODULUS_CAP) ** 2, axis=1)
        if free_i.size:
            # orthogonal input pairs still constrain the tablet:
            # |Q a_i conj(a_j)| must vanish there (output entry stays free)
            nullres = np.abs(Q[:, None] * A[:, free_i] * A.conj()[:, free_j])
            pen = pen + np.sum(np.maximum(0.0, nullres - 1e-8) ** 2, axis=1)
        pen = np.where(okB, pen, np.inf)
        finite = pen[np.isfinite(pen)]
        if finite.size:
            best = min(best, float(finite.min()))
        ok = okB & (lam[:, 0] >= -psd_tol(n))
        if offmod.shape[1]:
            ok &= offmod.max(axis=1) < 1.0 - 1e-12
        if free_i.size:
            ok &= nullres.max(axis=1) <= 1e-8
        return ok, Y, A, B

    def record(Q, tablet, Y, A, B) -> bool:
        nonlocal witness
        if overlap_residual(t, float(Q), A, Y) > 1e-8:
            return False
        accepted_Q.append(float(Q))
        if witness is None:
            witness = TranslationWitness(
                Q=float(Q), q=q_from_Q(float(Q)), tablet=np.array(tablet),
                output_gram=np.array(Y), b=np.array(B), unitary=None,
                residuals={"eq4": overlap_residual(t, float(Q), A, Y),
                           "eq2": None})
        return True

    # deterministic classical probe
    probe = np.zeros((1, emb.dim), dtype=complex)
    probe[0, -1] = 1.0
    used += 1
    ok, Y, A, B = evaluate(np.zeros(1), probe, np.zeros((1, len(free)), dtype=complex))
    if ok[0]:
        record(0.0, probe[0], Y[0], A[0], B[0])
        if not keep_all:
            return OracleReport(found=True, best_penalty=float(best),
                                samples=used, seed=seed, witness=witness,
                                accepted_Q=accepted_Q)

    batch = 512
    while used < samples:
        m = int(min(batch, samples - used))
        Q = rng.uniform(-1.0, 1.0, size=m)
        raw = rng.standard_normal((m, emb.dim)) + 1j * rng.standard_normal((m, emb.dim))
        tablets = raw / np.linalg.norm(raw, axis=1, keepdims=True)
        radii = np.sqrt(rng.uniform(0.0, 1.0, size=(m, len(free))))
        phases = np.exp(2j * np.pi * rng.uniform(0.0, 1.0, size=(m, len(free))))
        free_vals = radii * phases
        ok, Y, A, B = evaluate(Q, tablets, free_vals)
        used += m
        hit = False
        for s in np.flatnonzero(ok):
            hit = record(Q[s], tablets[s], Y[s], A[s], B[s]) or hit
            if hit and not keep_all:
                break
        if hit and not keep_all:
            break
    return OracleReport(found=witness is not None, best_penalty=float(best),
                        samples=used, seed=seed, witness=witness,
                        accepted_Q=accepted_Q)
