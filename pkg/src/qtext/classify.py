"""Deciding translatability of a text from its Gram matrix.

The decision reduces to graph shape plus one spectral test.  For a text
with no orthogonal pairs, form the entrywise reciprocal M = 1 ./ z of the
Gram matrix.  A translation with parameter Q of sign eps exists (for some
arbitrarily small |Q|) iff all eigenvalues of M except one simple one have
sign -eps.  Texts with orthogonal pairs are handled by splitting the
overlap graph: isolated states contribute a free classical summand, and
pendant states attach to a complete core that must admit eps = +1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .texts import Text, null_index_set, subtext, text_properties
from .graphs import (
    ForbiddenWitness,
    GraphClass,
    SimpleGraph,
    connected_components,
    graph_of_text,
    induced_subgraph,
    recognize,
)

SIGNATURE_SCALE = 1e-9

REASON_OK_CLASSICAL = "OK_CLASSICAL"
REASON_OK_FULLY_QUANTUM = "OK_FULLY_QUANTUM"
REASON_OK_MIXED = "OK_MIXED"
REASON_NOT_EFFICIENT = "NOT_EFFICIENT"
REASON_NOT_WELL_SPLIT = "NOT_WELL_SPLIT"
REASON_SIGNATURE_FAIL = "THEOREM_F_FAIL"
REASON_CORE_SIGN_FAIL = "THEOREM_I_FAIL"
REASON_Q0_NOT_CLASSICAL = "Q0_NOT_CLASSICAL"

ALL_REASONS = frozenset({
    REASON_OK_CLASSICAL, REASON_OK_FULLY_QUANTUM, REASON_OK_MIXED,
    REASON_NOT_EFFICIENT, REASON_NOT_WELL_SPLIT,
    REASON_SIGNATURE_FAIL, REASON_CORE_SIGN_FAIL, REASON_Q0_NOT_CLASSICAL,
})


class HasOrthogonalPair(ValueError):
    """The reciprocal-Gram signature needs a text without orthogonal pairs."""


class BorderlineSignature(RuntimeError):
    """An eigenvalue sits inside the zero-decision band; refusing to guess."""


@dataclass(frozen=True)
class EigenSignature:
    """Inertia of the entrywise reciprocal of the Gram matrix.

    admissible_signs holds the values of sign(Q) for which arbitrarily
    small translations exist: -1 when exactly one eigenvalue is positive,
    +1 when exactly one is negative.  det_nonzero reports whether the
    output text can be efficient.
    """

    n_pos: int
    n_neg: int
    n_zero: int
    admissible_signs: frozenset[int]
    det_nonzero: bool
    eigenvalues: tuple[float, ...]


def hadamard_inverse_signature(t: Text) -> EigenSignature:
    """Signature of M = 1 ./ z for a text with no orthogonal pairs.

    Eigenvalues with |lam| <= 1e-9 * max|lam| count as zero; any
    eigenvalue inside (threshold/10, threshold*10) raises
    BorderlineSignature instead of guessing a sign.
    """
    if null_index_set(t):
        raise HasOrthogonalPair("text has an orthogonal pair; signature undefined")
    M = 1.0 / t.gram
    lam = np.linalg.eigvalsh((M + M.conj().T) / 2.0)
    thr = SIGNATURE_SCALE * float(np.max(np.abs(lam)))
    mag = np.abs(lam)
    if np.any((mag > thr / 10.0) & (mag < thr * 10.0)):
        raise BorderlineSignature(
            f"an eigenvalue has modulus within ({thr / 10.0:.3e}, {thr * 10.0:.3e})")
    n_zero = int(np.count_nonzero(mag <= thr))
    n_pos = int(np.count_nonzero(lam > thr))
    n_neg = int(np.count_nonzero(lam < -thr))
    if t.n >= 2 and (n_pos < 1 or n_neg < 1):
        raise RuntimeError(
            "internal: reciprocal Gram of a valid text must be indefinite")
    signs = set()
    if n_pos == 1:
        signs.add(-1)
    if n_neg == 1:
        signs.add(+1)
    return EigenSignature(
        n_pos=n_pos, n_neg=n_neg, n_zero=n_zero,
        admissible_signs=frozenset(signs),
        det_nonzero=bool(n_zero == 0),
        eigenvalues=tuple(float(x) for x in lam),
    )


@dataclass(frozen=True)
class FullyQuantumDecision:
    translatable: bool
    admissible_signs: frozenset[int]
    efficient_output_possible: bool


def decide_fully_quantum(sig: EigenSignature) -> FullyQuantumDecision:
    """Translatability of a text without orthogonal pairs, from its signature."""
    return FullyQuantumDecision(
        translatable=bool(sig.admissible_signs),
        admissible_signs=sig.admissible_signs,
        efficient_output_possible=sig.det_nonzero,
    )


@dataclass(frozen=True)
class Decomposition:
    """How the state set splits for synthesis.

    classical_part : states orthogonal to the rest of their surroundings
                     (isolated states plus pendants)
    quantum_part   : the complete core
    attachment     : pendant index -> its unique non-orthogonal core index
    """

    classical_part: frozenset[int]
    quantum_part: frozenset[int]
    attachment: dict[int, int]


@dataclass(frozen=True)
class Decision:
    translatable: bool
    reason: str
    signature: EigenSignature | None = None
    decomposition: Decomposition | None = None
    sign_constraint: frozenset[int] | None = None
    forbidden_witness: ForbiddenWitness | None = None


def _core_and_pendants(g: SimpleGraph, rec) -> tuple[list[int], dict[int, int]]:
    """Clique core and pendant->anchor map of a connected well-split graph."""
    core = sorted(rec.splitting.v2)
    attach = {}
    for v in sorted(rec.splitting.v1):
        nb = g.neighbors(v)
        if len(nb) != 1:
            raise RuntimeError("internal: pendant without a unique anchor")
        attach[v] = next(iter(nb))
    return core, attach


def decide_translatable(t: Text) -> Decision:
    """Full decision procedure for a text.

    Order of checks: efficiency, overlap-graph shape, then the spectral
    test on the complete core.  The returned reason is one of the OK_*
    codes or names the failed stage.
    """
    props = text_properties(t)
    if not props.efficient:
        return Decision(translatable=False, reason=REASON_NOT_EFFICIENT)
    g = graph_of_text(t)
    if not g.edges:
        return Decision(
            translatable=True, reason=REASON_OK_CLASSICAL,
            decomposition=Decomposition(
                classical_part=frozenset(range(t.n)),
                quantum_part=frozenset(), attachment={}),
            sign_constraint=None)
    rec = recognize(g)
    if rec.klass in (GraphClass.NOT_SPLIT, GraphClass.SPLIT_NOT_WELL_SPLIT):
        return Decision(translatable=False, reason=REASON_NOT_WELL_SPLIT,
                        forbidden_witness=rec.witness)
    comps = connected_components(g)
    isolated = sorted(v for c in comps if len(c) == 1 for v in c)
    big = [c for c in comps if len(c) >= 2]
    if len(big) != 1:
        raise RuntimeError("internal: a split graph with edges has one big component")
    remainder = sorted(big[0])
    sub_g, vmap = induced_subgraph(g, remainder)
    sub_rec = recognize(sub_g)
    core_local, attach_local = _core_and_pendants(sub_g, sub_rec)
    core = [vmap[v] for v in core_local]
    attach = {vmap[p]: vmap[a] for p, a in attach_local.items()}
    core_text = subtext(t, core)
    sig = hadamard_inverse_signature(core_text)
    fq = decide_fully_quantum(sig)
    decomp = Decomposition(
        classical_part=frozenset(isolated) | frozenset(attach),
        quantum_part=frozenset(core),
        attachment=dict(sorted(attach.items())))
    if not attach:
        # Remainder is a complete core; only the spectral test is left.
        if fq.translatable:
            return Decision(translatable=True, reason=REASON_OK_FULLY_QUANTUM,
                            signature=sig, decomposition=decomp,
                            sign_constraint=sig.admissible_signs)
        return Decision(translatable=False, reason=REASON_SIGNATURE_FAIL,
                        signature=sig, decomposition=decomp,
                        sign_constraint=sig.admissible_signs)
    # pendants force Q > 0 whether or not the core signature allows it
    if +1 in sig.admissible_signs:
        return Decision(translatable=True, reason=REASON_OK_MIXED,
                        signature=sig, decomposition=decomp,
                        sign_constraint=frozenset({+1}))
    return Decision(translatable=False, reason=REASON_CORE_SIGN_FAIL,
                    signature=sig, decomposition=decomp,
                    sign_constraint=frozenset({+1}))


def decide_zero_translatable(t: Text) -> Decision:
    """Decision for translations with Q = 0: exactly the classical texts.

    At Q = 0 every forced output overlap equals 1, so any non-orthogonal
    pair of distinct states is an obstruction.
    """
    props = text_properties(t)
    if props.classical:
        return Decision(
            translatable=True, reason=REASON_OK_CLASSICAL,
            decomposition=Decomposition(
                classical_part=frozenset(range(t.n)),
                quantum_part=frozenset(), attachment={}),
            sign_constraint=frozenset({0}))
    return Decision(translatable=False, reason=REASON_Q0_NOT_CLASSICAL)
