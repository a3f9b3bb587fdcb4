"""Constructing translations.

Four construction routes, dispatched by `translate`:

* classical texts are cloned exactly (Q = 0, any target output);
* uniform real texts get the closed-form central translation;
* texts without orthogonal pairs get a seeded search whose first candidate
  is built from the exceptional eigenvector of the reciprocal Gram matrix;
* mixed texts translate their complete core with Q > 0 and then absorb the
  pendant states one attachment at a time; isolated states join as a free
  classical summand at the end.

All witnesses are verified with `check_witness` before being returned.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.optimize

from .texts import (
    Text,
    SizeMismatch,
    embed_text,
    subtext,
    text_properties,
    validate_text,
)
from .graphs import (
    GraphClass,
    SimpleGraph,
    connected_components,
    graph_of_text,
    induced_subgraph,
    parameterize,
    recognize,
    NotWellSplit,
)
from .classify import Decision, decide_translatable, decide_zero_translatable
from .translation import (
    TranslationWitness,
    TranslationError,
    check_witness,
    overlap_residual,
    q_from_Q,
    tablet_overlaps,
    witness_from_overlaps,
    B_FLOOR,
)

Q_START = 0.05
PENALTY_SUCCESS = 1e-16
MODULUS_CAP = 1.0 - 1e-6


class SynthError(ValueError):
    pass


class Untranslatable(SynthError):
    """The classifier refused the text; carries the Decision."""

    def __init__(self, decision: Decision):
        super().__init__(f"untranslatable: {decision.reason}")
        self.decision = decision


class SearchBudgetExhausted(SynthError):
    pass


class NotClassical(SynthError):
    pass


class NotUniformRealEfficient(SynthError):
    pass


class QTooLarge(SynthError):
    pass


class BadOverlapPattern(SynthError):
    pass


@dataclass
class SearchOutcome:
    """Result of one bounded search: a witness or one-sided failure."""

    witness: TranslationWitness | None
    best_penalty: float
    evaluations: int


def _penalty(Y: np.ndarray) -> float:
    """max(0, -lam_min)^2 plus squared modulus excesses over 1 - 1e-6."""
    lam_min = float(np.linalg.eigvalsh(Y)[0])
    p = max(0.0, -lam_min) ** 2
    n = Y.shape[0]
    for i in range(n):
        for j in range(i + 1, n):
            p += max(0.0, abs(Y[i, j]) - MODULUS_CAP) ** 2
    return p


def _forced_output(t: Text, Q: float, a: np.ndarray) -> np.ndarray | None:
    """Output Gram forced by overlaps `a` at parameter Q; None if B degenerates.

    Valid only for texts without orthogonal pairs (every entry forced).
    """
    B = 1.0 + Q * np.abs(a) ** 2
    if np.min(B) <= B_FLOOR:
        return None
    n = t.n
    Y = np.eye(n, dtype=complex)
    scale = np.sqrt(np.outer(B, B))
    for i in range(n):
        for j in range(i + 1, n):
            y = (1.0 + Q * a[i] * np.conj(a[j]) / t.gram[i, j]) / scale[i, j]
            Y[i, j] = y
            Y[j, i] = np.conj(y)
    return Y


def _span_normalize(t: Text, a: np.ndarray) -> np.ndarray:
    """Scale an overlap vector so the minimal tablet realizing it is unit."""
    coeff = np.linalg.solve(t.gram, a)
    s2 = float(np.real(np.vdot(a, coeff)))
    if s2 <= 0:
        raise TranslationError("degenerate overlap direction")
    return a / np.sqrt(s2)


def _eigen_overlaps(t: Text, sign: int) -> np.ndarray | None:
    """Overlap direction from the exceptional eigenvector of M = 1 ./ z.

    For sign(Q) = +1 the relevant eigenvector belongs to the smallest
    eigenvalue, for -1 to the largest; entrywise inversion of that vector
    makes the constraint subspace of the output Gram match the sign
    condition.  Returns None when the eigenvector has a (near-)zero entry.
    """
    M = 1.0 / t.gram
    lam, vec = np.linalg.eigh((M + M.conj().T) / 2.0)
    u = vec[:, 0] if sign > 0 else vec[:, -1]
    if np.min(np.abs(u)) < 1e-10 * np.max(np.abs(u)):
        return None
    return 1.0 / u


def _delta_schedule(start: float, max_q: float):
    """Geometric shrink from `start`, then geometric growth up to `max_q`."""
    for k in range(41):
        yield start * 0.5 ** k
    d = start * 2.0
    while d <= max_q + 1e-15:
        yield min(d, 1.0)
        d *= 2.0


def _fully_quantum_overlaps(t: Text, sign: int, start: float = Q_START,
                            max_q: float = 1.0):
    """Deterministic (Q, overlaps, Y) for a text without orthogonal pairs,
    or None when the eigenvector route does not apply."""
    a = _eigen_overlaps(t, sign)
    if a is None:
        return None
    a = _span_normalize(t, a)
    for delta in _delta_schedule(start, max_q):
        Q = sign * delta
        Y = _forced_output(t, Q, a)
        if Y is not None and _penalty(Y) <= PENALTY_SUCCESS:
            return Q, a, Y
    return None


def search_translation(t: Text, sign: int, seed: int = 0,
                       budget: int = 100000) -> SearchOutcome:
    """Bounded search for a witness with the given sign of Q.

    Never claims untranslatability: a None witness only means the budget
    ran out.  The first candidates are deterministic (the eigenvector
    construction, then a constant-overlap tablet); afterwards Nelder-Mead
    restarts from seeded random tablets minimize the infeasibility
    penalty.  Success requires penalty <= 1e-16 and a passing witness.
    """
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    props = text_properties(t)
    if not (props.efficient and props.fully_quantum):
        raise SynthError("search needs an efficient text without orthogonal pairs")
    evaluations = 0
    best = np.inf

    def try_overlaps(Q: float, a: np.ndarray):
        nonlocal evaluations, best
        evaluations += 1
        Y = _forced_output(t, Q, a)
        if Y is None:
            return None
        p = _penalty(Y)
        best = min(best, p)
        if p <= PENALTY_SUCCESS:
            w = witness_from_overlaps(t, Q, a, Y, with_unitary=True)
            rep = check_witness(t, w)
            if rep.passed:
                return w
        return None

    smart = []
    a_eig = _eigen_overlaps(t, sign)
    if a_eig is not None:
        smart.append(_span_normalize(t, a_eig))
    smart.append(_span_normalize(t, np.ones(t.n, dtype=complex)))
    for a in smart:
        for delta in _delta_schedule(Q_START, 1.0):
            if evaluations >= budget:
                return SearchOutcome(None, float(best), evaluations)
            w = try_overlaps(sign * delta, a)
            if w is not None:
                return SearchOutcome(w, float(best), evaluations)

    emb = embed_text(t, pad_extra_dim=True)
    L = emb.dim
    restart = 0
    while evaluations < budget:
        rng = np.random.default_rng([seed, restart, 20240501])
        x0 = np.concatenate([
            [Q_START * 0.7 ** restart],
            rng.standard_normal(2 * L),
        ])
        best_x = {"p": np.inf, "Q": None, "a": None}

        def fun(x):
            nonlocal evaluations, best
            evaluations += 1
            Q = sign * min(1.0, abs(x[0]))
            raw = x[1:1 + L] + 1j * x[1 + L:1 + 2 * L]
            norm = np.linalg.norm(raw)
            if norm < 1e-12:
                return 1e6
            tab = raw / norm
            a = tablet_overlaps(emb, tab)
            Y = _forced_output(t, Q, a)
            if Y is None:
                return 1e6
            p = _penalty(Y)
            best = min(best, p)
            if p < best_x["p"]:
                best_x.update(p=p, Q=Q, a=a.copy())
            return p

        scipy.optimize.minimize(
            fun, x0, method="Nelder-Mead",
            options={"maxfev": int(min(2000, budget - evaluations)),
                     "fatol": 1e-18, "xatol": 1e-12})
        if best_x["p"] <= PENALTY_SUCCESS:
            Y = _forced_output(t, best_x["Q"], best_x["a"])
            w = witness_from_overlaps(t, best_x["Q"], best_x["a"], Y,
                                      with_unitary=True)
            rep = check_witness(t, w)
            if rep.passed:
                return SearchOutcome(w, float(best), evaluations)
        restart += 1
    return SearchOutcome(None, float(best), evaluations)


def clone_classical(t: Text, target_output=None) -> TranslationWitness:
    """Exact translation of a classical text onto an arbitrary target text.

    Q = 0, the tablet sits in the fresh padded coordinate, and the output
    Gram is free to be any valid text of the same size (default: the input
    itself).  The overlap residual is exactly zero.
    """
    props = text_properties(t)
    if not props.classical:
        raise NotClassical("cloning requires a classical text")
    if target_output is None:
        target = t
    elif isinstance(target_output, Text):
        target = target_output
    else:
        target = validate_text(target_output)
    if target.n != t.n:
        raise SizeMismatch(f"target has {target.n} states, text has {t.n}")
    overlaps = np.zeros(t.n, dtype=complex)
    return witness_from_overlaps(t, 0.0, overlaps, target.gram, with_unitary=True)


def central_translate_uniform(t: Text, eps_overlap: float = 0.25) -> TranslationWitness:
    """Closed-form translation of a uniform real efficient text.

    The tablet has the same overlap c with every state, so the output is
    uniform with y = (1 + Q c^2 / z) / (1 + Q c^2), feasible for small |Q|
    of sign -sign(z).
    """
    props = text_properties(t)
    if t.n < 2 or props.classical or not (props.uniform and props.real_text
                                          and props.efficient):
        raise NotUniformRealEfficient(
            "central translation needs a uniform real efficient text with z != 0")
    n = t.n
    z = float(t.gram[0, 1].real)
    sigma = 1.0 + (n - 1) * z
    c = min(float(eps_overlap), 0.8 * np.sqrt(sigma / n))
    overlaps = np.full(n, c, dtype=complex)
    sign = -1.0 if z > 0 else 1.0
    for delta in _delta_schedule(Q_START, 1.0):
        Q = sign * delta
        B = 1.0 + Q * c * c
        if B <= B_FLOOR:
            continue
        y = (1.0 + Q * c * c / z) / B
        if abs(y) > MODULUS_CAP or min(1.0 + (n - 1) * y, 1.0 - y) < 1e-12:
            continue
        Y = np.full((n, n), complex(y))
        np.fill_diagonal(Y, 1.0)
        return witness_from_overlaps(t, Q, overlaps, Y, with_unitary=True)
    raise SynthError("no feasible Q found for the central translation")


def attach_classical(base_witness: TranslationWitness, base_text: Text,
                     phi_overlaps, anchor: int) -> TranslationWitness:
    """Extend a witness by one state orthogonal to all but one current state.

    phi_overlaps[k] = <phi|psi_k> must vanish except at `anchor`.  The new
    tablet is alpha * psi_0 + beta * (phi - P phi), with alpha fixed by
    unit norm and beta by <phi|psi_0'> = 0; the parameter grows to
    Q' = Q / alpha^2, so Q must have been small enough to keep Q' <= 1.
    The enlarged text is the base text with phi appended last.
    """
    n = base_text.n
    row = np.asarray(phi_overlaps, dtype=complex)
    if row.shape != (n,):
        raise BadOverlapPattern(f"expected {n} overlaps, got {row.shape}")
    if not (0 <= anchor < n):
        raise BadOverlapPattern(f"anchor {anchor} out of range")
    nz = [k for k in range(n) if abs(row[k]) > 1e-9]
    if nz != [anchor]:
        raise BadOverlapPattern(
            f"new state must overlap exactly the anchor; nonzero at {nz}")
    Q2 = base_witness.Q
    if not Q2 > 0:
        raise SynthError("attachment requires a base witness with Q > 0")

    gram_new = np.zeros((n + 1, n + 1), dtype=complex)
    gram_new[:n, :n] = base_text.gram
    gram_new[n, :n] = row
    gram_new[:n, n] = row.conj()
    gram_new[n, n] = 1.0
    t_new = validate_text(gram_new)

    emb_base = embed_text(base_text, pad_extra_dim=(
        len(base_witness.tablet) == embed_text(base_text).dim + 1))
    o_old = tablet_overlaps(emb_base, np.asarray(base_witness.tablet, dtype=complex))

    emb_new = embed_text(t_new, pad_extra_dim=True)
    span = emb_new.vectors[:-1, :]
    E_old = span[:, :n]
    phi = span[:, n]
    G2 = base_text.gram
    coeff = np.linalg.solve(G2, o_old)
    tau_span = E_old @ coeff
    s2_old = float(np.real(np.vdot(o_old, coeff)))
    pad_old = np.sqrt(max(0.0, 1.0 - s2_old))
    v = phi - E_old @ np.linalg.solve(G2, gram_new[:n, n])
    rho2 = float(np.real(np.vdot(v, v)))
    if rho2 <= 1e-12:
        raise TranslationError("new state lies in the span of the base text")
    g = complex(np.vdot(phi, tau_span))
    alpha = 1.0 / np.sqrt(1.0 + abs(g) ** 2 / rho2)
    beta = -alpha * g / rho2
    Q_new = Q2 / alpha ** 2
    if Q_new > 1.0 + 1e-12:
        raise QTooLarge(f"Q grows to {Q_new:.6f} > 1 at this attachment")
    Q_new = min(Q_new, 1.0)

    tablet = np.concatenate([alpha * tau_span + beta * v, [alpha * pad_old]])
    tablet = tablet / np.linalg.norm(tablet)
    o_new = tablet_overlaps(emb_new, tablet)
    B_anchor = 1.0 + Q2 * abs(o_old[anchor]) ** 2

    Y2 = np.asarray(base_witness.output_gram, dtype=complex)
    Y_new = np.zeros((n + 1, n + 1), dtype=complex)
    Y_new[:n, :n] = Y2
    Y_new[n, :n] = Y2[anchor, :] / np.sqrt(B_anchor)
    Y_new[:n, n] = Y_new[n, :n].conj()
    Y_new[n, n] = 1.0

    b_new = 1.0 + Q_new * np.abs(o_new) ** 2
    return TranslationWitness(
        Q=float(Q_new), q=q_from_Q(Q_new), tablet=tablet, output_gram=Y_new,
        b=b_new, unitary=None,
        residuals={"eq4": overlap_residual(t_new, float(Q_new), o_new, Y_new),
                   "eq2": None})


def _scatter_witness(t: Text, order: list[int], w_local: TranslationWitness,
                     with_unitary: bool = True) -> TranslationWitness:
    """Spread a witness on subtext(t, order) over the full text.

    States outside `order` must be orthogonal to everything; they keep
    zero tablet overlap and get fresh orthonormal outputs.
    """
    t_local = subtext(t, order)
    emb_local = embed_text(t_local, pad_extra_dim=(
        len(w_local.tablet) == embed_text(t_local).dim + 1))
    o_local = tablet_overlaps(emb_local, np.asarray(w_local.tablet, dtype=complex))
    o_full = np.zeros(t.n, dtype=complex)
    o_full[order] = o_local
    Y_full = np.eye(t.n, dtype=complex)
    Y_full[np.ix_(order, order)] = w_local.output_gram
    return witness_from_overlaps(t, w_local.Q, o_full, Y_full,
                                 with_unitary=with_unitary)


def _mixed_witness(t: Text, core: list[int], pendants: list[int],
                   attachment: dict[int, int]) -> tuple[list[int], TranslationWitness]:
    """Chain of attachments over the core witness, shrinking Q on overflow."""
    t_core = subtext(t, core)
    start = Q_START
    for _ in range(60):
        base = _fully_quantum_overlaps(t_core, +1, start=start, max_q=start)
        if base is None:
            raise SearchBudgetExhausted(
                "no positive-Q witness found for the complete core")
        Q2, a2, Y2 = base
        w_cur = witness_from_overlaps(t_core, Q2, a2, Y2, with_unitary=False)
        order = list(core)
        t_cur = t_core
        try:
            for p in pendants:
                anchor_pos = order.index(attachment[p])
                w_cur = attach_classical(w_cur, t_cur, t.gram[p, order], anchor_pos)
                order.append(p)
                t_cur = subtext(t, order)
            rep = check_witness(t_cur, w_cur)
            if rep.passed:
                return order, w_cur
        except QTooLarge:
            pass
        start /= 2.0
    raise SearchBudgetExhausted("attachment chain kept overflowing Q = 1")


def translate(t: Text, seed: int = 0, budget: int = 100000,
              force_sign: int | None = None, q0: bool = False) -> TranslationWitness:
    """Decide, construct, and verify a translation of a text.

    Raises Untranslatable(decision) when the classifier refuses, and
    SearchBudgetExhausted when a positive decision fails to produce a
    verified witness within the budget (which never happens for the
    classifier's own sign choices in practice).  With q0=True only
    classical texts are accepted and the clone construction is used.
    """
    if q0:
        d = decide_zero_translatable(t)
        if not d.translatable:
            raise Untranslatable(d)
        return clone_classical(t)
    decision = decide_translatable(t)
    if not decision.translatable:
        raise Untranslatable(decision)
    props = text_properties(t)
    if props.classical:
        if force_sign is None:
            return clone_classical(t)
        # any sign works on an orthogonal family: a tablet orthogonal to
        # every state leaves all output overlaps free
        w = witness_from_overlaps(t, force_sign * Q_START,
                                  np.zeros(t.n, dtype=complex),
                                  np.eye(t.n, dtype=complex),
                                  with_unitary=True)
        report = check_witness(t, w)
        if not report.passed:
            raise SearchBudgetExhausted("forced-sign clone failed to verify")
        return w
    decomp = decision.decomposition
    pendants = sorted(decomp.attachment)
    core = sorted(decomp.quantum_part)
    isolated = sorted(decomp.classical_part - set(decomp.attachment))
    remainder = sorted(set(core) | set(pendants))

    if not pendants:
        t_R = subtext(t, remainder)
        props_R = text_properties(t_R)
        signs = decision.sign_constraint or frozenset({+1, -1})
        if force_sign is not None:
            signs = frozenset({force_sign})
        w_R = None
        if props_R.uniform and props_R.real_text and force_sign is None:
            w_R = central_translate_uniform(t_R)
        else:
            last = None
            for sign in sorted(signs, reverse=True):
                last = search_translation(t_R, sign, seed=seed, budget=budget)
                if last.witness is not None:
                    w_R = last.witness
                    break
            if w_R is None:
                raise SearchBudgetExhausted(
                    f"search failed; best penalty {last.best_penalty:.3e} "
                    f"after {last.evaluations} evaluations")
        if not isolated:
            if w_R.unitary is None:
                w_R = witness_from_overlaps(
                    t_R, w_R.Q,
                    tablet_overlaps(embed_text(t_R, pad_extra_dim=True), w_R.tablet),
                    w_R.output_gram, with_unitary=True)
            final = w_R
        else:
            final = _scatter_witness(t, remainder, w_R, with_unitary=True)
    else:
        if force_sign is not None and force_sign != +1:
            raise SearchBudgetExhausted(
                "texts with pendant states only admit Q > 0")
        order, w_chain = _mixed_witness(t, core, pendants, decomp.attachment)
        full_order = order  # core then pendants, in attachment order
        final = _scatter_witness(t, full_order, w_chain, with_unitary=True)

    report = check_witness(t, final)
    if not report.passed:
        raise SearchBudgetExhausted(
            f"constructed witness failed verification: r1={report.r1:.3e}, "
            f"r2_ok={report.r2_ok}, r3={report.r3}")
    final.residuals = {"eq4": report.r1, "eq2": report.r3}
    return final


@dataclass
class RealizeResult:
    text: Text
    witness: TranslationWitness


def realize_graph(g: SimpleGraph, seed: int = 0) -> RealizeResult:
    """A translatable text whose overlap graph equals `g` exactly, plus its
    witness with 0 < Q <= 1.

    Clique states share a negative overlap z, each pendant overlaps its
    anchor only, and isolated vertices become orthogonal summands.  The
    construction is deterministic; `seed` is accepted for interface
    stability but unused.
    """
    del seed
    rec = recognize(g)
    if rec.klass not in (GraphClass.INDEPENDENT, GraphClass.WELL_SPLIT):
        raise NotWellSplit(f"graph is {rec.klass.value}")
    comps = connected_components(g)
    big = [c for c in comps if len(c) >= 2]
    if not big:
        t = validate_text(np.eye(g.n, dtype=complex))
        w = witness_from_overlaps(t, 1.0, np.zeros(g.n, dtype=complex),
                                  np.eye(g.n, dtype=complex), with_unitary=True)
        return RealizeResult(text=t, witness=w)
    if len(big) > 1:
        raise NotWellSplit("internal: several non-trivial components")
    comp = sorted(big[0])
    sub_g, vmap = induced_subgraph(g, comp)
    shape = parameterize(sub_g)
    clique_local = sorted((v for v in shape.labels if shape.labels[v].startswith("w")),
                          key=lambda v: int(shape.labels[v][1:]))
    pends_local: dict[int, list[int]] = {}
    for v, lab in shape.labels.items():
        if lab.startswith("v"):
            i = int(lab[1:].split(",")[0])
            pends_local.setdefault(i, []).append(v)
    n2 = shape.n2
    k = sub_g.n

    z = -min(0.1, 0.5 / max(1, n2 - 1))
    for _ in range(60):
        zi = 0.3
        gram_local = None
        for _ in range(60):
            cand = np.eye(k, dtype=complex)
            for a in range(n2):
                for b in range(a + 1, n2):
                    cand[clique_local[a], clique_local[b]] = z
                    cand[clique_local[b], clique_local[a]] = z
            for i, vs in pends_local.items():
                w_i = clique_local[i - 1]
                for v in vs:
                    cand[v, w_i] = zi
                    cand[w_i, v] = zi
            if np.linalg.eigvalsh(cand)[0] > 1e-4:
                gram_local = cand
                break
            zi *= 0.5
        if gram_local is None:
            z *= 0.5
            continue
        tval = np.sqrt(-z)
        o_local = np.zeros(k, dtype=complex)
        o_local[clique_local] = tval
        s2 = float(np.real(np.vdot(o_local, np.linalg.solve(gram_local, o_local))))
        if s2 > 0.81:
            z *= 0.5
            continue
        break
    else:
        raise SynthError("could not realize the graph with a feasible overlap scale")

    Y_local = np.eye(k, dtype=complex)
    inv_b = 1.0 / (1.0 - z)  # B at every anchor is 1 + Q * t^2 = 1 - z
    for i, vs in pends_local.items():
        w_i = clique_local[i - 1]
        for v in vs:
            Y_local[v, w_i] = Y_local[w_i, v] = np.sqrt(inv_b)
        for a in range(len(vs)):
            for b in range(a + 1, len(vs)):
                Y_local[vs[a], vs[b]] = Y_local[vs[b], vs[a]] = inv_b

    gram_full = np.eye(g.n, dtype=complex)
    gram_full[np.ix_(comp, comp)] = gram_local
    o_full = np.zeros(g.n, dtype=complex)
    o_full[comp] = o_local
    Y_full = np.eye(g.n, dtype=complex)
    Y_full[np.ix_(comp, comp)] = Y_local

    text = validate_text(gram_full)
    if graph_of_text(text) != g:
        raise SynthError("internal: realized text has the wrong overlap graph")
    witness = witness_from_overlaps(text, 1.0, o_full, Y_full, with_unitary=True)
    report = check_witness(text, witness)
    if not report.passed:
        raise SynthError("internal: realized witness failed verification")
    witness.residuals = {"eq4": report.r1, "eq2": report.r3}
    return RealizeResult(text=text, witness=witness)
