#!/usr/bin/env python3
"""Texts, validation, and structural properties.

A text is an ordered family of N distinct unit states, carried around
purely as its N x N Gram matrix of pairwise inner products.  This demo
builds a few texts, shows which validation rules fire on malformed input,
and recovers explicit state vectors from a Gram matrix.
"""

import numpy as np

from qtext import (
    TextError,
    embed_text,
    gram_of,
    null_index_set,
    text_properties,
    texts_equivalent,
    validate_text,
)

np.set_printoptions(precision=4, suppress=True)


def show(title, gram):
    print(f"\n-- {title}")
    t = validate_text(gram)
    p = text_properties(t)
    flags = [name for name in ("classical", "fully_quantum", "efficient",
                               "uniform", "real_text") if getattr(p, name)]
    print(t.gram.real if p.real_text else t.gram)
    print("properties:", ", ".join(flags) or "(none)")
    print("orthogonal pairs:", sorted(null_index_set(t)) or "(none)")
    return t


print("=== valid texts ===")

show("classical 3-text (identity Gram)", np.eye(3))

uniform = np.full((3, 3), 0.5) + 0.5 * np.eye(3)
t_uniform = show("uniform 3-text, z = 1/2", uniform)

mixed = np.eye(4, dtype=complex)
mixed[0, 1] = mixed[1, 0] = 0.6
mixed[1, 2] = 0.3 + 0.2j
mixed[2, 1] = 0.3 - 0.2j
show("mixed 4-text (a path of overlaps)", mixed)

print("\n=== invalid inputs ===")
bad = {
    "non-hermitian": np.array([[1.0, 0.5], [0.4, 1.0]]),
    "off-unit diagonal": np.array([[1.0, 0.2], [0.2, 0.9]]),
    "duplicate states": np.array([[1.0, 1.0], [1.0, 1.0]]),
    "not PSD": np.array([[1.0, 0.9, -0.9],
                         [0.9, 1.0, 0.9],
                         [-0.9, 0.9, 1.0]]),
}
for label, gram in bad.items():
    try:
        validate_text(gram)
        print(f"{label:20s} unexpectedly accepted")
    except TextError as exc:
        print(f"{label:20s} rejected: {type(exc).__name__}: {exc}")

print("\n=== embeddings ===")
emb = embed_text(t_uniform)
print(f"state vectors for the uniform text (dim {emb.dim}):")
print(emb.vectors.real.round(4))
print("Gram reproduced to", np.abs(gram_of(emb.vectors) - t_uniform.gram).max())

# states are only determined up to a global unitary and per-state phases;
# equivalence compares Gram matrices modulo those phases
phases = np.exp(1j * np.array([0.3, -1.2, 2.5]))
rotated = phases[:, None] * t_uniform.gram * phases.conj()[None, :]
print("phase-rotated copy equivalent:",
      texts_equivalent(t_uniform, validate_text(rotated)))
