#!/usr/bin/env python3
"""Text generators and the brute-force feasibility oracle.

The generators produce seeded test corpora: generic efficient texts,
uniform ones, texts with a prescribed overlap graph, and the rejection
sampler for the 4-state untranslatable frontier.  The oracle searches for
a feasible (Q, tablet) pair by random sampling only; it knows nothing
about the spectral decision rule, which makes it a useful independent
referee for the classifier.
"""

import numpy as np

from qtext import (
    GenSpec,
    SimpleGraph,
    decide_translatable,
    gen_text,
    graph_of_text,
    oracle_feasible,
    text_properties,
)

np.set_printoptions(precision=4, suppress=True)

print("=== generator modes ===")
specs = [
    GenSpec(mode="random_efficient", n=4, seed=7),
    GenSpec(mode="uniform", n=4, seed=7),
    GenSpec(mode="from_graph", seed=7,
            graph=SimpleGraph(4, frozenset({(0, 1), (1, 2), (2, 3)}))),
    GenSpec(mode="untranslatable4", seed=7),
]
for spec in specs:
    t = gen_text(spec)
    p = text_properties(t)
    flags = [f for f in ("classical", "fully_quantum", "efficient",
                         "uniform") if getattr(p, f)]
    print(f"{spec.mode:18s} n={t.n}  {', '.join(flags)}")
    print(f"{'':18s} edges: {sorted(graph_of_text(t).edges)}")

print("\n=== oracle vs classifier on a small batch ===")
agree = 0
for seed in range(12):
    t = gen_text(GenSpec(mode="random_efficient", n=3, seed=seed))
    d = decide_translatable(t)
    probe = oracle_feasible(t, samples=20000, seed=seed)
    mark = "agree" if probe.found == d.translatable else "DISAGREE"
    agree += probe.found == d.translatable
    print(f"seed {seed:2d}: classifier={str(d.translatable):5s} "
          f"oracle={str(probe.found):5s} "
          f"Q={probe.accepted_Q[0] if probe.found else float('nan'):+.3f} "
          f"[{mark}]")
print(f"{agree}/12 agree")

print("\n=== sampling the sign of Q ===")
t = gen_text(GenSpec(mode="uniform", n=3, seed=1, z=0.5))
probe = oracle_feasible(t, samples=50000, seed=3, keep_all=True)
Qs = np.array(probe.accepted_Q)
print(f"uniform text with z = +0.5: {len(Qs)} accepted samples, "
      f"Q range [{Qs.min():+.3f}, {Qs.max():+.3f}]")
print("every accepted Q is negative:", bool((Qs < 0).all()))

t = gen_text(GenSpec(mode="uniform", n=3, seed=1, z=-0.3))
probe = oracle_feasible(t, samples=50000, seed=3, keep_all=True)
Qs = np.array(probe.accepted_Q)
print(f"uniform text with z = -0.3: {len(Qs)} accepted samples, "
      f"Q range [{Qs.min():+.3f}, {Qs.max():+.3f}]")
print("every accepted Q is positive:", bool((Qs > 0).all()))
