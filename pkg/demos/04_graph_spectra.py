#!/usr/bin/env python3
"""Spectral sensitivity: how the interaction graph's expansion shows up
in mixing bounds and in proven trail resistance."""

from egc128.graphs import build_topology, spectral_report
from egc128.trails import bound_series

print("=" * 70)
print("Four 64-vertex interaction-graph variants")
print("=" * 70)

variants = [
    ("baseline", None),
    ("random3regular", 2024),
    ("poor_expander", None),
    ("irregular34", None),
]

print(f"\n{'variant':<16} {'gap':>7} {'diam':>5} {'mix(ln)':>8}  "
      f"{'linear min-active, rounds 1-4':<28}")
for name, seed in variants:
    g = build_topology(name, 64, seed)
    rep = spectral_report(g)
    lin = bound_series("linear", 4, g)
    print(f"{name:<16} {rep.spectral_gap:>7.3f} {rep.diameter:>5} "
          f"{rep.mixing_bound.natural:>8.1f}  {str(list(lin.min_active)):<28}")

print("""
Reading the table:
 * the near-cycle graph (offsets -1,+1,+2) has a collapsed spectral gap
   and a mixing bound roughly three times worse than the baseline;
 * a random 3-regular graph can have a larger gap yet weaker proven
   trail bounds: the +16 chord's immediate long reach matters beyond
   what the scalar gap captures;
 * adding one long chord per vertex (the degree-4 variant) buys larger
   bounds at extra hardware cost, while keeping the same gap.
""")

cyc = spectral_report(build_topology("cycle", 64))
print(f"degenerate 2-regular cycle for scale: gap {cyc.spectral_gap:.4f}, "
      f"diameter {cyc.diameter}")
