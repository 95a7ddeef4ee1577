"""Janowski disks and the classical bound table.

(1 + X z)/(1 + Y z) maps the unit disk onto a disk, or onto a half-plane when
Y = -1.  The bound formulas reduce to familiar constants when n = 1, mu' = 2.
"""

import numpy as np

from janowski_lab import compute_gh, corollary_delta, janowski_image
from janowski_lab.params import region_contains
from janowski_lab.conditions import DeltaKind

for X, Y in [(1, -1), (0.5, -1), (0.5, 0), (0.8, 0.2)]:
    r = janowski_image(X, Y)
    if r.is_disk:
        print(f"X={X:4}, Y={Y:4}: disk, center {r.center.real:.4f}, radius {r.radius:.4f}")
    else:
        print(f"X={X:4}, Y={Y:4}: half-plane Re w > {r.boundary_re:.4f}")

# boundary points land on the boundary
r = janowski_image(0.8, 0.2)
print("margin at (1-X)/(1-Y):", region_contains(r, 0.2 / 0.8))

# with G = 4, H = 0 the bounds are the textbook constants
gh = compute_gh(1, 2.0)
print(f"\nG={gh.G}, H={gh.H}")
print(" lambda  order   bracket   subord")
for lam in np.linspace(0, 0.9, 4):
    row = [corollary_delta(k, lam, gh.G, gh.H) for k in (
        DeltaKind.SSTAR_PAREN_THM21, DeltaKind.SSTAR_BRACKET_LAMBDA_THM22,
        DeltaKind.SSTAR_ORDER_SUBORD_THM22)]
    print(f" {lam:5.2f}  " + "  ".join(f"{v:7.4f}" for v in row))

# a fixed second coefficient (n = 2, mu' = 1) moves the bounds
gh = compute_gh(2, 1.0)
print(f"\nG={gh.G}, H={gh.H}: order bound at lambda=0.5 is",
      round(corollary_delta(DeltaKind.SSTAR_PAREN_THM21, 0.5, gh.G, gh.H), 4))
