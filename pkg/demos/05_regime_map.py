"""Map of the (p, t) plane at q = 2: where estimates fail, hold, or are open.

Each cell is classified against two closed-form thresholds:
t* = log((1+D)/(1-D)) with D = 1/p - 1/q (below it the restricted
estimates fail), and p* = 1 + e^{-2t} (above it the unrestricted
L^p -> L^2 estimates hold).  The strip between them is genuinely open.
"""

import numpy as np

from mehler import regime_map

p_grid = np.linspace(1.05, 1.95, 10)
t_grid = np.linspace(0.1, 2.0, 20)
result = regime_map(p_grid, [2.0], t_grid)

symbols = {
    "fails_restricted": "F",
    "holds_unrestricted": "H",
    "conjectured_extension": "c",
    "unknown": ".",
}

counts: dict[str, int] = {}
for cell in result.cells:
    counts[cell.regime] = counts.get(cell.regime, 0) + 1

print("rows: p ascending; columns: t ascending "
      "(F fails restricted, H holds unrestricted, . unknown)\n")
header = "  p \\ t " + " ".join(f"{t:4.1f}" for t in t_grid)
print(header)
by_p = {}
for cell in result.cells:
    by_p.setdefault(cell.p, {})[cell.t] = symbols[cell.regime]
for p in sorted(by_p):
    row = " ".join(f"{by_p[p][t]:>4}" for t in sorted(by_p[p]))
    print(f"  {p:5.2f} {row}")

print("\ncounts:", counts)
print("\nthe cell (p, q, t) = (1.05, 2, 1.2) sits strictly between the "
      "thresholds:")
cell = [c for c in result.cells
        if abs(c.p - 1.05) < 1e-9 and abs(c.t - 1.2) < 1e-9][0]
print(f"  t* = {cell.t_star:.6f} < t = {cell.t:.6f}, but "
      f"p = {cell.p} < p* = {cell.p_nelson:.6f}  ->  {cell.regime}")
