"""How fast the discretized problem grows.

Prints a few partition-size and credal-size bounds, then walks along
eps + delta = 0.2 to show where the credal bound is smallest.
"""

from credalapprox import credal_size_bound, gamma_curve, partition_size_bound

print("log10 cells, |D|=4:", [round(partition_size_bound(e, 4), 1) for e in (0.2, 0.1, 0.05)])
print("log10 charges, 16 cells:", [round(credal_size_bound(16, d), 1) for d in (0.2, 0.1, 0.05)])

curve = gamma_curve(0.2, 2, [i / 100 for i in range(5, 20)])
best = min(curve, key=lambda p: p[1])
for eps, v in curve:
    print(f"eps={eps:.2f}  log10 bound={v:9.2f}{'  <- minimum' if (eps, v) == best else ''}")
