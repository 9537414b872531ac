"""
Layer concentration on weighted binary trees
============================================

A depth-20 binary tree with layer weights exp(-beta * k) is sampled through
the root oracle.  Small beta pushes the sampled vertex toward the leaves
(there are more of them), large beta toward the root (each level up is
heavier).  At beta = ln 2 the two effects cancel and every layer is equally
likely.
"""
import math

import numpy as np

from rnlab import gen_binary_tree
from rnlab.oracles import RadonNikodymOracle

DEPTH = 20
BUDGET = 200_000

for beta in (0.0, 0.3, math.log(2), 1.0, 2 * math.log(2)):
    tree = gen_binary_tree(DEPTH, beta, representation="implicit")
    oracle = RadonNikodymOracle(tree, r=0, t=2, seed=11)
    roots = oracle.sample_roots(BUDGET)
    # heap indexing: vertex v sits on layer floor(log2(v+1))
    layers = np.frexp(roots.astype(np.float64) + 1.0)[1] - 1
    freq = np.bincount(layers, minlength=DEPTH) / BUDGET
    bars = "".join("#" if f > 1.5 / DEPTH else "." if f < 0.5 / DEPTH else "=" for f in freq)
    print(f"beta={beta:5.3f}  layers 0..19: {bars}   leaf share {freq[-1]:.3f}")

print()
print("legend: '#' layer oversampled, '=' near uniform, '.' starved")
print("the '=' band across all layers appears exactly at beta = ln 2 = 0.693")
