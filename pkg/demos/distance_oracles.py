"""How far is a graph from a property, and who gets to pick the weights.

distance_to_property charges each deleted edge the probability mass of its
endpoints, so the answer depends on the vertex distribution.  The absolute
distance is the worst case over every distribution whose edge ratios stay
within K, solved exactly as a rational max-min program.
"""
from fractions import Fraction

from rnlab import build_graph, gen_cycle
from rnlab.distances import (
    PropertySpec,
    absolute_distance,
    distance_to_property,
    n_epsilon_cycles,
)

FOREST = PropertySpec.forest()

print("uniform cycles: one edge must go, and it costs 2/n")
for n in (3, 4, 6, 8, 12):
    d = distance_to_property(gen_cycle(n), FOREST)
    print(f"  C_{n:<2d}  dist to forest = {d:.6f}   (2/n = {2 / n:.6f})")

# triangle with a pendant vertex: an adversary moves mass onto the triangle
edges = [(0, 1), (1, 2), (0, 2), (2, 3)]
for K in (1, 2, 4):
    val, p = absolute_distance(
        build_graph(edges, [0.0] * 4, d=3, K=float(K)), FOREST, K=K, exact=True
    )
    print(f"K={K}: absolute distance {val} attained at p = {[str(x) for x in p]}")
print("at K=1 the distribution is pinned uniform; with room to skew (K=4)")
print("the adversary drains the pendant vertex and the distance rises to 8/13")

assert absolute_distance(
    build_graph(edges, [0.0] * 4, d=3, K=4.0), FOREST, K=4, exact=True
)[0] == Fraction(8, 13)

print()
print("cycle length needed to be epsilon-close to a forest for every K:")
for eps in (0.2, 0.25, 0.5, 1 / 20):
    print(f"  epsilon={eps:<5}  n >= {n_epsilon_cycles(eps)}")
