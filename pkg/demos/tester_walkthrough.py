"""One-sided property testing from sampled balls.

The tester samples roots through the oracle, inspects each labeled ball for
a forbidden pattern, and rejects when the violating fraction clears the
threshold.  Members can never be rejected: their balls are induced subgraphs
of a member, and the properties are closed under subgraphs.
"""
from rnlab import gen_cycle, gen_disjoint_triangles, gen_path
from rnlab.distances import PropertySpec
from rnlab.testers import observable_test, test_property

FOREST = PropertySpec.forest()
BIPARTITE = PropertySpec.bipartite()

print("graph            property   eps   verdict  violating fraction")
for name, G, P, eps in [
    ("path of 60", gen_path(60), FOREST, 0.3),
    ("C_6", gen_cycle(6), FOREST, 0.3),
    ("C_10000", gen_cycle(10_000), FOREST, 0.2),
    ("8 triangles", gen_disjoint_triangles(8), BIPARTITE, 0.3),
]:
    v = test_property(G, P, eps, seed=0)
    print(f"{name:<16} {P.id:<10} {eps:<5} {v.verdict:<8} {v.violating_fraction:.3f}")

print()
print("C_10000 is accepted as a forest and rightly so: it is 0.0002-close,")
print("and no radius-6 ball can tell it from a long path")

print()
v = test_property(gen_cycle(6), FOREST, 0.3, seed=0)
print("evidence for the C_6 rejection (canonical ball key -> count, violates):")
for key, (count, flag) in v.evidence.items():
    print(f"  {key[:24]}...  count {count}, violates {flag}")
print("recomputing the verdict from stored evidence:", v.recompute())

print()
print("observable tester, eps=0.2: verdict from induced cycle lengths alone")
for n in (3, 6, 10, 11, 12, 30):
    print(f"  C_{n:<3d} {observable_test(gen_cycle(n), FOREST, 0.2).verdict}")
print("cycles up to the observation depth (11 here) are visible and rejected;")
print("C_12 and longer look like forests to every bounded observation")
