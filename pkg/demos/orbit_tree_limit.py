"""Interior of the critical tree converges to a fixed labeled ball.

Every vertex of the critically weighted binary tree that is at least r
layers away from both the root and the leaves sees the same radius-r
labeled ball: degree 3 everywhere, ratio 2 toward the root, 1/2 toward the
leaves.  That ball is the interior ball of a small fixed "orbit tree", and
the mass of vertices seeing it goes to 1 as the depth grows.
"""
from rnlab.scenarios import interior_ball_mass

RADIUS = 3

print(f"radius-{RADIUS} interior ball, critical weights")
print("depth    mass seeing the limit ball    1 - 8/depth")
for depth in (8, 12, 16, 24, 32, 48, 64):
    mass = interior_ball_mass(depth, RADIUS)
    print(f"{depth:5d}    {mass:26.6f}    {1 - 8 / depth:11.6f}")

print()
print("the gap to 1 is exactly 2*radius/depth: only the", 2 * RADIUS,
      "clipped layers disagree")
