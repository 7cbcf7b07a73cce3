# The naive causal construction: push a null curve through a twistor map and
# read the image direction off the recovered lam.  Two curves with the same
# point and tangent give different image directions once the map is quadratic.
from twistor_morphisms import demonstrate_nonlocality, random_map

for kind in ("degree1", "degree2"):
    for seed in range(3):
        rep = demonstrate_nonlocality(random_map(kind, seed), seed)
        print(f"{kind} seed {seed}: 1-jet gap {rep.one_jet_gap:.1e}, "
              f"image point gap {rep.point_gap:.1e}, direction gap {rep.direction_distance:.3e}")
