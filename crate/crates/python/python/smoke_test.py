"""Smoke test for the compiled extension: python python/smoke_test.py"""

import rootfacet

g2 = rootfacet.positive_roots("G2")
assert len(g2) == 6, g2

sets = rootfacet.triangulate("A3", 2)
assert sorted(map(sorted, sets)) == [
    [[0, 1, 0], [0, 1, 1], [1, 1, 0]],
    [[0, 1, 1], [1, 1, 0], [1, 1, 1]],
], sets
assert sorted(abs(d) for d in rootfacet.simplex_dets("A3", 2)) == [1, 1]

rep = rootfacet.verify("A3", 2)
assert rep["verdict"] == "pass" and rep["oracle_volume"] == 2, rep

assert [f["alpha"] for f in rootfacet.facets("B4")] == [1, 4]
assert rootfacet.orbit_size("E7", 7) == 56

inv = rootfacet.boundary_inventory("A2")
assert inv["total_simplices"] == 6, inv

try:
    rootfacet.triangulate("B4", 2)
except ValueError as e:
    assert "facet" in str(e)
else:
    raise AssertionError("B4 α2 is not a facet")

print("smoke test passed")
