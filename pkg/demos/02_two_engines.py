"""Two independent constructions of the groups with minimal block size 2.

The descent engine walks down from Sym(2) wr H through maximal subgroups;
the layered engine builds the same groups bottom-up from F_2-submodules and
complements.  They should give the same classes.

Run: python3 demos/02_two_engines.py
"""
import time

from transcat import CatalogueStore
from transcat.classify import block2_slice, same_classes

store = CatalogueStore(seed=1)
for n in (4, 6, 8, 10):
    t = time.time()
    a = block2_slice(n, store, "descent")
    b = block2_slice(n, store, "layered")
    verdict = "agree" if same_classes(a, b) else "DIFFER"
    print(f"n={n:<3} descent {len(a):>3}  layered {len(b):>3}  {verdict}  ({time.time() - t:.1f} s)")
