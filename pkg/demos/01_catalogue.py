"""Build the catalogue of transitive groups of degree 8 and look around in it.

Run: python3 demos/01_catalogue.py
"""
from collections import Counter

from transcat import CatalogueStore
from transcat.perm import format_cycles

store = CatalogueStore(seed=1)  # in memory; pass a directory to keep catalogues
cat = store.get(8)
print(f"degree 8: {len(cat)} transitive groups, {cat.minimal_count} minimal transitive")

# how the groups split by the block size of their signature (P = primitive)
split = Counter("P" if e.signature is None else f"k={e.signature.k}" for e in cat)
print("by signature:", dict(sorted(split.items())))

print("\nminimal transitive groups:")
for e in cat:
    if e.minimal:
        gens = ", ".join(format_cycles(g) for g in e.group.generators)
        print(f"  8/{e.index:<3} order {e.order:<4} {gens}")
# the order-32 entry above is the one that makes m(8) = 6 rather than 5

print("\nfirst lines of the catalogue file:")
print("\n".join(cat.text().splitlines()[:8]))
