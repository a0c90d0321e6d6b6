"""Vertex-transitive graphs on 10 vertices and the two that are not Cayley graphs.

Every vertex-transitive graph is a union of orbitals of some minimal transitive
group, so the census only looks at the minimal entries of the catalogue.

Run: python3 demos/03_petersen.py
"""
import numpy as np

from transcat import CatalogueStore
from transcat.canon import canonical_form, from_graph6
from transcat.graphs import transitive_graph_census

store = CatalogueStore(seed=1)
census = transitive_graph_census(10, store.get(10))
print(f"order 10: t = {census.t} vertex-transitive graphs, c = {census.c} of them Cayley")

petersen = canonical_form(from_graph6("IheA@GUAo"))
for D in census.graphs:
    if not D.cayley:
        deg = int(D.adjacency.sum(axis=1)[0])
        name = "Petersen graph" if D.canonical == petersen else "complement of the Petersen graph"
        print(f"  non-Cayley: {D.text()}  valency {deg}  ({name})")

degrees = sorted({int(D.adjacency.sum(axis=1)[0]) for D in census.graphs})
print("valencies that occur:", degrees)
