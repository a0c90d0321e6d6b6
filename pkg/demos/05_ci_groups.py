"""Cayley sets versus Cayley graphs: which small groups are CI.

A group is CI when isomorphic Cayley graphs always come from connection sets
related by a group automorphism; equivalently the number of connection sets
up to automorphism equals the number of Cayley graphs up to isomorphism.

Run: python3 demos/05_ci_groups.py
"""
from transcat.ci import ci_census, minimal_non_ci
from transcat.seeds import small_groups

reports = ci_census(12)

names = {sg.id: sg.name for n in range(1, 13) for sg in small_groups(n)}
for gid, r in sorted(reports.items()):
    if not r.ci:
        print(f"{names[gid]:<8} {gid}: {r.sets} sets but {r.graphs} graphs; witness {' '.join(r.witness_graph6)}")

print("minimal non-CI up to order 12:", [names[g] for g in minimal_non_ci(reports, 12)])
# D8 shows up here: Cay(D8,{r^2}) and Cay(D8,{s}) are both four disjoint edges,
# yet no automorphism moves the central r^2 to the non-central s.
