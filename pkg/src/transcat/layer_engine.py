"""Transitive groups with small minimal blocks, built layer by layer.

For a transitive top group T of degree m and block size k in {2, 3, 4}, every
group G ≤ Sym(k) wr T projecting onto T is reached by peeling the layers of the
local series from the top: at each step the current group X acts on the next
layer K (an F_p-module), and the groups below X that still cover X modulo K
are given by an invariant submodule M of K together with a complement class
of K/M, i.e. an element of H^1(X, K/M).  At the first step submodules are
only taken up to the normalizer of T.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
import numpy as np

from . import linalg
from .blocks import lift_top, minimal_block_size
from .conjugacy import conjugates_of, unique_up_to_conjugacy
from .layers import (Layer, LayerModule, complement_classes, kernel_module, local_chain,
                     module_matrices, section, submodules)
from .perm import PermGroup, symmetric_group

log = logging.getLogger(__name__)

NORMALIZER_DEGREE_BOUND = 9


@dataclass
class ExtensionTask:
    """Complements of K/M in X/M, where K is one layer of the base group."""
    top: PermGroup  # the acting group X (a complement to K)
    layer: Layer
    M: np.ndarray  # rref basis of an X-invariant subspace of the layer

    def check(self) -> bool:
        mats = module_matrices(self.layer, self.top.generators)
        p = self.layer.p
        return all(linalg.is_subspace((self.M @ A) % p, self.M, p) for A in mats)


def complements_mod_H1(task: ExtensionTask) -> list[PermGroup]:
    """One group per conjugacy class of complements of K/M, lifted to degree k*m."""
    layer = task.layer
    sd = section(layer, layer.basis_perms, [])
    gens = list(task.top.generators)
    return complement_classes(sd, gens, gens, task.M)


def normalizer_in_symmetric(T: PermGroup) -> PermGroup:
    """N_Sym(m)(T) by testing every permutation of the m points."""
    m = T.degree
    if m > NORMALIZER_DEGREE_BOUND:
        raise ValueError("normalizer search is limited to small degrees")
    S = symmetric_group(m)
    E = S.elements_array()
    ok = np.ones(len(E), dtype=bool)
    for t in T.generators:
        idx = np.nonzero(ok)[0]
        ok[idx[T.rank(conjugates_of(t, E[idx])) < 0]] = False
    gens = [tuple(int(v) for v in row) for row in E[ok]]
    # a short generating set: greedily add elements outside the current span
    cur = PermGroup(m, list(T.generators))
    chosen = list(T.generators)
    for g in gens:
        if cur.order == int(ok.sum()):
            break
        if not cur.contains(g):
            chosen.append(g)
            cur = PermGroup(m, chosen)
    return cur


def _subspace_orbit_reps(subs: list[np.ndarray], mats: list[np.ndarray], p: int, dim: int) -> list[np.ndarray]:
    keys = {linalg.key(S): S for S in subs}
    done: set = set()
    reps = []
    for S in subs:
        k0 = linalg.key(S)
        if k0 in done:
            continue
        reps.append(S)
        orbit = [S]
        done.add(k0)
        while orbit:
            X = orbit.pop()
            for A in mats:
                Y = linalg.row_space((X @ A) % p, p, dim)
                ky = linalg.key(Y)
                if ky not in done:
                    assert ky in keys
                    done.add(ky)
                    orbit.append(Y)
    return reps


def subgroups_over_top(k: int, T: PermGroup, normalizer: PermGroup | None = None) -> list[PermGroup]:
    """Every subgroup of Sym(k) wr T projecting onto T, up to conjugacy (raw, with repeats)."""
    m = T.degree
    n = k * m
    chain = local_chain(k)
    current = [PermGroup(n, [lift_top(k, h) for h in T.generators])]
    for j in range(len(chain)):
        layer = Layer(k, m, j)
        p = layer.p
        sd = section(layer, layer.basis_perms, [])
        nxt = []
        for X in current:
            gens = list(X.generators)
            mats = module_matrices(layer, gens)
            subs = linalg.invariant_subspaces(mats, p, layer.dim)
            if j == 0:
                N = normalizer if normalizer is not None else normalizer_in_symmetric(T)
                nmats = module_matrices(layer, [lift_top(k, h) for h in N.generators])
                subs = _subspace_orbit_reps(subs, nmats, p, layer.dim)
            for M in subs:
                nxt.extend(complement_classes(sd, gens, gens, M))
        log.debug("k=%d m=%d layer %d: %d groups", k, m, j, len(nxt))
        current = nxt
    return current


def extend_layered(k: int, T: PermGroup, normalizer: PermGroup | None = None,
                   dedup: bool = True) -> list[PermGroup]:
    """Transitive groups of degree k*m with minimal block size k lying over T.

    Output is reduced up to Sym(k*m)-conjugacy when ``dedup`` is set.  The
    signature filter (which top group owns a group) is applied by the caller.
    """
    if k not in (2, 3, 4):
        raise ValueError("layered extension is implemented for block sizes 2, 3, 4")
    raw = subgroups_over_top(k, T, normalizer)
    keep = [G for G in raw if G.is_transitive() and minimal_block_size(G) == k]
    if dedup:
        keep = unique_up_to_conjugacy(keep)
    return keep


def extend_block2(Hbar: PermGroup, normalizer: PermGroup | None = None) -> list[PermGroup]:
    return extend_layered(2, Hbar, normalizer)


__all__ = ["ExtensionTask", "LayerModule", "complements_mod_H1", "extend_block2",
           "extend_layered", "kernel_module", "normalizer_in_symmetric", "submodules",
           "subgroups_over_top"]
