"""Descent through the transitive subgroups of Sym(k) wr H.

Starting from the wreath product, the largest active group is repeatedly
replaced by its transitive maximal subgroups that still act as H on the
canonical blocks.  A candidate is dropped when it has a block system with
blocks smaller than k, or when it is conjugate inside Sym(k) wr Sym(m) to a
group met before.  What remains is every group with canonical block size k
over H, up to conjugacy.

Maximal subgroups that project onto H are found layer by layer.  If M' < M is
maximal with M' K = M (K the kernel of the block action), take the last layer
N_{j} = M ∩ B_j not contained in M'; then M' ∩ N_j is the preimage of a maximal
M-submodule U of N_j / N_{j+1}, and M' is a complement to N_j/Ũ.  So the
maximal subgroups over H are the complement classes for the maximal
submodules of each layer section.
"""

from __future__ import annotations

import logging

from .blocks import minimal_block_size, wreath_product
from .conjugacy import are_conjugate, invariant_key
from .layers import (Layer, complement_classes, local_chain, maximal_submodules,
                     module_matrices, quotient_action, section)
from .perm import BudgetExceeded, PermGroup, kernel_of_action, symmetric_group

log = logging.getLogger(__name__)

DESCENT_BUDGET = 2 * 10**5


def layer_kernels(M: PermGroup, k: int, m: int) -> tuple[list, list[PermGroup]]:
    """Quotient images of M's generators and the subgroups N_j = M ∩ B_j."""
    r = len(local_chain(k))
    images = [[quotient_action(k, m, g, j) for g in M.generators] for j in range(r)]
    kernels = [kernel_of_action(M, images[j]) for j in range(r)]
    kernels.append(PermGroup(M.degree, []))
    return images, kernels


def maximal_subgroups_over_top(M: PermGroup, k: int, m: int) -> list[PermGroup]:
    """Maximal subgroups M' of M with M' K = M, one per class under the layer kernels."""
    images, N = layer_kernels(M, k, m)
    out = []
    for j in range(len(images)):
        layer = Layer(k, m, j)
        sd = section(layer, N[j].generators, N[j + 1].generators)
        if len(sd.V) == 0:
            continue
        mats = module_matrices(layer, M.generators)
        for U in maximal_submodules(mats, layer.p, sd.V):
            out.extend(complement_classes(sd, M.generators, images[j], U))
    return out


def descend_part(k: int, H: PermGroup, budget: int = DESCENT_BUDGET) -> list[PermGroup]:
    """Every transitive G ≤ Sym(k) wr H with G^B = H and no blocks smaller than k.

    Groups are returned up to conjugacy in Sym(k) wr Sym(m), in discovery order.
    """
    m = H.degree
    frame = wreath_product(k, H)
    W = frame.product
    if W.order > budget:
        raise BudgetExceeded("wreath product for descent", W.order, budget)
    local_chain(k)  # rejects block sizes without an elementary abelian series
    ambient = wreath_product(k, symmetric_group(m)).product
    seen: list[PermGroup] = [W]
    buckets: dict = {invariant_key(W): [W]}
    active = [W]
    while active:
        i = max(range(len(active)), key=lambda t: (active[t].order, -t))
        M = active.pop(i)
        for C in maximal_subgroups_over_top(M, k, m):
            if not C.is_transitive():
                continue
            if minimal_block_size(C) < k:
                continue
            key = invariant_key(C)
            bucket = buckets.setdefault(key, [])
            if any(are_conjugate(C, S, ambient) is not None for S in bucket):
                continue
            bucket.append(C)
            seen.append(C)
            active.append(C)
    log.debug("descent k=%d over order %d: %d groups", k, H.order, len(seen))
    return seen
