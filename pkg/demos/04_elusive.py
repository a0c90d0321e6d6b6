"""M11 on 12 points has no fixed-point-free element of prime order.

Run: python3 demos/04_elusive.py
"""
from collections import Counter

from transcat.elusive import is_two_closed, prime_order_derangement, two_closure
from transcat.perm import class_reps, cycle_type, format_cycles
from transcat.seeds import primitive_group

M11 = primitive_group(12, "M11(12)")
print(f"M11 on 12 points, order {M11.order}")

# cycle types of the prime-order classes: every one has a fixed point
for g, o, size in class_reps(M11):
    if o in (2, 3, 5, 11):
        ct = Counter(cycle_type(g))
        print(f"  order {o:<2} class size {size:<5} cycle type {dict(sorted(ct.items()))}")

print("prime-order derangement:", prime_order_derangement(M11))
K = two_closure(M11)
print(f"2-closure has order {K.order} (M11 is 3-transitive, so this is all of Sym(12)); 2-closed: {is_two_closed(M11)}")

M12 = primitive_group(12, "M12")
print("M12 for contrast, witness:", format_cycles(prime_order_derangement(M12)))
