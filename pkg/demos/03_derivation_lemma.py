"""Walkthrough: the superderivation algebra, two independent ways.

The Leibniz equation is solved blockwise over the bigrading and the result
is compared, as a subspace of End(L), with the span of the inner maps
ad(u) for u in the extension algebra L'.
"""

import time

from cartansuper.derivations import ad_image, derivation_space, transitivity_check
from cartansuper.families import build, build_lprime

for family, n in [("W", 4), ("S", 4), ("Stilde", 4), ("H", 5), ("H", 6)]:
    A = build(family, n)
    P = build_lprime(A)
    t0 = time.monotonic()
    der = derivation_space(A)
    inner = ad_image(P)
    dt = time.monotonic() - t0
    print(f"{family}({n}):  dim Der = {der.dim}, dim ad L' = {inner.dim}, "
          f"equal = {der == inner}, transitive = {transitivity_check(P)}  "
          f"[{dt:.1f}s]")

print("\nThe parity split, on H(5):")
A = build("H", 5)
even = derivation_space(A, parity=0)
odd = derivation_space(A, parity=1)
print(f"  dim Der_0 = {even.dim}, dim Der_1 = {odd.dim}, "
      f"total = {even.dim + odd.dim}")

print("\nBlockwise vs whole-space reference on H(5):")
blk = derivation_space(A, method="blocks")
ref = derivation_space(A, method="reference")
print(f"  agree: {blk == ref}")
