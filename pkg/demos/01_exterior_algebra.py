"""Walkthrough: the exterior algebra layer.

Monomials are bitmasks over the generators x_1..x_n; every sign in the
package flows from the inversion-count convention shown here.
"""

from cartansuper.exterior import (
    ExtElem,
    ext_mul,
    mono_mask,
    mono_mul,
    mono_str,
    partial,
)

n = 4

print("== monomials and signs ==")
for a, b in [((1,), (2,)), ((2,), (1,)), ((1,), (1,)), ((1, 3), (2, 4))]:
    sign, prod = mono_mul(mono_mask(a), mono_mask(b))
    rhs = "0" if sign == 0 else f"{'+' if sign > 0 else '-'}{mono_str(prod)}"
    print(f"  {mono_str(mono_mask(a))} * {mono_str(mono_mask(b))} = {rhs}")

print("\n== partial superderivatives ==")
f = ExtElem.monomial(n, mono_mask([1, 2]))
for i in (1, 2, 3):
    print(f"  d_{i}(x1x2) = {partial(i, f)}")

print("\n== the signed Leibniz rule on a sample ==")
g = ExtElem.monomial(n, mono_mask([3]))
lhs = partial(2, ext_mul(f, g))
rhs = ext_mul(partial(2, f), g) + ext_mul(f, partial(2, g))  # |f| even
print(f"  d_2(x1x2 * x3)           = {lhs}")
print(f"  d_2(x1x2)x3 + x1x2 d_2(x3) = {rhs}")
assert lhs == rhs

print("\n== dimension count ==")
count = sum(1 for m in range(1 << n))
print(f"  dim Lambda({n}) = {count} = 2^{n}")
