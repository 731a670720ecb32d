"""Digits, convergents, and exact arithmetic for Renyi-type expansions.

Walks through the expansion x = 1 - N/(1+a_1 - N/(1+a_2 - ...)) for a few
points, showing the digit stream, the integer convergents p_n/q_n, the
determinant identity p_{n-1} q_n - p_n q_{n-1} = N^n, and how fast the
convergents close in on x.
"""

from fractions import Fraction

from renyicf import DigitSequence, convergents, evaluate, expand, expand_exact

N = 2
x = Fraction(5, 17)

print(f"Expanding x = {x} with N = {N}")
orbit = expand_exact(N, x, 12)
print("digits:", list(orbit.digits))
print("orbit :", [str(p) for p in orbit.points[:6]], "...")

seq = orbit.sequence
print("\nconvergents and residuals:")
for c in convergents(seq)[1:8]:
    print(f"  p_{c.index}/q_{c.index} = {c.p}/{c.q}"
          f"   |x - p/q| = {float(abs(x - c.value)):.3e}")

print("\ndeterminant identity p_(n-1) q_n - p_n q_(n-1) = N^n:")
convs = convergents(seq)
for prev, cur in zip(convs[:5], convs[1:6]):
    det = prev.p * cur.q - cur.p * prev.q
    print(f"  n={cur.index}: {det} = {N}^{cur.index}")

print("\nevaluate() agrees with the last convergent:")
print(" ", evaluate(seq), "=", convs[-1].value)

print("\nfloat path on the same point (digits match until drift):")
print(" ", list(expand(N, 5 / 17, 12).digits))

print("\npoints whose orbit hits the fixed point 0 end in digit N forever:")
print("  x=1/2:", list(expand_exact(2, Fraction(1, 2), 6).digits))
