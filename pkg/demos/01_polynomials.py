# Generalized polynomials: the ring every solver works over.
#
# Exponents are exact rationals (negative and fractional powers are fine),
# coefficients are Python ints.

from fractions import Fraction

from pcsp import PolyRing, coefficient_of, evaluate, max_degree, prune_z

R = PolyRing(["z", "w1", "w2"])
z, w1 = R.var("z"), R.var("w1")

print("(1+z)^2          =", (1 + z) ** 2)
print("z^1/2 * z^1/2    =", R.monomial(1, z=Fraction(1, 2)) ** 2)
print("z^-1 * (z + z^2) =", R.monomial(1, z=-1) * (z + z ** 2))

# Parsing accepts the same text that str() produces.
p = R.parse("2*z^2 + 3*z + 700 + z*w1 + z^2*w1 + z*w2 + z^10*w1*w2")
print("\np =", p)

# Pruning keeps, for each combination of the other variables, only the
# term with the highest power of z.  With nonnegative coefficients it
# commutes with + and *, so solvers may prune after every step.
print("prune_z(p) =", prune_z(p, "z"))

q = R.parse("1 + 2*z*w1")
lhs = prune_z(p * q, "z")
rhs = prune_z(prune_z(p, "z") * prune_z(q, "z"), "z")
print("prune(pq) == prune(prune(p) prune(q)):", lhs == rhs)

# Queries used by the readouts.
print("\nmax z-degree of p:", max_degree(p, "z"))
print("terms of p with w1^1, w2^0:", coefficient_of(p, {"w1": 1, "w2": 0}))
print("p at z=1, w1=w2=0.5:", evaluate(p, {"z": 1, "w1": 0.5, "w2": 0.5}))
