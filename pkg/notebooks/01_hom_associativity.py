"""
Checking Hom-associativity and building a Frobenius double
==========================================================

A walk through the exact checkers on small structure-constant tables.
"""

# %%
# Every scalar is a Fraction held in a numpy object array, so nothing rounds.
from homworkbench import frobenius_double as fb
from homworkbench import hom_core as hc
from homworkbench.exact_linear import identity, to_array, zeros

line = hc.HomAlgebra(to_array([[[1]]]), identity(1))
print(hc.check_hom_associative(line).summary())

# %%
# A three-dimensional table: e1e1 = e1, e1e2 = e2e1 = e3, with a twist whose
# second row is (a1, b1, c1).  Associativity of the twisted product fails
# as soon as b1 is nonzero, and the first witness carries the defect -b1.
c = zeros(3, 3, 3)
c[0, 0, 0] = c[0, 1, 2] = c[1, 0, 2] = 1
twist = to_array([[0, 0, 0], [1, 1, 0], [0, 1, 1]])
report = hc.check_hom_associative(hc.HomAlgebra(c, twist))
print(report.summary())

# Setting b1 = 0 (and keeping c1 = 0) repairs it.
twist[1, 1] = 0
print(hc.check_hom_associative(hc.HomAlgebra(c, twist)).summary())

# %%
# Dual numbers K[x]/(x^2) with the identity twist.  The zero coproduct
# always satisfies the bialgebra identities, so the double exists.
d = zeros(2, 2, 2)
d[0, 0, 0] = d[0, 1, 1] = d[1, 0, 1] = 1
dual_numbers = hc.HomAlgebra(d, identity(2))
data = fb.HomBialgebraData(dual_numbers, zeros(2, 2, 2))
double = fb.double_construct_frobenius(data)
print("double has dim", double.total.dim)
print(fb.check_form(double.form, untwisted=True).summary())

# %%
# The diagonal coproduct on the line is rejected.  The residual is reported
# as left side minus right side, here -1 on e1 (x) e1.
bad = fb.HomBialgebraData(line, to_array([[[1]]]))
print(fb.check_hom_bialgebra(bad).summary())
print(fb.check_hom_matched_criterion(bad).summary())
