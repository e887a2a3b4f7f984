"""
Splitting a product with a Rota-Baxter operator
===============================================
"""

# %%
# Start from e1e1 = e2 and the weight-zero Rota-Baxter operator f = diag(2, 1).
from homworkbench import dendriform as dd
from homworkbench import hom_core as hc
from homworkbench.exact_linear import identity, zeros

c = zeros(2, 2, 2)
c[0, 0, 1] = 1
a = hc.HomAlgebra(c, identity(2))
f = [[2, 0], [0, 1]]
print(dd.check_rota_baxter(a, f).summary())
print(dd.check_rota_baxter(a, identity(2)).summary())

# %%
# x > y = f(x)y and x < y = x f(y).  Both tables have a single entry 2e2,
# and the two operations add back up to 4e2.
split = dd.dendriform_from_o_operator(dd.OOperator(hc.HomBimodule(a, a.L, a.R, identity(2)), f))
print(split.succ[0, 0], split.prec[0, 0])
print(dd.associated_algebra(split).mult[0, 0])

# %%
# The identity is an invertible O-operator on (L>, R<), and feeding it back
# in recovers the same splitting.
again = dd.dendriform_from_o_operator(dd.identity_o_operator(split))
print(again == split)

# %%
# Pair the splitting with the zero structure on the dual space.  The double
# carries omega = [[0, -I], [I, 0]], and solving against omega hands the
# splitting back.
zero = dd.HomDendriform(zeros(2, 2, 2), zeros(2, 2, 2), identity(2))
double = dd.symplectic_double(split, zero)
print(dd.check_symplectic(dd.SymplecticHomAlgebra(double.total, double.omega)).summary())
recovered = dd.dendriform_from_symplectic(dd.SymplecticHomAlgebra(double.total, double.omega))
print((recovered.succ[:2, :2, :2] == split.succ).all())
