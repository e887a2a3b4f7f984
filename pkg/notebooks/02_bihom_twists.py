"""
Two twists instead of one
=========================

BiHom-associative algebras carry a left twist alpha1 and a right twist
alpha2 with alpha1(x)(yz) = (xy)alpha2(z).
"""

# %%
from homworkbench import bihom_core as bh
from homworkbench import hom_core as hc
from homworkbench.exact_linear import identity, to_array, zeros

d = zeros(2, 2, 2)
d[0, 0, 0] = d[0, 1, 1] = d[1, 0, 1] = 1
dual_numbers = bh.lift(hc.HomAlgebra(d, identity(2)))
print(bh.check_bihom_associative(dual_numbers).summary())

# A wrong second twist on the line breaks multiplicativity first.
line = hc.HomAlgebra(to_array([[[1]]]), identity(1))
print(bh.check_bihom_associative(bh.lift(line, [[-1]])).summary())

# %%
# The trace-type form B(x, y) = coefficient of e2 in xy is invariant;
# the identity Gram matrix is not.
print(bh.check_alphabeta_invariant(dual_numbers, [[1, 1], [1, 0]]).summary())
print(bh.check_alphabeta_invariant(dual_numbers, identity(2)).summary())

# %%
# Strict mode asks for involutive twists, which forces alpha1 = alpha2 once
# they are also mutually inverse.  Relaxed mode keeps only the inverse pair.
a = bh.BiHomAlgebra(zeros(2, 2, 2), [[1, 0], [0, 2]], [[1, 0], [0, "1/2"]])
f = zeros(2, 2, 2)
f[0, 0, 0], f[1, 0, 1] = 2, 1
data = bh.BiHomBialgebraData(a, f)
print(bh.check_involutive_pair(a, "strict").summary())
print(bh.check_bihom_matched_criterion(data, "relaxed").summary())

# The criterion passes in relaxed mode, yet the dual side does not act as a
# bimodule, so the double is refused after assembly.
pair = bh.check_bihom_matched_pair(bh.bihom_frobenius_matched_pair(data))
print(pair.failing())
