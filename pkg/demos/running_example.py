"""Expand r = (z^-1, z^-2) over GF(2), inspect the ladder, and map it back."""

from mcfrac import (TruncSeries, check_conditions, convergents, evaluate_phi, format_cf, psi,
                    quantities)
from mcfrac.textio import format_steps, format_vec

r = (TruncSeries.from_terms({-1: 1}), TruncSeries.from_terms({-2: 1}))
e = psi(r, budget=10)
C = e.cf
print('expansion :', format_steps(C))
print('omega     :', e.omega)

q = quantities(C)
print('d_k       :', q.d[1:], ' n_k:', q.n[1:])

tab = convergents(C)
for k in range(1, len(C) + 1):
    print(f'q_{k} = {tab.q[k]}   p_{k} = {format_vec(tab.p_[k])}')

print('strict    :', check_conditions(C).is_strict)
print('phi(psi r) == r :', evaluate_phi(C, 10).value == r)
print('canonical :', format_cf(C))
