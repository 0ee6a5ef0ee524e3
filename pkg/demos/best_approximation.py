"""Convergent denominators of an unfinished expansion are best approximants.

The one-dimensional analog of the golden ratio, [z; z, z, ...] over GF(2),
is evaluated to finite precision and compared against a brute-force search
over every monic denominator of degree <= D.
"""

from mcfrac import MPreCF, Poly, best_profile_bruteforce, evaluate_phi, verify_best

z = Poly([0, 1])
C = MPreCF(1, [(1, (z,))] * 10, terminated=False)
r = evaluate_phi(C, 24).value
print('r =', r[0])

D = 5
rep = verify_best(r, C, D)
print('degrees d_k           :', rep.d_list)
print('brute-force best jumps:', rep.best_degrees)
print('verdict               :', 'pass' if rep.passed else 'fail')

prof = best_profile_bruteforce(r, D)
for d in range(D + 1):
    print(f'deg <= {d}: precision {prof.best[d]}  witnesses {[str(w) for w in prof.witnesses[d]]}')
