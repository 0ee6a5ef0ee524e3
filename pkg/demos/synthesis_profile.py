"""Linear complexity profile of a pair of GF(3) sequences, checked by enumeration."""

import random

from mcfrac import MultiSeqPrefix, complexity_profile, minimal_poly_bruteforce

rng = random.Random(7)
pre = MultiSeqPrefix(tuple(tuple(rng.randrange(3) for _ in range(9)) for _ in range(2)), 3)
print('sequences:', pre.seqs)
print(' n  L  minimal polynomial   brute force')
for row in complexity_profile(pre):
    L, witnesses = minimal_poly_bruteforce(pre.prefix(row.n))
    mark = 'ok' if L == row.L and row.q in witnesses else 'MISMATCH'
    print(f'{row.n:2d} {row.L:2d}  {str(row.q):20s} {L} {mark}')
