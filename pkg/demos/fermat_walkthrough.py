"""The Fermat quartic: generators, a homology basis and the braid action.

Run: python3 demos/fermat_walkthrough.py
"""

from covhom.fermat import (
    SIGMA1, SIGMA2, braid_action_matrices, braid_relation_holds, closed_homology_basis,
    fermat_generator_families,
)

n = 4
A1, A2, A3 = fermat_generator_families(n)
print(f"n={n}: {len(A1)} + {len(A2)} + {len(A3)} Schreier generators")
for w in A1[:2] + A2[:2] + A3[:2]:
    print("  ", w)

basis = closed_homology_basis(n)
print(f"\ngenus {basis.genus}, basis of H_1:")
for (i, j), w in zip(basis.labels, basis.classes):
    print(f"  [b,a]^(alpha^{i} beta^{j}) = {w}")

M1, M2 = braid_action_matrices(n)
print("\nsigma1 on H_1:\n", M1)
print("sigma2 on H_1:\n", M2)
print("braid relation:", braid_relation_holds(M1, M2))

left = SIGMA1.then(SIGMA2).then(SIGMA1)
print(f"\nsigma1 sigma2 sigma1: a -> {left.image_a}, b -> {left.image_b}")
