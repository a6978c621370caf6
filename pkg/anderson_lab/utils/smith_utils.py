"""Smith normal form over the integers, with transforms, and the modular
solvers built on it.

The decomposition itself is sympy's: for an integer matrix A,
``smith_normal_decomp`` returns (D, U, V) with U·A·V = D, U and V
unimodular and D diagonal.
"""
from dataclasses import dataclass
from math import gcd
from typing import List, Optional, Sequence

from sympy import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import smith_normal_decomp

Matrix = List[List[int]]


@dataclass(frozen=True)
class SmithForm:
    diagonal: List[int]
    left: Matrix
    right: Matrix

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def _to_ints(matrix: DomainMatrix) -> Matrix:
    return [[int(x) for x in row] for row in matrix.to_list()]


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> SmithForm:
    """
    Compute the Smith normal form of an integer matrix.

    Args:
        matrix: m x n integer matrix (m, n >= 1)

    Returns:
        SmithForm: diagonal entries (length min(m, n)) with the left and
        right unimodular transforms
    """
    rows, cols = len(matrix), len(matrix[0])
    domain_matrix = DomainMatrix([[ZZ(int(x)) for x in row] for row in matrix], (rows, cols), ZZ)
    diagonal, left, right = smith_normal_decomp(domain_matrix)
    d = _to_ints(diagonal)
    return SmithForm(
        diagonal=[d[i][i] for i in range(min(rows, cols))],
        left=_to_ints(left),
        right=_to_ints(right),
    )


def solve_mod(matrix: Sequence[Sequence[int]], rhs: Sequence[int], modulus: int) -> Optional[List[int]]:
    """
    Solve matrix·x ≡ rhs (mod modulus), or return None if no solution exists.

    The system is lifted to the integer system [matrix | modulus·I]·(x, y) = rhs,
    which is solvable over Z exactly when the modular one is.

    Args:
        matrix: m x k integer matrix (k may be 0)
        rhs: length-m integer vector
        modulus: n >= 2

    Returns:
        list: one solution reduced mod n, or None
    """
    m = len(rhs)
    k = len(matrix[0]) if m and matrix else 0
    if m == 0:
        return [0] * k

    lifted = [
        [int(x) % modulus for x in matrix[i]] + [modulus if i == j else 0 for j in range(m)]
        for i in range(m)
    ]
    form = smith_normal_form(lifted)
    transformed = [sum(row[j] * int(rhs[j]) for j in range(m)) for row in form.left]

    # U·A·V = D, so A·x = b  <=>  D·z = U·b with x = V·z
    z = [0] * (k + m)
    for i, d in enumerate(form.diagonal):
        if d == 0:
            if transformed[i] != 0:
                return None
            continue
        if transformed[i] % d:
            return None
        z[i] = transformed[i] // d

    solution = [sum(form.right[j][i] * z[i] for i in range(k + m)) for j in range(k)]
    return [x % modulus for x in solution]


def kernel_is_trivial_mod(matrix: Sequence[Sequence[int]], modulus: int) -> bool:
    """
    Decide whether x -> matrix·x is injective on (Z_n)^k.

    With U·A·V = D the kernel is isomorphic to {z : d_i z_i ≡ 0}; it is zero
    iff there are k diagonal entries and each is coprime to n.
    """
    k = len(matrix[0]) if matrix else 0
    if k == 0:
        return True
    if len(matrix) < k:
        return False
    form = smith_normal_form([[int(x) % modulus for x in row] for row in matrix])
    return all(gcd(d, modulus) == 1 for d in form.diagonal[:k])
