# euler_engine/homology.py
"""
homology.py

Integer-lattice oracles for the abelianized presentations of the central
extensions of a Fuchsian group:

    Z-central lift:  q_i^{k_i} z,  q_1...q_r [a_1,b_1]...[a_g,b_g] z^{2g-2+r}
    SL(2,R) lift:    h^2,  q_i^{k_i} h,  q_1...q_r [a_1,b_1]...[a_g,b_g] h^r

Handle generators drop out after abelianizing, so each relation is a column
over the rows (q_1, ..., q_r, central). The order of the central generator in
the cokernel is read off the Smith normal form.
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence

from sympy import ZZ, Matrix
from sympy.matrices.normalforms import smith_normal_decomp

from euler_engine.signature import Signature, require_valid

logger = logging.getLogger(__name__)

IntMatrix = List[List[int]]


@dataclass(frozen=True)
class RelationMatrix:
    entries: IntMatrix
    row_labels: List[str]
    central_row: int

    @property
    def shape(self):
        return len(self.entries), (len(self.entries[0]) if self.entries else 0)


@dataclass(frozen=True)
class SNFResult:
    """U @ M @ V == D with U, V unimodular."""

    D: IntMatrix
    U: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> List[int]:
        return [self.D[i][i] for i in range(min(len(self.D), len(self.D[0]) if self.D else 0))]


def _rows(sig: Signature, central: str) -> List[str]:
    return [f"q{i + 1}" for i in range(sig.r)] + [central]


def _columns_to_matrix(columns: Sequence[Sequence[int]], n_rows: int) -> IntMatrix:
    return [[col[i] for col in columns] for i in range(n_rows)]


def relation_matrix_z(sig: Signature) -> RelationMatrix:
    require_valid(sig)
    r = sig.r
    columns = []
    for i, k in enumerate(sig.periods):
        col = [0] * (r + 1)
        col[i], col[r] = k, 1
        columns.append(col)
    columns.append([1] * r + [2 * sig.genus - 2 + r])
    return RelationMatrix(_columns_to_matrix(columns, r + 1), _rows(sig, "z"), r)


def relation_matrix_h(sig: Signature) -> RelationMatrix:
    require_valid(sig)
    r = sig.r
    columns = [[0] * r + [2]]
    for i, k in enumerate(sig.periods):
        col = [0] * (r + 1)
        col[i], col[r] = k, 1
        columns.append(col)
    columns.append([1] * r + [r])
    return RelationMatrix(_columns_to_matrix(columns, r + 1), _rows(sig, "h"), r)


# -------------------------------
# Smith normal form
# -------------------------------
def _identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _to_ints(M: Matrix) -> IntMatrix:
    return [[int(M[i, j]) for j in range(M.cols)] for i in range(M.rows)]


def smith_normal_form(M: Sequence[Sequence[int]]) -> SNFResult:
    """Exact Smith normal form over ZZ with unimodular transforms, via sympy."""
    rows = [[int(x) for x in row] for row in M]
    m = len(rows)
    n = len(rows[0]) if m else 0
    if m == 0 or n == 0:
        return SNFResult(rows, _identity(m), _identity(n))
    D, U, V = smith_normal_decomp(Matrix(rows), domain=ZZ)
    D, U, V = _to_ints(D), _to_ints(U), _to_ints(V)
    # invariant factors are reported non-negative
    for i in range(min(m, n)):
        if D[i][i] < 0:
            D[i] = [-x for x in D[i]]
            U[i] = [-x for x in U[i]]
    return SNFResult(D, U, V)


def order_in_cokernel(R: RelationMatrix, row: int) -> Optional[int]:
    """
    Least N > 0 with N * e_row in the column lattice of R, or None when the
    generator has infinite order.
    """
    m, n = R.shape
    if not 0 <= row < m:
        raise IndexError(f"row {row} out of range for {m} rows")
    snf = smith_normal_form(R.entries)
    y = [snf.U[i][row] for i in range(m)]
    order = 1
    for i in range(m):
        d = snf.D[i][i] if i < n else 0
        if d == 0:
            if y[i]:
                return None
            continue
        order = math.lcm(order, d // math.gcd(d, y[i]))
    return order


def oracle_e(sig: Signature) -> int:
    """Order of z in H^1 of the Z-central lift; 0 stands for infinite order."""
    R = relation_matrix_z(sig)
    order = order_in_cokernel(R, R.central_row)
    logger.debug("order of z for %s: %s", sig, order)
    return 0 if order is None else order


def h_order(sig: Signature) -> Optional[int]:
    R = relation_matrix_h(sig)
    return order_in_cokernel(R, R.central_row)


def oracle_h_trivial(sig: Signature) -> bool:
    """-1 is a product of commutators in the SL(2,R) lift exactly when h is trivial in H^1."""
    return h_order(sig) == 1
