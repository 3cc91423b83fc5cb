"""
Finite-dimensional simple sl_2 modules L(k) and the Clebsch-Gordan rule.

L(k) has basis v_0..v_k with h v_j = (k - 2j) v_j, y v_j = v_(j+1) and
x v_j = j(k - j + 1) v_(j-1). For k = 1 this is the natural module
with v_0 = e_1, v_1 = e_2.
"""

from collections import Counter
from dataclasses import dataclass
from typing import Dict, List

from sympy import Matrix, zeros

from app.errors import AlgebraError
from app.lie.sl import SL2_H, SL2_X, SL2_Y, Sl2BasisElement
from app.utils import system_logger


@dataclass(frozen=True)
class FiniteModule:
    """L(k) as three (k+1)x(k+1) rational matrices."""

    k: int
    x: Matrix
    y: Matrix
    h: Matrix

    @property
    def dim(self) -> int:
        return self.k + 1

    def weights(self) -> List[int]:
        return [self.k - 2 * j for j in range(self.dim)]

    def matrix(self, element: Sl2BasisElement) -> Matrix:
        return {SL2_X: self.x, SL2_Y: self.y, SL2_H: self.h}[element]

    def check_relations(self) -> Dict[str, bool]:
        x, y, h = self.x, self.y, self.h
        return {
            "[h,x]=2x": h * x - x * h == 2 * x,
            "[h,y]=-2y": h * y - y * h == -2 * y,
            "[x,y]=h": x * y - y * x == h,
        }


def build_finite_module(k: int) -> FiniteModule:
    if k < 0:
        raise ValueError(f"L(k) needs k >= 0, got {k}")
    size = k + 1
    x, y, h = zeros(size, size), zeros(size, size), zeros(size, size)
    for j in range(size):
        h[j, j] = k - 2 * j
        if j + 1 < size:
            y[j + 1, j] = 1
        if j >= 1:
            x[j - 1, j] = j * (k - j + 1)
    return FiniteModule(k=k, x=x, y=y, h=h)


def _peel_highest_weights(weights: Counter) -> List[int]:
    remaining = Counter(weights)
    highest = []
    while +remaining:
        top = max(weight for weight, count in remaining.items() if count > 0)
        highest.append(top)
        for weight in range(top, -top - 1, -2):
            if remaining[weight] <= 0:
                raise AlgebraError(f"weight {weight} missing while peeling L({top})")
            remaining[weight] -= 1
    return highest


def clebsch_gordan_components(k: int, m: int) -> List[int]:
    """Highest weights of L(k) (x) L(m), largest first."""
    if k < 0 or m < 0:
        raise ValueError("Clebsch-Gordan needs nonnegative weights")
    if k < m:
        k, m = m, k
    components = [k + m - 2 * i for i in range(m + 1)]

    counted = Counter(a + b for a in range(k, -k - 1, -2) for b in range(m, -m - 1, -2))
    peeled = _peel_highest_weights(counted)
    if peeled != components:
        raise AlgebraError(f"weight count gives {peeled}, formula gives {components}")
    if sum(c + 1 for c in components) != (k + 1) * (m + 1):
        raise AlgebraError("dimension bookkeeping failed")
    system_logger.debug(f"L({k}) x L({m}) = {components}")
    return components
