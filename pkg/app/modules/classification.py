"""
Recovering the parameter polynomial from the action of the generators on 1.

A rank-one free action is fixed by p_ij = E(i,j).1 (H(i).1 on the diagonal)
and q_i = E(n+1,i).1. The tables must satisfy, for all indices,

    pii : x_i p_jj^i = x_j p_ii^j
    pij3: x_i p_kl^j - x_k p_ij^l = delta_kj p_il - delta_il p_kj
    pij : x_k p_ij^k - x_i p_kk^j = (delta_ki - delta_kj) p_ij
    pij2: x_i p_ji^j - x_j p_ij^i = p_ii - p_jj
    relhq: x_k q_i^k + delta_ki q_i + sum_r (p_kk^r p_ri + x_r p_kk^{ir} + p_kk^i p_rr) = 0

and then p = d'(pbar) with pbar = sum_i p_ii = d(p) + p(0).
"""

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Mapping, Tuple, Union

from app.algebra.parser import parse_polynomial
from app.algebra.polynomial import Polynomial
from app.modules.representation import PijTable, QiTable, representation_builder
from app.reports import ClassificationResult
from app.utils import system_logger, time_operation


@dataclass(frozen=True)
class Inconsistent:
    """The first relation the tables violate."""

    equation: str
    detail: str


def _delta(a: int, b: int) -> int:
    return 1 if a == b else 0


class ActionClassifier:
    """Checks generator tables and reconstructs p."""

    def __init__(self):
        system_logger.info("Initializing ActionClassifier")
        self.builder = representation_builder

    def _check_pii(self, n: int, pij: PijTable):
        x = lambda r: Polynomial.variable(n, r)
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                residual = x(i) * pij[(j, j)].differentiate(i) - x(j) * pij[(i, i)].differentiate(j)
                if residual:
                    return Inconsistent("pii", f"i={i}, j={j}: residual {residual}")
        return None

    def _check_pij3(self, n: int, pij: PijTable):
        x = lambda r: Polynomial.variable(n, r)
        indices = range(1, n + 1)
        for i in indices:
            for j in indices:
                for k in indices:
                    for l in indices:
                        left = x(i) * pij[(k, l)].differentiate(j) - x(k) * pij[(i, j)].differentiate(l)
                        right = pij[(i, l)].scale(_delta(k, j)) - pij[(k, j)].scale(_delta(i, l))
                        residual = left - right
                        if residual:
                            return Inconsistent("pij3", f"i={i}, j={j}, k={k}, l={l}: residual {residual}")
        return None

    def _check_pij(self, n: int, pij: PijTable):
        x = lambda r: Polynomial.variable(n, r)
        indices = range(1, n + 1)
        for i in indices:
            for j in indices:
                for k in indices:
                    left = x(k) * pij[(i, j)].differentiate(k) - x(i) * pij[(k, k)].differentiate(j)
                    residual = left - pij[(i, j)].scale(_delta(k, i) - _delta(k, j))
                    if residual:
                        return Inconsistent("pij", f"i={i}, j={j}, k={k}: residual {residual}")
        return None

    def _check_pij2(self, n: int, pij: PijTable):
        x = lambda r: Polynomial.variable(n, r)
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                left = x(i) * pij[(j, i)].differentiate(j) - x(j) * pij[(i, j)].differentiate(i)
                residual = left - (pij[(i, i)] - pij[(j, j)])
                if residual:
                    return Inconsistent("pij2", f"i={i}, j={j}: residual {residual}")
        return None

    def _check_relhq(self, n: int, pij: PijTable, qi: QiTable):
        residuals = self.builder.relhq_residuals(n, pij, qi)
        for (i, k), residual in sorted(residuals.items()):
            if residual:
                return Inconsistent("relhq", f"i={i}, k={k}: residual {residual}")
        return None

    @time_operation
    def classify(self, n: int, pij: PijTable, qi: QiTable) -> Union[Polynomial, Inconsistent]:
        """
        Recover p from generator tables.

        Args:
            n: Rank parameter
            pij: Values p_ij for 1 <= i, j <= n
            qi: Values q_i for 1 <= i <= n

        Returns:
            The unique p with build_rep(n, p) matching the tables, or the
            first violated relation
        """
        missing = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if (i, j) not in pij]
        missing += [i for i in range(1, n + 1) if i not in qi]
        if missing:
            return Inconsistent("tables", f"missing entries {missing}")
        extra = [key for key in pij if not all(1 <= index <= n for index in key)]
        extra += [key for key in qi if not 1 <= key <= n]
        if extra:
            return Inconsistent("tables", f"entries out of range 1..{n}: {extra}")

        for check in (self._check_pii, self._check_pij3, self._check_pij, self._check_pij2):
            outcome = check(n, pij)
            if outcome is not None:
                system_logger.warning(f"Tables violate {outcome.equation}: {outcome.detail}")
                return outcome
        outcome = self._check_relhq(n, pij, qi)
        if outcome is not None:
            system_logger.warning(f"Tables violate relhq: {outcome.detail}")
            return outcome

        pbar = Polynomial.zero(n)
        for i in range(1, n + 1):
            pbar = pbar + pij[(i, i)]
        p = pbar.degree_section()

        rebuilt = self.builder.build_rep(n, p)
        for key, value in pij.items():
            if rebuilt.pij[key] != value:
                return Inconsistent("reconstruction", f"p_{key} differs from the table for p = {p}")
        for key, value in qi.items():
            if rebuilt.qi[key] != value:
                return Inconsistent("reconstruction", f"q_{key} differs from the table for p = {p}")
        return p

    def classify_report(self, n: int, pij: PijTable, qi: QiTable) -> ClassificationResult:
        outcome = self.classify(n, pij, qi)
        if isinstance(outcome, Inconsistent):
            return ClassificationResult(n=n, consistent=False, violated=outcome.equation, detail=outcome.detail)
        return ClassificationResult(n=n, consistent=True, p=str(outcome))


def tables_from_payload(payload: Mapping[str, Any]) -> Tuple[int, PijTable, QiTable]:
    """Read {"n": int, "pij": {"i,j": expr}, "qi": {"i": expr}}."""
    n = int(payload["n"])
    pij: Dict[Tuple[int, int], Polynomial] = {}
    for key, text in payload.get("pij", {}).items():
        i, j = (int(part) for part in key.split(","))
        pij[(i, j)] = parse_polynomial(str(text), n)
    qi = {int(key): parse_polynomial(str(text), n) for key, text in payload.get("qi", {}).items()}
    return n, pij, qi


def load_tables(path: Path) -> Tuple[int, PijTable, QiTable]:
    with open(path, "r", encoding="utf-8") as f:
        return tables_from_payload(json.load(f))


# Create a singleton instance
action_classifier = ActionClassifier()


def classify_from_action(n: int, pij: PijTable, qi: QiTable) -> Union[Polynomial, Inconsistent]:
    return action_classifier.classify(n, pij, qi)
