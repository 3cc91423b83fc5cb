"""
Exact certification that a Weyl realization is a Lie algebra representation.
"""

from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Tuple

from app.algebra.weyl import WeylElement, weyl_commutator
from app.config import DEFAULT_JOBS
from app.lie.sl import BasisElement, basis_pairs
from app.modules.representation import Representation
from app.reports import FailingPair, VerificationReport
from app.utils import system_logger, time_operation


class RepresentationVerifier:
    """Checks [rho(a), rho(b)] = rho([a, b]) for every pair of basis elements."""

    def __init__(self, jobs: int = DEFAULT_JOBS):
        system_logger.info("Initializing RepresentationVerifier")
        self.jobs = jobs

    @staticmethod
    def residual(rep: Representation, a: BasisElement, b: BasisElement) -> WeylElement:
        """[rho(a), rho(b)] - rho([a, b]); zero when the pair is respected."""
        commutator = weyl_commutator(rep.rho[a], rep.rho[b])
        return commutator - rep.image(rep.algebra.bracket(a, b))

    def _check_pair(self, rep: Representation, pair: Tuple[BasisElement, BasisElement]) -> Optional[FailingPair]:
        a, b = pair
        residual = self.residual(rep, a, b)
        if residual.is_zero():
            return None
        return FailingPair(a=str(a), b=str(b), residual=str(residual))

    @time_operation
    def verify(self, rep: Representation, jobs: Optional[int] = None) -> VerificationReport:
        """
        Verify every unordered pair of distinct basis elements.

        Args:
            rep: Representation to certify
            jobs: Worker threads; pairs are independent and results keep pair order

        Returns:
            VerificationReport listing every failing pair with its residual
        """
        jobs = jobs or self.jobs
        pairs = basis_pairs(rep.algebra.basis())
        system_logger.info(f"Verifying {len(pairs)} pairs for {rep.algebra.name} with p = {rep.p}")

        if jobs > 1:
            with ThreadPoolExecutor(max_workers=jobs) as executor:
                outcomes: List[Optional[FailingPair]] = list(
                    executor.map(lambda pair: self._check_pair(rep, pair), pairs)
                )
        else:
            outcomes = [self._check_pair(rep, pair) for pair in pairs]

        failures = [outcome for outcome in outcomes if outcome is not None]
        if failures:
            system_logger.warning(f"{len(failures)} of {len(pairs)} pairs failed for p = {rep.p}")

        return VerificationReport(
            algebra=rep.algebra.name,
            n=rep.n,
            p=str(rep.p),
            pairs_checked=len(pairs),
            failures=failures,
        )


# Create a singleton instance
representation_verifier = RepresentationVerifier()


def verify_representation(rep: Representation, jobs: Optional[int] = None) -> VerificationReport:
    return representation_verifier.verify(rep, jobs)
