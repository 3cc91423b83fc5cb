"""
Pydantic models for every report the engine produces.

Rationals and polynomials are carried as canonical strings so that the JSON
output re-parses to equal values.
"""

from typing import Dict, List, Optional

from pydantic import BaseModel, Field

from app.utils import dump_json


class Report(BaseModel):
    """Base class adding deterministic JSON rendering."""

    def to_json(self, pretty: bool = False) -> str:
        return dump_json(self.model_dump(), pretty=pretty)


# Representation verification
class FailingPair(BaseModel):
    """A basis pair whose commutator disagrees with the image of its bracket."""
    a: str
    b: str
    residual: str


class VerificationReport(Report):
    """Model for the outcome of a bracket-by-bracket verification."""
    algebra: str
    n: int
    p: str
    pairs_checked: int
    failures: List[FailingPair] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


class ClassificationResult(Report):
    """Either the recovered parameter or the first violated relation."""
    n: int
    consistent: bool
    p: Optional[str] = None
    violated: Optional[str] = None
    detail: Optional[str] = None


class ActResult(Report):
    element: str
    p: str
    on: str
    result: str


# Submodule analysis
class QuotientData(BaseModel):
    """Dimension and highest weight of M(p)/W_m."""
    m: int
    dim: int
    rank: int
    weight: List[str]


class SubmoduleReport(Report):
    n: int
    p: str
    predicted: str
    predicted_k: str
    sl2_predicted: Optional[str] = None
    oracle_min_degree: Optional[int] = None
    search_bound: int
    agreement: bool
    quotient: Optional[QuotientData] = None
    notes: List[str] = Field(default_factory=list)


class ExactSequenceWitness(Report):
    """Data of 0 -> V(sub) -> V(p) -> L(-p(0)) -> 0 for sl_2."""
    p: str
    applicable: bool
    k: Optional[int] = None
    sub_parameter: Optional[str] = None
    quotient_hw: Optional[str] = None
    quotient_dim: Optional[int] = None
    intertwiner: Dict[str, bool] = Field(default_factory=dict)


# Tensor products
class SplitReport(Report):
    """Certified splitting V(p) (x) L(1) = V(p-1) + V(p+1)."""
    p: str
    phi_generator: List[str]
    psi_generator: List[str]
    check_degree: int
    checks: Dict[str, bool]
    rank_data: Dict[str, int]
    certified: bool


class Summand(BaseModel):
    shift: int
    parameter: str
    generator: List[str]


class DecompositionReport(Report):
    p: str
    k: int
    certified_up_to_degree: int
    certified: bool
    summands: List[Summand] = Field(default_factory=list)
    failure: Optional[str] = None
    failure_degree: Optional[int] = None


class ClebschGordanReport(Report):
    k: int
    m: int
    components: List[int]
