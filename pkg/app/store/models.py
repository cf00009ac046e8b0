from typing import Annotated, Literal

from pydantic import BaseModel, ConfigDict, Field, computed_field


# ============================================================
# Graph document
# ============================================================

class GraphDocument(BaseModel):
    """Canonical Graph JSON: sorted vertices, sorted edges, each edge sorted."""

    vertices: list[str] = Field(..., description="Vertex labels in lexicographic order.")
    edges: list[tuple[str, str]] = Field(
        default_factory=list,
        description="Edges as [u, v] with u < v, sorted lexicographically.",
    )


# ============================================================
# Recognition
# ============================================================

WitnessReason = Literal["not-a-cycle", "cycle-too-short", "link-dimension-mismatch", "empty-expected"]


class Witness(BaseModel):
    """Where a certification failed: the link path and the reason code."""

    model_config = ConfigDict(frozen=True)

    path: list[str] = Field(
        default_factory=list,
        description="Vertices v1, v2, ... descending through unit links to the offending subgraph.",
    )
    reason: WitnessReason


class PmCertificate(BaseModel):
    """Verdict of certifying a graph as a d-pseudomanifold."""

    model_config = ConfigDict(frozen=True)

    dimension: int = Field(..., ge=-1, description="The level d the graph was certified at.")
    verdict: Literal["accept", "reject"]
    witness: Witness | None = Field(None, description="Failure witness; null on accept.")

    @property
    def accepted(self) -> bool:
        return self.verdict == "accept"


# ============================================================
# Arithmetic
# ============================================================

class SphereSpec(BaseModel):
    """An iterated Zykov join of cycles followed by suspensions."""

    model_config = ConfigDict(frozen=True)

    cycle_lengths: list[Annotated[int, Field(ge=4)]] = Field(
        default_factory=list,
        description="Lengths n_i >= 4 of the joined cycles.",
    )
    suspension_count: int = Field(0, ge=0, description="Number of trailing + S^0 factors.")

    @computed_field
    @property
    def dimension(self) -> int:
        return 2 * len(self.cycle_lengths) - 1 + self.suspension_count

    @computed_field
    @property
    def parity(self) -> Literal["even", "odd", "mixed"]:
        if all(n % 2 == 0 for n in self.cycle_lengths):
            return "even"
        if all(n % 2 == 1 for n in self.cycle_lengths):
            return "odd"
        return "mixed"


class SpherePrediction(BaseModel):
    """Printed sphere chromatic formula next to the additive proof-trace value."""

    spec: SphereSpec
    dimension: int
    parity: Literal["even", "odd", "mixed"]
    printed_value: int | None = Field(None, description="2*ceil((k+1)/2) or 3*ceil((k+1)/2); null when mixed.")
    proof_trace_value: int | None = Field(None, description="Per-factor additive count; null when mixed.")
    divergent: bool = False
    exact_value: int | None = Field(None, description="Exact solver value when it was computed.")
    note: str = ""


class ProductClosureReport(BaseModel):
    """Measured dimension of a Cartesian simplex product against the two candidate claims."""

    left_dimension: int
    right_dimension: int
    product_vertices: int
    product_dimension: int
    certified_dimension: int | None
    matches_sum: bool = Field(..., description="Certified dimension equals m+n.")
    matches_sum_plus_one: bool = Field(..., description="Certified dimension equals m+n+1.")
    discrepancy: bool = Field(..., description="True when the m+n+1 claim is not met.")


# ============================================================
# Coloring
# ============================================================

class Coloring(BaseModel):
    """Total map vertex -> color index."""

    model_config = ConfigDict(frozen=True)

    palette_size: int = Field(..., ge=0)
    assignment: dict[str, int] = Field(default_factory=dict)

    @property
    def colors_used(self) -> int:
        return len(set(self.assignment.values()))


class ChromaticValue(BaseModel):
    """Exact chromatic number, or the interval known when the budget ran out."""

    exact: int | None = None
    lower: int
    upper: int


class BoundCheck(BaseModel):
    """One evaluated bound: name, relation, value and the literal comparison."""

    name: str
    relation: Literal["<=", ">="]
    value: int
    holds: bool | None = Field(None, description="Null when the chromatic interval straddles the bound.")
    source: str = ""


class SphereDecompositionInfo(BaseModel):
    spec: SphereSpec
    sphere_dimension: int
    remainder_dimension: int


class BoundsReport(BaseModel):
    """Bounds applicable to a certified pseudomanifold and whether they hold."""

    dimension: int
    chromatic: ChromaticValue
    applicable_bounds: list[BoundCheck] = Field(default_factory=list)
    conjecture_probes: list[BoundCheck] = Field(default_factory=list)
    decomposition: SphereDecompositionInfo | None = None

    @property
    def all_hold(self) -> bool:
        return all(b.holds is not False for b in self.applicable_bounds)


class Table1Row(BaseModel):
    d: int
    k: int
    sphere: str
    remainder_dimension: int
    sphere_chromatic: int
    remainder_chromatic_max: int
    chromatic_max: int
    ceiling: int
    recomputed_sphere_chromatic: int | None = None
    caption_remainder_max: int = Field(..., description="2(d-k) as the caption states it.")
    caption_mismatch: bool
    sum_consistent: bool
    ceiling_consistent: bool
    exceeds_ceiling: bool


class Table1Report(BaseModel):
    rows: list[Table1Row]
    caption_mismatch: bool
    notes: list[str] = Field(default_factory=list)


class ProbeRow(BaseModel):
    """A corpus instance evaluated against theorem bounds and conjecture probes."""

    name: str
    report: BoundsReport
    forest_palette: int | None = None


# ============================================================
# Duality
# ============================================================

class FiskDocument(BaseModel):
    odd_simplices: list[str] = Field(default_factory=list, description="Canonical labels of odd (d-2)-simplices.")
    subgraph: GraphDocument


class FiskJoinDocument(BaseModel):
    left: GraphDocument = Field(..., description="Generated subgraph of the join's odd simplices.")
    right: GraphDocument = Field(..., description="K + O(K') united with O(K) + K'.")
    agree: bool


class ForestPeelDocument(BaseModel):
    strategy: Literal["bfs", "dfs"]
    facets: list[str] = Field(..., description="Facet labels; forests refer to them by index.")
    forests: list[list[tuple[int, int]]]


class DualClassDocument(BaseModel):
    kind: Literal["empty", "whole", "complete", "pyramid", "subpseudomanifold", "unclassified"]
    dimension: int | None = None
    apex: str | None = None
    subgraph: GraphDocument
