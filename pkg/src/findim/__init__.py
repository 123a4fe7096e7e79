"""findim: exact Hausdorff-style and box-counting dimensions of finite metric spaces.

The usual fractal dimensions vanish on finite sets; requiring every covering
set to hold at least two points makes them nontrivial again. This package
computes both resulting dimensions exactly (branch-and-bound cover search
plus monotone root finding), together with the supporting machinery: metric
summaries and focal points, power-law distance transforms, the classical
example families, grid approximation of compact sets, and nearest-neighbor
meaningfulness audits.
"""

from . import errors
from ._kernel import HAVE_COMPILED, backend_name
from .cover import (
    CoverClass,
    CoverProfile,
    CoverSet,
    OracleResult,
    ThresholdGraph,
    TwoCover,
    brute_force_oracle,
    candidates,
    classify,
    cover_measure,
    min_cover_count,
    min_weighted_cover,
    threshold_graph,
)
from .dimension import (
    DimensionKind,
    DimensionResult,
    MassCertificate,
    MassDistribution,
    box_dimension,
    cover_exponent,
    dimension_bounds,
    hausdorff_dimension,
    locally_uniform_dimension,
    mass_lower_bound,
    oracle_hausdorff_dimension,
    witness_dimension_below,
)
from .families import (
    FamilyInfo,
    FamilySpec,
    build,
    cantor_level,
    cantor_square_level,
    carpet_cardinality,
    carpet_enumerated_cardinality,
    carpet_level,
    double_pair,
    fold_level,
    linear,
    linf_cube_spike,
    realize_dimension,
    sierpinski_level,
    sierpinski_tetra_level,
    triangle,
)
from .lattice import (
    CantorDustOracle,
    ConvergenceRow,
    ConvergenceTable,
    CubeOracle,
    FilledBoxOracle,
    LatticeApprox,
    PointSampleOracle,
    TInequalityReport,
    check_T_inequalities,
    convergence_table,
    family_convergence,
    hausdorff_distance,
    lattice_approx,
    oracle_convergence,
)
from .metric import (
    FiniteMetric,
    LatticeData,
    MetricSummary,
    PointCloud,
    from_points,
    is_collinear,
    summarize,
)
from .nn import NearestReport, audit, nearest_point_function
from .transforms import HolderParams, ScalingReport, double, holder_transform, verify_scaling

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
