"""Hyperbolic and Euclidean spectral clustering toolkit.

Pipelines: HSCA (full hyperbolic), HLSC-K (landmark), FHSC (fast pre-cluster)
and their Euclidean mirrors ESCA / ELSC-K / FESC, plus evaluation metrics and
a Monte Carlo verification suite for the kernel theory.
"""

__version__ = "0.1.0"

from ._backend import backend_name
from .affinity import AffinityMatrix, KernelKind, KernelSpec
from .clustering import Clustering, KMeansConfig, kmeans
from .dataio import EuclideanDataset, load_csv, save_csv
from .errors import (
    DegenerateMetricError,
    DomainError,
    HsclusterError,
    InvalidInputError,
    InvalidPartitionError,
    IsolatedVertexError,
    PipelineStageError,
)
from .geometry import GeometryConfig, dist_disc, embed_to_disc, frechet_mean
from .metrics import EvaluationReport, ari, evaluate, nmi
from .pipelines import (
    ALGORITHMS,
    PipelineConfig,
    PipelineResult,
    run,
    run_elsck,
    run_esca,
    run_fesc,
    run_fhsc,
    run_hlsck,
    run_hsca,
)

__all__ = [
    "ALGORITHMS",
    "AffinityMatrix",
    "Clustering",
    "DegenerateMetricError",
    "DomainError",
    "EuclideanDataset",
    "EvaluationReport",
    "GeometryConfig",
    "HsclusterError",
    "InvalidInputError",
    "InvalidPartitionError",
    "IsolatedVertexError",
    "KMeansConfig",
    "KernelKind",
    "KernelSpec",
    "PipelineConfig",
    "PipelineResult",
    "PipelineStageError",
    "ari",
    "backend_name",
    "dist_disc",
    "embed_to_disc",
    "evaluate",
    "frechet_mean",
    "kmeans",
    "load_csv",
    "nmi",
    "run",
    "run_elsck",
    "run_esca",
    "run_fesc",
    "run_fhsc",
    "run_hlsck",
    "run_hsca",
    "save_csv",
    "__version__",
]
