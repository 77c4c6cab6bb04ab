"""Exception hierarchy shared by all hscluster modules."""


class HsclusterError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInputError(HsclusterError):
    """Malformed arguments: wrong shapes, non-finite values, empty inputs."""


class DomainError(HsclusterError):
    """A point lies outside the model space it was claimed to belong to."""


class DegenerateMetricError(HsclusterError):
    """A metric computation hit a degenerate configuration (e.g. coincident
    centroids, vanishing denominator)."""


class IsolatedVertexError(HsclusterError):
    """A graph vertex has (near-)zero degree; names the offending indices."""

    def __init__(self, indices, message=None):
        self.indices = list(indices)
        if message is None:
            message = (
                f"vertices {self.indices} are isolated (zero degree); "
                "consider raising the cutoff distance epsilon"
            )
        super().__init__(message)


class InvalidPartitionError(HsclusterError):
    """A partition passed to a cut objective has an empty side or zero volume."""


class PipelineStageError(HsclusterError):
    """Wraps an error raised inside a pipeline stage with the stage name."""

    def __init__(self, stage, original):
        self.stage = stage
        self.original = original
        super().__init__(f"stage '{stage}' failed: {original}")
