"""Exception taxonomy shared across the toolkit.

The CLI maps these onto exit codes: DataError -> 2, TrainingError and
StoreError -> 3. Everything else is a plain bug.
"""


class ToolkitError(Exception):
    """Base class for all toolkit-specific failures."""


class DataError(ToolkitError):
    """Bad input data: missing files, bad labels, empty corpora, capacity."""


class ParseError(DataError):
    """Malformed CSV row; the message names the offending row number."""


class ShapeError(ToolkitError):
    """Dimension mismatch between arrays, models, or feature spaces."""


class TrainingError(ToolkitError):
    """Degenerate training data or numerical divergence during fitting."""


class StoreError(ToolkitError):
    """Artifact serialization problems."""


class ChecksumError(StoreError):
    """Payload bytes do not match the checksum recorded in the manifest."""


class VersionError(StoreError):
    """Artifact was written with an unsupported format version."""


class FormatError(StoreError):
    """Manifest and payload disagree (shapes, offsets, missing tensors)."""
