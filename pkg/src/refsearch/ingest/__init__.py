"""Ingestion pipeline: detector exports + commit metadata -> validated cases."""

from .commits import CommitRecord, MissingCommitsError, fetch_commit_records
from .convert import ConversionResult, convert, derive_extract_method_fields, derive_rename_fields
from .detectors import (
    DetectorParseError,
    DetectorRecord,
    ElementRef,
    ParsedDetectorOutput,
    parse_refdiff_output,
    parse_rminer_output,
    run_detector_command,
)
from .jobs import (
    STAGE_NAMES,
    DetectorInput,
    IngestJob,
    JobRegistry,
    JobRequest,
    run_job,
    submit_async,
    validate_request,
)

__all__ = [
    "CommitRecord",
    "ConversionResult",
    "DetectorInput",
    "DetectorParseError",
    "DetectorRecord",
    "ElementRef",
    "IngestJob",
    "JobRegistry",
    "JobRequest",
    "MissingCommitsError",
    "ParsedDetectorOutput",
    "STAGE_NAMES",
    "convert",
    "derive_extract_method_fields",
    "derive_rename_fields",
    "fetch_commit_records",
    "parse_refdiff_output",
    "parse_rminer_output",
    "run_detector_command",
    "run_job",
    "submit_async",
    "validate_request",
]
