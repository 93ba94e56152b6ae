"""Benchmark corpus: domain types, dataset adapters, order balancing, validation."""

from wqbench.corpus.types import (
    DATASETS,
    DATASET_ANNOTATORS,
    HUMAN_CATEGORIES,
    REFERENCE_MANIFEST,
    BenchmarkManifest,
    LampSample,
    Origin,
    PreferencePair,
    WritingSample,
    load_lamp_file,
    load_pair_file,
    write_pair_file,
)
from wqbench.corpus.adapters import (
    AdapterConfig,
    IngestResult,
    Rejection,
    ingest_dataset,
)
from wqbench.corpus.balance import AlreadyBalancedError, balance_orders, swap_pair
from wqbench.corpus.validate import ValidationReport, manifest_from_pairs, validate_manifest

__all__ = [
    "AdapterConfig",
    "AlreadyBalancedError",
    "BenchmarkManifest",
    "DATASETS",
    "DATASET_ANNOTATORS",
    "HUMAN_CATEGORIES",
    "IngestResult",
    "LampSample",
    "Origin",
    "PreferencePair",
    "REFERENCE_MANIFEST",
    "Rejection",
    "ValidationReport",
    "WritingSample",
    "balance_orders",
    "ingest_dataset",
    "load_lamp_file",
    "load_pair_file",
    "manifest_from_pairs",
    "swap_pair",
    "validate_manifest",
    "write_pair_file",
]
