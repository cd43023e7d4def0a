"""Exact minimum spanning trees under pairwise edge conflicts."""
from .bnc import SolverConfig, SolveResult, SolveStatus, build_root, select_cuts, solve
from .cliques import ConflictGraph, maximal_cliques
from .instance_io import (GeneratorSpec, Instance, InstanceFormatError, generate_instance,
                          parse_instance, read_instance, validate, write_instance)
from .pipeline import PipelineResult, solve_instance
from .preprocess import PreprocessOutcome, PreStatus, preprocess

__all__ = [
    "ConflictGraph", "GeneratorSpec", "Instance", "InstanceFormatError", "PipelineResult",
    "PreStatus", "PreprocessOutcome", "SolveResult", "SolveStatus", "SolverConfig",
    "build_root", "generate_instance", "maximal_cliques", "parse_instance", "preprocess",
    "read_instance", "select_cuts", "solve", "solve_instance", "validate", "write_instance",
]
