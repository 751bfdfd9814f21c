"""Unimodal splitting of univariate data and uniform-mixture modeling."""

from .dataset import Dataset, Ecdf, PiecewiseLinearCdf, ecdf_eval, make_dataset, merge_datasets, pl_eval
from .hull import CriticalPoint, GLSet, PointKind, gcm_points, gl_set, lcm_points
from .splitting import MDPoint, SplitResult, find_vp, merge_pass, multimodality_degree, unisplit
from .stats import KsResult, ks_two_sample, ks_uniformity, nmi
from .synth import DistSpec, builtin, builtin_names, sample_mixture, sample_spec
from .udmm import UDMM, ModelFormatError, fit_udmm, load_model, save_model
from .uutest import UMM, Candidate, UUOutcome, uu_test

__version__ = "0.1.0"

__all__ = [
    "Dataset", "Ecdf", "PiecewiseLinearCdf", "make_dataset", "merge_datasets",
    "ecdf_eval", "pl_eval",
    "CriticalPoint", "GLSet", "PointKind", "gcm_points", "lcm_points", "gl_set",
    "KsResult", "ks_uniformity", "ks_two_sample", "nmi",
    "UMM", "Candidate", "UUOutcome", "uu_test",
    "MDPoint", "SplitResult", "multimodality_degree", "find_vp", "unisplit", "merge_pass",
    "UDMM", "ModelFormatError", "fit_udmm", "save_model", "load_model",
    "DistSpec", "sample_spec", "sample_mixture", "builtin", "builtin_names",
    "__version__",
]
