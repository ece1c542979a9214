"""Functional diffusion maps, functional PCA and functional Isomap."""

__version__ = "0.1.0"

from .basis import BSplineBasis, ClosedFormBasis, FourierBasis
from .diffusion import (DiffusionMap, DiffusionModel, DiffusionParams,
                        alpha_normalize, diffusion_distance, embed,
                        select_dimension, spectral_decompose,
                        stationary_distribution, transition_matrix)
from .embedding import Embedding
from .fdata import (BasisDataset, DiscretizedDataset, SamplingGrid, gram_matrix,
                    l1_distance, l2_distance, smooth_to_basis,
                    trapezoidal_weights)
from .fpca import FpcaModel, fpca, fpca_basis, fpca_discretized, fpca_scores
from .isomap import IsomapParams, isomap_embed
from .kernels import KernelMatrix, KernelSpec, build_kernel_matrix, kernel_value

__all__ = [
    "BSplineBasis", "ClosedFormBasis", "FourierBasis",
    "DiffusionMap", "DiffusionModel", "DiffusionParams", "alpha_normalize",
    "diffusion_distance", "embed", "select_dimension", "spectral_decompose",
    "stationary_distribution", "transition_matrix",
    "Embedding",
    "BasisDataset", "DiscretizedDataset", "SamplingGrid", "gram_matrix",
    "l1_distance", "l2_distance", "smooth_to_basis", "trapezoidal_weights",
    "FpcaModel", "fpca", "fpca_basis", "fpca_discretized", "fpca_scores",
    "IsomapParams", "isomap_embed",
    "KernelMatrix", "KernelSpec", "build_kernel_matrix", "kernel_value",
]
