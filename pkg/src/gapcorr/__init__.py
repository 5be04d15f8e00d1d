"""Pair correlation statistics and gap spectra for sequences on the circle."""

from .experiments import (DEFAULT_S_GRID, DeviationReport, ExperimentConfig, convergence_report,
                          limit_nonexistence_probe, poissonian_deviation)
from .gaps import (BatchDecomposition, GapSpectrum, GapTrajectory, batch_decomposition,
                   classify_gaps, divergence_witness, gap_spectrum, three_gap_check)
from .generators import (GOLDEN, SQRT2_MINUS_1, FromFile, Kronecker, RootSequence, UniformRandom,
                         VanDerCorput, generate)
from .paircorr import (BACKEND, PairCorrelationCurve, pair_correlation_curve, pair_count_fast,
                       pair_count_naive)
from .torus import PointSet, TorusPoint, read_points, reduce_mod_1, torus_distance, write_points

__version__ = "0.1.0"
