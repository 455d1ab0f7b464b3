"""Multi-window discrete Gabor systems on periodic subsets of the integers."""
from ._ext import BACKEND
from .constructor import construct_orthonormal, construct_parseval, dual_completion
from .correlation import CorrelationTable, autocorrelation_table, cross_correlation_table, energy_via_table
from .frame_analysis import FrameReport, analyze, dual_check, parseval_check, sufficient_bounds
from .periodic_set import PeriodicSet, make_periodic_set
from .signal import AtomIndex, GaborSystem, Window, analysis_coefficients, atom, make_system, synthesis

__version__ = "0.1.0"
