"""Entanglement dynamics of accelerated atoms near a reflecting boundary."""

__version__ = "0.1.0"

from .coefficients import (
    CoefficientSet,
    CorrelationTensor,
    PhysicalConfig,
    assemble,
    assemble_free_space,
    f_cross,
    f_single,
    g_cross_vertical,
    h_cross_parallel,
    h_self,
    near_boundary_expansion,
    spectral_prefactor,
    spectral_tensor,
    tensors_vertical,
)
from .correlations import (
    CorrelationKernel,
    OracleResult,
    QuadratureSettings,
    TrajectoryParams,
    electric_correlation,
    fourier_oracle,
)
from .dynamics import (
    DynamicsFrozenError,
    Generator,
    Trajectory,
    XState,
    build_generator,
    propagate,
    steady_state,
)
from .entanglement import (
    EntanglementEvents,
    analyze_events,
    concurrence_curve,
    concurrence_oracle,
    concurrence_x,
    scan_trajectory,
)
from .sweeps import FigurePreset, SweepSpec, figure_presets, run_sweep
