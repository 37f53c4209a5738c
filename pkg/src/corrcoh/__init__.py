"""Correlated coherence, discord and protocol payoffs for two-qubit states."""

from ._accel import backend_name
from .linalg import SpectrumTriple, hermitian_eigen, partial_trace, singular_values_3x3
from .measures import (
    MeasureReport,
    correlated_coherence,
    entropic_discord,
    geometric_discord,
    measure_report,
    negativity,
)
from .rsp import (
    circular_average_payoff,
    min_average_payoff,
    optimal_alpha,
    optimal_payoff,
    simulate_rsp,
    spherical_average_payoff,
)
from .states import (
    BlochDecomposition,
    DensityMatrix,
    InvalidStateError,
    load_state,
    make_bell,
    make_bell_diagonal,
    make_product,
    make_werner,
    paper_channel_state,
    paper_product_state,
    pauli_decompose,
    random_density,
    reconstruct,
    save_state,
    validate,
)
from .teleport import TeleportReport, fidelity_discord_bounds, teleport_fidelity

__version__ = "0.1.0"
