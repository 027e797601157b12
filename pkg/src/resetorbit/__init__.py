"""Reset-feedback mass-spring-damper: exact hybrid simulation, periodic orbit, Lyapunov certificates."""
from .dynamics import (
    State,
    SystemParams,
    apply_jump,
    eigenvalues,
    flow_map,
    flow_samples,
    in_C0,
    in_flow_set,
    in_jump_set,
    make_params,
    propagate,
)
from .energy import (
    EnergySplit,
    dissipation,
    dissipation_area_oracle,
    energy_split,
    lyapunov,
    lyapunov_energy_form,
    total_energy,
)
from .errors import (
    BracketNotFound,
    DomainError,
    HorizonExceeded,
    InvalidStart,
    MissingBranch,
    NonPositiveParameter,
    NotUnderdamped,
    OriginInput,
    ResetOrbitError,
)
from .events import CrossingResult, Piece, time_back_to_C0, time_to_D
from .hybridsim import HybridArc, OriginPolicy, ResetLaw, jump_times, simulate
from .orbit import OrbitSolution, distance_to_attractor, find_periodic_orbit, return_speed

__version__ = "0.1.0"
