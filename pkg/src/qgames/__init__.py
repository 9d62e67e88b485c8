"""Classical, correlated and quantum equilibria for small two-player games."""

from .builtins import (
    anti_coordination_game,
    noisy_signal_environment,
    prisoners_dilemma,
    red_green_game,
    red_green_type_a,
    red_green_type_b,
)
from .environments import (
    Environment,
    RandomVariable,
    SampleSpace,
    chain_disagreement_bound,
    close_environment,
    env_payoff,
    is_correlated_equilibrium,
    is_env_nash,
    joint_distribution,
    realize_joint,
)
from .ewl import (
    ALT_ASSIGNMENT,
    DEFAULT_ASSIGNMENT,
    MixedQuatStrategy,
    OutcomeAssignment,
    best_response_matrix,
    calibrate,
    ewl_direct,
    is_quat_equilibrium,
    mixed_quat_payoff,
    quat_payoff,
)
from .games import (
    Game,
    MixedStrategy,
    expected_payoff,
    mixed_nash_small,
    payoff,
    pure_nash,
)
from .pennyflip import (
    F_OP,
    MEYER_U,
    N_OP,
    meyer_cheat_check,
    penny_game,
    run_sequential,
    run_simple,
)
from .private_info import (
    PrivateInfoGame,
    check_commute,
    game_of_env,
    sharp_environment,
    sharp_game,
)
from .quantum import (
    StateVector,
    UnitaryOp,
    apply_local,
    bell_chain_demo,
    entangled_pair,
    measure_joint,
    rotation,
)
from .quantum_games import (
    InfoStrategy,
    QuantumEnvironment,
    ROTATIONS,
    best_response_rotation,
    classical_value_bound,
    is_private_quantum_equilibrium,
    is_quantum_equilibrium,
    private_quantum_payoff,
    qgame_payoff,
    quantum_profile_joint,
    rotation_environment,
)
from .quaternions import Quaternion, quat_mul

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
