# 전방 커널과 재생
from .filter import (
    BeliefHistory,
    belief_update,
    belief_update_batch,
    expected_reward,
    likelihood_table,
    replay_beliefs,
)

# belief 오차 상수
from .robustness import (
    BeliefErrorConstants,
    belief_error_constants,
    forgetting_constants,
    mu_error_norm,
    transition_error_norm,
)

__all__ = [
    # 전방 커널과 재생
    "BeliefHistory",
    "belief_update",
    "belief_update_batch",
    "expected_reward",
    "likelihood_table",
    "replay_beliefs",

    # belief 오차 상수
    "BeliefErrorConstants",
    "belief_error_constants",
    "forgetting_constants",
    "mu_error_norm",
    "transition_error_norm",
]
