"""
SEEU 벤치마크 전역 예외 정의.

모든 도메인 예외는 SeeuError를 상속한다. 상위 루프(벤치 스윕, CLI)는 SeeuError만 잡아서
기록하고 계속 진행하거나 종료 코드로 변환한다.
"""


class SeeuError(Exception):
    """SEEU 벤치마크 예외의 최상위 클래스"""


# ---------------------------------------------------------------------------
# 모델 검증 (가정 1~3)
# ---------------------------------------------------------------------------

class ModelValidationError(SeeuError):
    """모델이 가정을 위반했을 때 발생한다. assumption에 위반한 가정 이름이 담긴다."""

    assumption = "model"

    def __init__(self, message: str):
        super().__init__(f"[{self.assumption}] {message}")


class RowsNotStochastic(ModelValidationError):
    assumption = "row-stochastic P"


class SingularTransition(ModelValidationError):
    assumption = "invertible Markov chain"


class RankDeficientRewards(ModelValidationError):
    assumption = "full row rank mean reward matrix"


class MeanOutOfRange(ModelValidationError):
    assumption = "Bernoulli means strictly inside (0, 1)"


class ZeroTransitionEntry(ModelValidationError):
    assumption = "positive minimum transition entry"


class NoUniqueStationary(SeeuError):
    """정상 분포 선형계가 수치적으로 특이할 때"""


class DegenerateLikelihood(SeeuError):
    """belief 갱신의 정규화 상수가 사실상 0일 때 (입력이 손상된 경우에만 발생)"""


# ---------------------------------------------------------------------------
# 스펙트럴 추정
# ---------------------------------------------------------------------------

class EstimationError(SeeuError):
    """스펙트럴 추정 파이프라인 실패. SEEU 에이전트는 이 클래스를 잡아 균등 탐색으로 대체한다."""


class InsufficientData(EstimationError):
    pass


class IllConditionedMoments(EstimationError):
    pass


class WhiteningFailure(EstimationError):
    pass


class NonConvergence(EstimationError):
    pass


class DegenerateColumn(EstimationError):
    pass


# ---------------------------------------------------------------------------
# 플래너
# ---------------------------------------------------------------------------

class PlannerError(SeeuError):
    pass


class GridTooLarge(PlannerError):
    pass


class NotConverged(PlannerError):
    """상대 가치 반복이 max_iter 안에 수렴하지 않음. solution에 마지막 반복값이 담긴다."""

    def __init__(self, message: str, solution=None):
        super().__init__(message)
        self.solution = solution


# ---------------------------------------------------------------------------
# 벤치마크 / 설정
# ---------------------------------------------------------------------------

class NonPositiveRegret(SeeuError):
    pass


class ConfigError(SeeuError):
    pass


class InvariantViolation(SeeuError):
    pass
