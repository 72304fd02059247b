"""Exception hierarchy shared by all modules."""


class ProperizationError(Exception):
    """Base class for every error raised by this package."""


class InvalidDistribution(ProperizationError, ValueError):
    """Distribution parameters violate their invariants."""


class NoDensity(ProperizationError):
    """The distribution has atoms and therefore no Lebesgue density."""


class UnboundedSupport(ProperizationError):
    """A numeric grid cannot cover the required probability mass."""


class IncompatibleRule(ProperizationError, ValueError):
    """The (rule, forecast, outcome) combination is outside the rule's domain."""


class DegenerateForecast(IncompatibleRule):
    """The forecast has zero variance where the rule needs a positive one."""


class WeightMassZero(ProperizationError):
    """The weight function integrates to zero against the forecast."""


class QuadratureFailure(ProperizationError):
    """Adaptive quadrature did not reach the requested tolerance."""


class BudgetExceeded(ProperizationError):
    """A search ran out of iterations before converging."""


class InvalidShape(ProperizationError, ValueError):
    """A density violates the shape assumptions of a construction."""


class NoBayesActError(ProperizationError):
    """Raised when a properized score is requested but no Bayes act exists.

    The ``result`` attribute holds the :class:`~properization.properize.NoBayesAct`
    report, including its descent certificate.
    """

    def __init__(self, result):
        super().__init__(result.reason)
        self.result = result
