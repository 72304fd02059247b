"""Scoring rules, their Bayes acts, and properized (proper) versions."""

from .distributions import (
    Bernoulli,
    Categorical,
    Dirac,
    Distribution,
    Gaussian,
    GridCdf,
    Mixture,
    OddsPowerTransform,
    Truncated,
    UniformInterval,
    convolve,
    discretize,
    from_literal,
)
from .families import FamilyDescriptor
from .properize import (
    Act,
    NoBayesAct,
    Properized,
    SimplexSearchConfig,
    bayes_act,
    finite_bayes_act,
    parametric_bayes_act,
    properized_score,
)
from .scores import RULES, Score, expected_score, rule_from_literal, score
from .verify import fixed_point_test, linear_score_descent, propriety_test

__version__ = "0.1.0"

__all__ = [
    "Bernoulli", "Categorical", "Dirac", "Distribution", "Gaussian", "GridCdf", "Mixture",
    "OddsPowerTransform", "Truncated", "UniformInterval", "convolve", "discretize", "from_literal",
    "FamilyDescriptor", "Act", "NoBayesAct", "Properized", "SimplexSearchConfig", "bayes_act",
    "finite_bayes_act", "parametric_bayes_act", "properized_score", "RULES", "Score",
    "expected_score", "rule_from_literal", "score", "fixed_point_test", "linear_score_descent",
    "propriety_test",
]
