"""Dominance-based rough set analysis: approximations, rules, ranking."""

from drsa.approximation import (ConsistencyThreshold, Measure, UnionApproximation, approximate_all,
                                consistency_epsilon, consistency_mu, drsa_approximation,
                                irsa_approximation, quality_of_approximation, vc_approximation, vc_lower)
from drsa.dominance import (DominanceCone, Sense, Variant, cone, dominates, indiscernibility_class,
                            per_criterion_outranks)
from drsa.errors import DomainError, DrsaError, ParseError, ValidationError
from drsa.rules import (Certainty, DecisionRule, ElementaryCondition, Relation, classify, induce_rules,
                        rule_consistency, rule_covers)
from drsa.table import (DONT_CARE, LOST, Attribute, ClassUnion, DecisionTable, Direction, Kind,
                        class_union, weak_preference)

__version__ = "0.1.0"
