"""
Logic-program engine: grounding, acyclicity checking and solving.
"""

from xacml_analyzer.engine.acyclicity import AcyclicityResult, LevelMapping, check_acyclic
from xacml_analyzer.engine.ground_program import (
    AnswerSet,
    GroundChoice,
    GroundProgram,
    GroundRule,
)
from xacml_analyzer.engine.grounder import Grounder, ground
from xacml_analyzer.engine.solver import Solver, enumerate_models, solve_unique

__all__ = [
    # Ground programs
    "GroundProgram",
    "GroundRule",
    "GroundChoice",
    "AnswerSet",
    # Grounding
    "Grounder",
    "ground",
    # Acyclicity
    "check_acyclic",
    "LevelMapping",
    "AcyclicityResult",
    # Solving
    "Solver",
    "solve_unique",
    "enumerate_models",
]
