"""Triadic attribute exploration: contexts, implications, lattices, sessions."""

from .context import (ContextFamily, FormalContext, ObjectRow, TriadicContext,
                      subposition)
from .errors import (FormatError, InconsistentAnswer, InvalidArgument,
                     PreconditionViolation, RejectedAnswer, TranscriptDivergence,
                     TriexError)
from .exploration import (Answer, ExplorationEngine, FamilyCounterexample,
                          FamilyOracleExpert, OracleExpert, Question,
                          ScriptedExpert, explore_conditions,
                          family_exploration, linear_extension,
                          next_extent_exploration, oracle_exploration,
                          run_with_expert, transcript_csv, triadic_exploration)
from .implications import (ConditionalImplication, Implication, canonical_base,
                           conditional_holds, follows, implication_holds,
                           l_closure, next_closure, render_implication,
                           respects)
from .lattice import (Concept, ImplicationConditionContext,
                      LabeledImplicationLattice, build_lattice, concepts,
                      conditional_implication_lattice, implication_lattice,
                      label_nodes)

__version__ = "0.1.0"

__all__ = [
    "Answer", "Concept", "ConditionalImplication", "ContextFamily",
    "ExplorationEngine", "FamilyCounterexample", "FamilyOracleExpert",
    "FormalContext", "FormatError", "Implication",
    "ImplicationConditionContext", "InconsistentAnswer", "InvalidArgument",
    "LabeledImplicationLattice", "ObjectRow", "OracleExpert",
    "PreconditionViolation", "Question", "RejectedAnswer", "ScriptedExpert",
    "TranscriptDivergence", "TriadicContext", "TriexError", "build_lattice",
    "canonical_base", "concepts", "conditional_holds",
    "conditional_implication_lattice", "explore_conditions",
    "family_exploration", "follows", "implication_holds",
    "implication_lattice", "l_closure", "label_nodes", "linear_extension",
    "next_closure", "next_extent_exploration", "oracle_exploration",
    "render_implication", "respects", "run_with_expert", "subposition",
    "transcript_csv", "triadic_exploration",
]
