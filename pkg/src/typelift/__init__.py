"""Type checking and grammar induction for pivotal, compact closed and self-dual type systems."""

from .errors import TypeliftError
from .kernel import Functor, Signature, System, Type, format_type, parse_type
from .redcheck import Matching, Target, is_grammatical, reduces
from .functional import is_functional, lambek_image, lambek_witness
from .corpus import Lexicon, Sentence, TrainingSample, load_sample, parse_sample, serialize_sample
from .solver import InductionProblem, InductionSolution, UNSAT, enumerate_solutions, solve, verify_solution

__version__ = "0.1.0"

__all__ = [
    "TypeliftError", "Functor", "Signature", "System", "Type", "format_type", "parse_type",
    "Matching", "Target", "is_grammatical", "reduces",
    "is_functional", "lambek_image", "lambek_witness",
    "Lexicon", "Sentence", "TrainingSample", "load_sample", "parse_sample", "serialize_sample",
    "InductionProblem", "InductionSolution", "UNSAT", "enumerate_solutions", "solve", "verify_solution",
]
