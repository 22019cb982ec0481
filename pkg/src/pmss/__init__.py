"""Process of Multiple Sequences Sets: split sequences into capacity-bounded
sets and build a short common supersequence (process sequence) for each."""

__version__ = "0.1.0"

from .baselines import greedy_a, greedy_d, pairwise_scs
from .core import (
    BINARY,
    DNA,
    Alphabet,
    BudgetError,
    CapacityError,
    EmptySetError,
    InvalidSymbolError,
    MultiSequencesSets,
    NotSupersequenceError,
    ParameterError,
    Partition,
    PMSSError,
    SchemaError,
    Sequence,
    SequencesSet,
    ShortSequenceError,
    alphabet_content,
    set_alphabet_content,
    subset_content,
)
from .dataio import GeneratorSpec, generate, load_fasta, load_lines, load_partition, save_partition
from .deposition import (
    DepositionResult,
    LookAheadParams,
    alphabet_deposit,
    completion_steps,
    deposit,
    is_common_supersequence,
    la_sh_deposit,
    lap_deposit,
    lap_reduce,
    sh_deposit,
)
from .distribution import dda_distribute, dda_star_distribute, extract_features
from .estimators import DDA, AlphabetSolver, DDAStar, ExhaustiveSolver, GreedyA, GreedyD
from .exact import exhaustive_optimal, lower_bound, scs_dp
from .metrics import CostReport, cost_mm, cost_sc, performance_ratio
from .pipeline import compare, solve
