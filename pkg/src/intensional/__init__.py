"""Extensional and Intensional Solutions to tasks over binary state variables."""

from .agents import Agent, abduct, decide, rationale, train_agent
from .errors import (
    CapacityError,
    ContradictionError,
    DimensionError,
    EmptyOstensiveError,
    GenerationError,
    InputError,
    MergeError,
    PropernessError,
    ScopeError,
    StatementSyntaxError,
    TaskError,
    TaskFileError,
)
from .harness import (
    ArchiveReport,
    EvalRecord,
    archive_study,
    eval_generalisation,
    gen_addition_task,
    gen_logic_task,
    gen_uniform_task,
    parse_generator,
    reward_ostensive,
    sample_efficiency_curve,
    write_csv,
)
from .induction import (
    InductionProblem,
    OneClassConfig,
    SolutionReport,
    SolverConfig,
    enumerate_all_solutions,
    extensional_solution,
    generality,
    intensional_solutions,
    is_solution,
    is_sufficient,
    meet,
    one_class_learn,
    prime_implicants,
    problem_from_ostensive,
    problem_from_task,
)
from .statement import (
    Literal,
    Statement,
    Term,
    encoding_length,
    evaluate,
    extension,
    parse_statement,
    print_statement,
    split_symbols,
    term_weakness,
    weakness,
)
from .task import (
    OstensiveDefinition,
    PartialAssignment,
    Task,
    completions,
    dump_task,
    is_subsequence,
    load_task,
    make_ostensive,
    merge_tasks,
    parse_task,
    reach,
    subdivide_task,
    validate_task,
)

__version__ = "0.1.0"
