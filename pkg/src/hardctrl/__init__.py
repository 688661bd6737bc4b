"""hardctrl: trap-laden quantum gate synthesis benchmarks and optimizers.

Two deliberately hard piecewise-constant control problems (a qutrit
phase gate with a certified landscape trap at the zero field and an
Ising-driven CNOT near its minimal gate time), exact-gradient fidelity
machinery, nine optimizers (simplex, BFGS, sequential bin updates,
genetic, differential evolution, four particle swarms) and a seeded
benchmark harness with success-rate statistics.
"""

__version__ = "0.1.0"

from .linalg import (
    ComplexMatrix,
    HermitianMatrix,
    MatrixError,
    UnitaryMatrix,
    expm_hermitian,
    kron,
    trace_inner,
)
from .model import (
    ControlField,
    ControlProblem,
    ObjectiveEvaluation,
    fd_hessian,
    fidelity,
    gradient,
    log_infidelity,
    propagate,
)
from .problems import (
    CnotSpec,
    QutritSpec,
    make_cnot_problem,
    make_qutrit_problem,
    problem_by_name,
)
from .optimizers import (
    Objective,
    OptimizerConfig,
    OptimizerTrace,
    control_objective,
    default_config,
    initialize_population,
    run,
)
from .harness import (
    BenchmarkReport,
    RunRecord,
    export_convergence,
    repeated_short_runs,
    run_suite,
    summarize,
)

__all__ = [
    "BenchmarkReport",
    "CnotSpec",
    "ComplexMatrix",
    "ControlField",
    "ControlProblem",
    "HermitianMatrix",
    "MatrixError",
    "Objective",
    "ObjectiveEvaluation",
    "OptimizerConfig",
    "OptimizerTrace",
    "QutritSpec",
    "RunRecord",
    "UnitaryMatrix",
    "control_objective",
    "default_config",
    "expm_hermitian",
    "export_convergence",
    "fd_hessian",
    "fidelity",
    "gradient",
    "initialize_population",
    "kron",
    "log_infidelity",
    "make_cnot_problem",
    "make_qutrit_problem",
    "problem_by_name",
    "propagate",
    "repeated_short_runs",
    "run",
    "run_suite",
    "summarize",
    "trace_inner",
]
