"""Exact solvers for group identification and group control by adding individuals."""

from .core import (
    Digraph,
    IndividualSet,
    Profile,
    incidence_graph,
    iset,
    merge,
    qualified_by,
    restrict,
)
from .domains import (
    LinearOrder,
    is_dqc_under,
    is_qc_under,
    recognize_dqc,
    recognize_qc,
)
from .errors import CapacityError, GroupctlError, InputError, ParseError
from .gcai import (
    GcaiInstance,
    SolveResult,
    apply_reduction_rule_csr,
    apply_reduction_rule_lsr,
    solve_auto,
    solve_bruteforce,
    solve_csr_fpt,
    solve_csr_qc,
    solve_dqc,
    solve_lsr_fpt,
    verify,
)
from .reductions import (
    RbdsInstance,
    certificate_to_dominating_set,
    rbds_to_gcai_csr,
    rbds_to_gcai_lsr_qc,
    solve_rbds_bruteforce,
)
from .rules import Rule, initial_set, socially_qualified, socially_qualified_naive
from .steiner import (
    DstInstance,
    DvwstInstance,
    dvwst_to_dst,
    solve_dst_min,
    solve_dvwst,
)

__version__ = "0.1.0"
