"""Verification toolkit for structure-conditioned 4-choosability of planar
graphs: structural condition detection, even/odd Eulerian orientation
certificates, reducible-configuration extension checks, and an
exact-rational discharging engine."""

from .core import (
    Face,
    Graph,
    Orientation,
    PlaneGraph,
    build_graph,
    faces_of,
    orientations_with_max_outdegree,
    parse_graph6,
    write_graph6,
)
from .structures import (
    ConditionReport,
    TrioOccurrence,
    VertexRole,
    check_condition,
    classify_role,
    enumerate_cycles,
    find_fixed_configs,
    find_trios,
)
from .alon_tarsi import (
    AtCertificate,
    EulerianCount,
    count_eulerian,
    find_certificate,
    verify_at_applicable,
)
from .choosability import (
    ListAssignment,
    ReducibleConfig,
    check_extension,
    check_extension_with_rechoice,
    is_k_choosable,
    l_color,
    verify_min_degree,
)
from .discharging import (
    ChargeLedger,
    RuleSet,
    TransferRecord,
    apply_rules,
    final_report,
    initial_charges,
)

__version__ = "0.1.0"
