"""EFX orientations of bi-valued symmetric multigraphs."""

from .circuit import Circuit, CircuitError, Gate, evaluate, normalize_circuit, parse_circuit
from .core import (HEAVY, LIGHT, Edge, EdgeClass, Instance, Orientation, ParallelClass,
                   all_utilities, multiplicity, new_instance, parallel_classes, utility,
                   utility_of_bundle_to)
from .fairness import EnvyReport, envies, envy_report, is_ef, is_efx, is_pef_pair, strongly_envies
from .generate import (GenerationError, gen_random_instance, heavy_edge_with_light_loops,
                       repair_forbidden)
from .io import FormatError, dumps_instance, dumps_orientation, loads_instance, loads_orientation
from .oracle import (OracleBudgetExceeded, all_efx_orientations, count_efx_orientations,
                     enumerate_orientations, exists_efx_orientation, representative_count)
from .reduction import (ReductionError, ReductionMap, build_instance,
                        construct_orientation_from_assignment, extract_assignment,
                        verify_reduction_properties)
from .solver import SolveOutcome, extend_pair, finish_matching, orient_all_but_matching, solve, \
    two_agent_efx_split
from .structure import (ComponentKind, HeavyComponentInfo, analyze, classify_heavy_component,
                        connected_components, has_forbidden_structure, heavy_components,
                        is_bipartite, is_multitree, is_odd_multitree)

__version__ = "0.1.0"
