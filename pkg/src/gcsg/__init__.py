"""Exact coalition structure generation over graphs.

Find the partition of a graph's nodes that maximises the sum of
per-coalition values, for valuation functions where disconnected nodes
do not affect each other's marginal contribution. Three exact solvers
(exhaustive forest search, tree-decomposition dynamic programming, and a
brute-force oracle), decomposition construction, and a CLI/benchmark
front end.
"""

from .errors import GcsgError, InputError, InternalCheckError, TooLarge
from .graph import (
    Graph,
    build_graph,
    connected_components,
    induced_subgraph,
    is_coalition_connected,
)
from .families import (
    cycle_graph,
    family_graph,
    grid_dims,
    grid_graph,
    path_graph,
    random_graph,
    random_tree,
    star_graph,
    with_random_labels,
    with_random_weights,
)
from .partition import (
    CoalitionStructure,
    bell_number,
    decode,
    encode,
    enumerate_partitions,
    merge_union,
    restrict,
    split_connected,
    structure_value,
)
from .valuation import (
    Valuation,
    ValuationSpec,
    bind_valuation,
    check_idm,
    check_separator_additivity,
    coordination_value,
    correlation_value,
    edge_sum_value,
    modularity_value,
    table_value,
)
from .treedecomp import (
    DPScaffold,
    TreeDecomposition,
    build_scaffold,
    default_root,
    greedy_separator,
    grid_separator,
    make_grid_finder,
    min_fill_decompose,
    restrict_decomposition,
    separator_decompose,
    validate,
    width,
)
from .solvers import (
    DPTable,
    SolveResult,
    dp_fill,
    dp_reconstruct,
    solve,
    solve_exhaustive,
    solve_oracle,
    solve_treedp,
)
from .fileio import (
    Problem,
    parse_decomposition,
    parse_problem,
    serialize_decomposition,
    serialize_problem,
    serialize_result,
)

__version__ = "0.1.0"
