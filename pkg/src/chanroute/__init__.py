"""Channel routing toolkit: instance model, constraint graphs, routers,
validation, metrics, and export."""

from .constraints import (
    ConstraintGraphs,
    analyze,
    build_hcg,
    build_vcg,
    channel_density,
    find_vcg_cycle,
)
from .layout import (
    Metrics,
    RoutedChannel,
    Segment,
    Via,
    Violation,
    metrics,
    validate,
)
from .netlist import (
    ChannelSpec,
    FeatureVector,
    Net,
    NetlistError,
    Terminal,
    extract_features,
    nets_of,
    parse_netlist,
    serialize_netlist,
)
from .router import (
    CyclicVcg,
    Failure,
    InstanceFamily,
    RouterConfig,
    RowSelectionPolicy,
    RowsExhausted,
    StrategyBank,
    decompose_multiterminal,
    parse_bank,
    route_adaptive,
    route_dogleg,
    route_left_edge,
    select_row,
    train_bank,
)

__all__ = [
    "ChannelSpec",
    "ConstraintGraphs",
    "CyclicVcg",
    "Failure",
    "FeatureVector",
    "InstanceFamily",
    "Metrics",
    "Net",
    "NetlistError",
    "RoutedChannel",
    "RouterConfig",
    "RowSelectionPolicy",
    "RowsExhausted",
    "Segment",
    "StrategyBank",
    "Terminal",
    "Via",
    "Violation",
    "analyze",
    "build_hcg",
    "build_vcg",
    "channel_density",
    "decompose_multiterminal",
    "extract_features",
    "find_vcg_cycle",
    "metrics",
    "nets_of",
    "parse_bank",
    "parse_netlist",
    "route_adaptive",
    "route_dogleg",
    "route_left_edge",
    "select_row",
    "serialize_netlist",
    "train_bank",
    "validate",
]
