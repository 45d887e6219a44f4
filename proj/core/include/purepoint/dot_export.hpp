#pragma once

#include "purepoint/overlap.hpp"
#include "purepoint/realization.hpp"

#include <string>

namespace purepoint {

// Graphviz rendering of the potential-overlap graph: one node per class
// labelled "i|j|z~(...)", coincidences double-circled, residual-part nodes
// dashed, edge labels carry multiplicities.
std::string graph_to_dot(const OverlapGraph& g, const GraphSplit& split, const Realization& realization);

} // namespace purepoint
