#include "purepoint/dot_export.hpp"

#include <iomanip>
#include <sstream>

namespace purepoint {

std::string graph_to_dot(const OverlapGraph& g, const GraphSplit& split, const Realization& realization) {
    std::ostringstream os;
    os << "digraph overlap {\n";
    os << "  rankdir=LR;\n";
    os << "  node [fontsize=10];\n";
    for (std::size_t v = 0; v < g.vertices.size(); ++v) {
        const OverlapClass& c = g.vertices[v];
        Eigen::VectorXd z = realize(realization, c.shift);
        os << "  v" << v << " [label=\"" << c.colour_left + 1 << "|" << c.colour_right + 1 << "|z~(";
        for (int t = 0; t < z.size(); ++t) {
            if (t) os << ",";
            os << std::setprecision(4) << z(t);
        }
        os << ")\"";
        if (g.coincidence[v]) os << ", shape=doublecircle";
        if (!split.in_coin[v]) os << ", style=dashed";
        os << "];\n";
    }
    for (std::size_t v = 0; v < g.vertices.size(); ++v)
        for (const auto& [to, mult] : g.adj[v])
            os << "  v" << v << " -> v" << to << " [label=\"" << mult << "\"];\n";
    os << "}\n";
    return os.str();
}

} // namespace purepoint
