#pragma once

#include <optional>
#include <string>
#include <vector>

namespace purepoint {

// Directed multigraph with positive integer edge multiplicities, stored as
// adjacency lists. The spectral radius of a graph is the largest-modulus
// eigenvalue of its multiplicity matrix.
struct MultiDigraph {
    int order = 0;
    std::vector<std::vector<std::pair<int, long long>>> adj;

    void resize(int n) { order = n; adj.assign(static_cast<std::size_t>(n), {}); }
    void add_edge(int from, int to, long long multiplicity);
    long long edge_count() const;
};

// Maximal strongly connected components in reverse-topological order
// (every edge leaves a later component for an earlier one). Iterative Tarjan.
std::vector<std::vector<int>> strongly_connected_components(const MultiDigraph& g);

struct SccRadius {
    std::vector<int> vertices;
    double rho = 0.0;
};

// Perron value of one strongly connected component, by power iteration on the
// +I shifted matrix with Collatz-Wielandt brackets. Errors: NoConvergence
// (carries the best bracket in the message).
double component_radius(const MultiDigraph& g, const std::vector<int>& component,
                        double tol = 1e-10, long long iteration_cap = 100000);

std::vector<SccRadius> scc_radii(const MultiDigraph& g, double tol = 1e-10);

// Max over components; 0 for the empty graph.
double spectral_radius(const MultiDigraph& g, double tol = 1e-10);

enum class Verdict { PurePoint, NotPurePoint, Unreliable };
enum class MeyerStatus { Yes, No, Unknown };

const char* verdict_name(Verdict v);
const char* meyer_name(MeyerStatus m);

// rho_coin > rho_res + tol decides pure pointedness; anything that undermined
// the run (meyer != yes, caps hit) downgrades to Unreliable.
Verdict decide_verdict(double rho_coin, double rho_res, double beta, MeyerStatus meyer,
                       bool caps_hit, double tol_verdict);

// Pseudo-norm Hausdorff dimension of tile boundaries, d*log(rho_res)/log(beta).
// Pre: 1 <= rho_res < beta, beta > 1. Errors: DomainError.
double boundary_dimension(int dim, double rho_res, double beta);

} // namespace purepoint
