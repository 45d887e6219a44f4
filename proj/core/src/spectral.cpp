#include "purepoint/spectral.hpp"
#include "purepoint/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace purepoint {

void MultiDigraph::add_edge(int from, int to, long long multiplicity) {
    for (auto& [t, m] : adj[static_cast<std::size_t>(from)]) {
        if (t == to) {
            m += multiplicity;
            return;
        }
    }
    adj[static_cast<std::size_t>(from)].push_back({to, multiplicity});
}

long long MultiDigraph::edge_count() const {
    long long n = 0;
    for (const auto& a : adj) n += static_cast<long long>(a.size());
    return n;
}

std::vector<std::vector<int>> strongly_connected_components(const MultiDigraph& g) {
    int n = g.order;
    std::vector<int> index(static_cast<std::size_t>(n), -1);
    std::vector<int> low(static_cast<std::size_t>(n), 0);
    std::vector<char> on_stack(static_cast<std::size_t>(n), 0);
    std::vector<int> stack;
    std::vector<std::vector<int>> components;
    int counter = 0;

    struct Frame {
        int vertex;
        std::size_t edge;
    };
    std::vector<Frame> call;

    for (int start = 0; start < n; ++start) {
        if (index[static_cast<std::size_t>(start)] != -1) continue;
        call.push_back({start, 0});
        index[static_cast<std::size_t>(start)] = low[static_cast<std::size_t>(start)] = counter++;
        stack.push_back(start);
        on_stack[static_cast<std::size_t>(start)] = 1;
        while (!call.empty()) {
            Frame& f = call.back();
            const auto& edges = g.adj[static_cast<std::size_t>(f.vertex)];
            if (f.edge < edges.size()) {
                int w = edges[f.edge].first;
                ++f.edge;
                if (index[static_cast<std::size_t>(w)] == -1) {
                    index[static_cast<std::size_t>(w)] = low[static_cast<std::size_t>(w)] = counter++;
                    stack.push_back(w);
                    on_stack[static_cast<std::size_t>(w)] = 1;
                    call.push_back({w, 0});
                } else if (on_stack[static_cast<std::size_t>(w)]) {
                    low[static_cast<std::size_t>(f.vertex)] =
                        std::min(low[static_cast<std::size_t>(f.vertex)], index[static_cast<std::size_t>(w)]);
                }
            } else {
                int v = f.vertex;
                call.pop_back();
                if (!call.empty())
                    low[static_cast<std::size_t>(call.back().vertex)] =
                        std::min(low[static_cast<std::size_t>(call.back().vertex)], low[static_cast<std::size_t>(v)]);
                if (low[static_cast<std::size_t>(v)] == index[static_cast<std::size_t>(v)]) {
                    std::vector<int> comp;
                    while (true) {
                        int w = stack.back();
                        stack.pop_back();
                        on_stack[static_cast<std::size_t>(w)] = 0;
                        comp.push_back(w);
                        if (w == v) break;
                    }
                    std::sort(comp.begin(), comp.end());
                    components.push_back(std::move(comp));
                }
            }
        }
    }
    // Tarjan emits components in reverse topological order already.
    return components;
}

double component_radius(const MultiDigraph& g, const std::vector<int>& component,
                        double tol, long long iteration_cap) {
    std::size_t n = component.size();
    std::vector<int> local(static_cast<std::size_t>(g.order), -1);
    for (std::size_t i = 0; i < n; ++i) local[static_cast<std::size_t>(component[i])] = static_cast<int>(i);

    // induced adjacency
    std::vector<std::vector<std::pair<int, double>>> a(n);
    long long edges = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (const auto& [to, mult] : g.adj[static_cast<std::size_t>(component[i])]) {
            int j = local[static_cast<std::size_t>(to)];
            if (j >= 0) {
                a[i].push_back({j, static_cast<double>(mult)});
                ++edges;
            }
        }
    if (edges == 0) return 0.0;
    if (n == 1) return a[0].empty() ? 0.0 : a[0][0].second;

    // Power iteration on A + I; the component is strongly connected, so the
    // shifted matrix is primitive and the Collatz-Wielandt brackets close.
    std::vector<double> x(n, 1.0), y(n, 0.0);
    double lo = 0.0, hi = 0.0;
    for (long long it = 0; it < iteration_cap; ++it) {
        for (std::size_t i = 0; i < n; ++i) {
            double acc = x[i];
            for (const auto& [j, w] : a[i]) acc += w * x[static_cast<std::size_t>(j)];
            y[i] = acc;
        }
        lo = std::numeric_limits<double>::infinity();
        hi = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double ratio = y[i] / x[i];
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
        if (hi - lo <= tol * hi) return 0.5 * (lo + hi) - 1.0;
        double norm = 0.0;
        for (double v : y) norm = std::max(norm, v);
        for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / norm;
    }
    std::ostringstream os;
    os << "power iteration failed to converge; best bracket [" << lo - 1.0 << ", " << hi - 1.0 << "]";
    fail(ErrorCode::NoConvergence, "spectral_radius", os.str());
}

std::vector<SccRadius> scc_radii(const MultiDigraph& g, double tol) {
    std::vector<SccRadius> out;
    for (auto& comp : strongly_connected_components(g)) {
        SccRadius s;
        s.rho = component_radius(g, comp, tol);
        s.vertices = std::move(comp);
        out.push_back(std::move(s));
    }
    return out;
}

double spectral_radius(const MultiDigraph& g, double tol) {
    double best = 0.0;
    for (const auto& comp : strongly_connected_components(g))
        best = std::max(best, component_radius(g, comp, tol));
    return best;
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::PurePoint: return "pure_point";
        case Verdict::NotPurePoint: return "not_pure_point";
        case Verdict::Unreliable: return "unreliable";
    }
    return "?";
}

const char* meyer_name(MeyerStatus m) {
    switch (m) {
        case MeyerStatus::Yes: return "yes";
        case MeyerStatus::No: return "no";
        case MeyerStatus::Unknown: return "unknown";
    }
    return "?";
}

Verdict decide_verdict(double rho_coin, double rho_res, double beta, MeyerStatus meyer,
                       bool caps_hit, double tol_verdict) {
    if (rho_coin < 0 || rho_res < 0)
        fail(ErrorCode::DomainError, "verdict", "negative spectral radius");
    double tol = tol_verdict >= 0 ? tol_verdict : 1e-6 * beta;
    if (meyer != MeyerStatus::Yes || caps_hit) return Verdict::Unreliable;
    return rho_coin > rho_res + tol ? Verdict::PurePoint : Verdict::NotPurePoint;
}

double boundary_dimension(int dim, double rho_res, double beta) {
    if (beta <= 1.0)
        fail(ErrorCode::DomainError, "boundary_dimension", "beta must exceed 1");
    if (rho_res < 1.0)
        fail(ErrorCode::DomainError, "boundary_dimension", "rho_res below 1");
    if (rho_res >= beta)
        fail(ErrorCode::DomainError, "boundary_dimension",
             "rho_res >= beta contradicts the pure-point precondition");
    return dim * std::log(rho_res) / std::log(beta);
}

} // namespace purepoint
