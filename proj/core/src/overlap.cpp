#include "purepoint/overlap.hpp"
#include "purepoint/errors.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <unordered_map>
#include <unordered_set>
#include <cstdio>
#include <cstdlib>

namespace purepoint {

ClassKey class_key(const OverlapClass& c) {
    return ClassKey{c.colour_left, c.colour_right, vector_key(c.shift)};
}

double admission_margin(double radius) { return 1e-6 * std::max(radius, 1.0); }

OverlapRadius overlap_radius(const SubstitutionModel& model, long long max_digits) {
    Eigen::MatrixXd q_real = induced_real_matrix(model.realization, model.expansion, model.field);
    OverlapRadius out;
    out.power = contraction_power(q_real);
    out.inv_norm = inv_op_norm(q_real, out.power);

    DigitTable table = out.power == 1 ? model.digits : digit_power(model, out.power, max_digits);
    std::vector<Eigen::VectorXd> realized;
    for (const auto& row : table)
        for (const auto& entry : row)
            for (const auto& d : entry) realized.push_back(realize(model.realization, d));
    double spread = 0.0;
    for (std::size_t a = 0; a < realized.size(); ++a)
        for (std::size_t b = a + 1; b < realized.size(); ++b)
            spread = std::max(spread, (realized[a] - realized[b]).norm());
    out.spread = spread * (1.0 + 1e-12);
    out.radius = (out.spread * out.inv_norm / (1.0 - out.inv_norm)) * (1.0 + 1e-12);
    return out;
}

std::vector<FieldVector> translation_basis(const SubstitutionModel& model, const ColouredPoint& xi,
                                           int level_cap, long long max_points) {
    ColouredPointSet patch(model.realization);
    patch.insert(xi);
    Eigen::VectorXd xi_real = realize(model.realization, xi.pos);

    struct Candidate {
        FieldVector diff;
        Eigen::VectorXd real;
        double norm;
        ScalarVectorKey key;
    };

    for (int level = 1; level <= level_cap; ++level) {
        iterate_in_place(model, patch, max_points);
        std::vector<Candidate> candidates;
        for (std::size_t idx = 0; idx < patch.size(); ++idx) {
            const ColouredPoint& p = patch.point(idx);
            if (p.colour != xi.colour) continue;
            FieldVector diff = p.pos - xi.pos;
            Eigen::VectorXd real = realize(model.realization, diff);
            double norm = real.norm();
            if (norm < 1e-12) continue;
            candidates.push_back({std::move(diff), std::move(real), norm, {}});
        }
        for (auto& c : candidates) c.key = vector_key(c.diff);
        std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
            if (std::abs(a.norm - b.norm) > 1e-12) return a.norm < b.norm;
            return a.key.flat < b.key.flat;
        });

        // greedy shortest-first rank build, relative tolerance 1e-9
        std::vector<FieldVector> basis;
        std::vector<Eigen::VectorXd> ortho;
        for (auto& c : candidates) {
            Eigen::VectorXd v = c.real;
            for (const auto& u : ortho) v -= u.dot(v) * u;
            if (v.norm() > 1e-9 * c.norm) {
                ortho.push_back(v.normalized());
                basis.push_back(std::move(c.diff));
                if (static_cast<int>(basis.size()) == model.dim) return basis;
            }
        }
    }
    fail(ErrorCode::NoBasis, "translation_basis",
         "no realize-independent basis within " + std::to_string(level_cap) + " levels");
}

namespace {

double sq_dist(const double* a, const double* b, int d) {
    double acc = 0.0;
    for (int t = 0; t < d; ++t) {
        double diff = a[t] - b[t];
        acc += diff * diff;
    }
    return acc;
}

} // namespace

PairClosure pair_closure(const SubstitutionModel& model, const ColouredPoint& xi, int k, double bound,
                         int level_cap, long long max_points) {
    double delta = admission_margin(bound);
    double limit = bound + delta;
    double limit_sq = limit * limit;

    ColouredPointSet patch(model.realization);
    patch.insert(xi);
    PointGrid grid(patch, limit);
    std::unordered_set<ClassKey, ClassKeyHash> classes;
    std::vector<std::size_t> counts;
    int d = model.dim;

    for (int level = 1; level <= level_cap + k; ++level) {
        std::size_t before = patch.size();
        try {
            iterate_in_place(model, patch, max_points);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::CapExceeded)
                fail(ErrorCode::CapExceeded, "pair_closure",
                     "patch exceeded max_points before the class set stabilized (meyer-suspect)");
            throw;
        }
        grid.insert_upto(patch.size());
        for (std::size_t y = before; y < patch.size(); ++y) {
            const double* yr = patch.realized(y);
            grid.for_near(yr, [&](int z) {
                if (sq_dist(yr, patch.realized(static_cast<std::size_t>(z)), d) >= limit_sq) return;
                const ColouredPoint& py = patch.point(y);
                const ColouredPoint& pz = patch.point(static_cast<std::size_t>(z));
                FieldVector diff = py.pos - pz.pos;
                classes.insert(ClassKey{py.colour, pz.colour, vector_key(diff)});
                ClassKey rev{pz.colour, py.colour, vector_key(negate(diff))};
                classes.insert(std::move(rev));
            });
        }
        counts.push_back(classes.size());
        if (std::getenv("PUREPOINT_DEBUG"))
            std::fprintf(stderr, "[pair_closure] level %d: %zu points, %zu classes\n", level,
                         patch.size(), classes.size());
        if (level > k && counts[static_cast<std::size_t>(level - 1)] == counts[static_cast<std::size_t>(level - 1 - k)]) {
            PairClosure out;
            out.stabilized_at = level - k;
            out.witness = std::move(patch);
            out.class_counts = std::move(counts);
            return out;
        }
    }
    fail(ErrorCode::CapExceeded, "pair_closure",
         "translation classes kept growing past " + std::to_string(level_cap) +
             " levels (meyer-suspect)");
}

std::vector<OverlapClass> seed_overlaps(const SubstitutionModel& model, const ColouredPointSet& witness,
                                        const FieldVector& alpha, double radius) {
    double delta = admission_margin(radius);
    double limit = radius + delta;
    double limit_sq = limit * limit;
    int d = model.dim;

    PointGrid grid(witness, limit);
    Eigen::VectorXd alpha_real = realize(model.realization, alpha);
    std::vector<double> target(static_cast<std::size_t>(d));

    std::unordered_set<ClassKey, ClassKeyHash> seen;
    std::vector<OverlapClass> out;
    for (std::size_t y = 0; y < witness.size(); ++y) {
        const double* yr = witness.realized(y);
        for (int t = 0; t < d; ++t) target[static_cast<std::size_t>(t)] = yr[t] - alpha_real(t);
        grid.for_near(target.data(), [&](int z) {
            if (sq_dist(target.data(), witness.realized(static_cast<std::size_t>(z)), d) >= limit_sq)
                return;
            const ColouredPoint& py = witness.point(y);
            const ColouredPoint& pz = witness.point(static_cast<std::size_t>(z));
            OverlapClass c{py.colour, pz.colour, py.pos - alpha - pz.pos};
            // decide admission on the exact shift's own realization
            if (realize(model.realization, c.shift).norm() > limit) return;
            ClassKey key = class_key(c);
            if (seen.insert(std::move(key)).second) out.push_back(std::move(c));
        });
    }
    std::sort(out.begin(), out.end(),
              [](const OverlapClass& a, const OverlapClass& b) { return class_key(a) < class_key(b); });
    return out;
}

std::vector<std::pair<OverlapClass, long long>> edge_expand(const SubstitutionModel& model,
                                                            const OverlapClass& v, double radius) {
    double limit = radius + admission_margin(radius);
    FieldVector qz = mat_vec(model.expansion, v.shift);

    std::vector<std::pair<OverlapClass, long long>> out;
    std::unordered_map<ClassKey, std::size_t, ClassKeyHash> where;
    for (int k = 0; k < model.colours; ++k) {
        const auto& left = model.digit_set(k, v.colour_left);
        if (left.empty()) continue;
        for (int l = 0; l < model.colours; ++l) {
            const auto& right = model.digit_set(l, v.colour_right);
            if (right.empty()) continue;
            for (const auto& dk : left)
                for (const auto& dl : right) {
                    FieldVector shift = dk - dl + qz;
                    if (realize(model.realization, shift).norm() > limit) continue;
                    OverlapClass succ{k, l, std::move(shift)};
                    ClassKey key = class_key(succ);
                    auto it = where.find(key);
                    if (it == where.end()) {
                        where.emplace(std::move(key), out.size());
                        out.push_back({std::move(succ), 1});
                    } else {
                        ++out[it->second].second;
                    }
                }
        }
    }
    return out;
}

MultiDigraph OverlapGraph::digraph() const {
    MultiDigraph g;
    g.resize(static_cast<int>(vertices.size()));
    g.adj = adj;
    return g;
}

long long OverlapGraph::edge_count() const {
    long long n = 0;
    for (const auto& a : adj) n += static_cast<long long>(a.size());
    return n;
}

int OverlapGraph::coincidence_count() const {
    int n = 0;
    for (char c : coincidence) n += c;
    return n;
}

int OverlapGraph::find(const OverlapClass& c) const {
    ClassKey key = class_key(c);
    for (std::size_t i = 0; i < vertices.size(); ++i)
        if (class_key(vertices[i]) == key) return static_cast<int>(i);
    return -1;
}

OverlapGraph build_graph(const SubstitutionModel& model, const std::vector<OverlapClass>& seeds,
                         double radius, long long max_vertices) {
    if (seeds.empty())
        fail(ErrorCode::DomainError, "build_graph", "seed set is empty");
    OverlapGraph g;
    g.radius = radius;
    g.delta = admission_margin(radius);

    std::unordered_map<ClassKey, int, ClassKeyHash> index;
    std::deque<int> queue;
    auto intern = [&](const OverlapClass& c) {
        ClassKey key = class_key(c);
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        int id = static_cast<int>(g.vertices.size());
        if (static_cast<long long>(id) >= max_vertices)
            fail(ErrorCode::CapExceeded, "build_graph",
                 "vertex count exceeded " + std::to_string(max_vertices) + " (meyer-suspect)");
        index.emplace(std::move(key), id);
        g.vertices.push_back(c);
        g.coincidence.push_back(c.is_coincidence());
        g.adj.emplace_back();
        queue.push_back(id);
        return id;
    };

    for (const auto& s : seeds) {
        int id = intern(s);
        g.seeds.push_back(id);
    }
    std::sort(g.seeds.begin(), g.seeds.end());
    g.seeds.erase(std::unique(g.seeds.begin(), g.seeds.end()), g.seeds.end());

    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        auto successors = edge_expand(model, g.vertices[static_cast<std::size_t>(v)], radius);
        std::vector<std::pair<int, long long>> edges;
        edges.reserve(successors.size());
        for (auto& [succ, mult] : successors) edges.push_back({intern(succ), mult});
        g.adj[static_cast<std::size_t>(v)] = std::move(edges);
    }
    return g;
}

namespace {

OverlapGraph induced_subgraph(const OverlapGraph& g, const std::vector<int>& keep) {
    std::vector<int> local(g.vertices.size(), -1);
    for (std::size_t i = 0; i < keep.size(); ++i)
        local[static_cast<std::size_t>(keep[i])] = static_cast<int>(i);
    OverlapGraph out;
    out.radius = g.radius;
    out.delta = g.delta;
    for (int v : keep) {
        out.vertices.push_back(g.vertices[static_cast<std::size_t>(v)]);
        out.coincidence.push_back(g.coincidence[static_cast<std::size_t>(v)]);
        out.adj.emplace_back();
        for (const auto& [to, mult] : g.adj[static_cast<std::size_t>(v)])
            if (local[static_cast<std::size_t>(to)] >= 0)
                out.adj.back().push_back({local[static_cast<std::size_t>(to)], mult});
    }
    for (int s : g.seeds)
        if (local[static_cast<std::size_t>(s)] >= 0)
            out.seeds.push_back(local[static_cast<std::size_t>(s)]);
    return out;
}

} // namespace

GraphSplit split_graph(const OverlapGraph& g) {
    std::size_t n = g.vertices.size();
    std::vector<std::vector<int>> reverse_adj(n);
    for (std::size_t v = 0; v < n; ++v)
        for (const auto& [to, mult] : g.adj[v]) reverse_adj[static_cast<std::size_t>(to)].push_back(static_cast<int>(v));

    GraphSplit split;
    split.in_coin.assign(n, 0);
    std::deque<int> queue;
    for (std::size_t v = 0; v < n; ++v)
        if (g.coincidence[v]) {
            split.in_coin[v] = 1;
            queue.push_back(static_cast<int>(v));
        }
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int u : reverse_adj[static_cast<std::size_t>(v)])
            if (!split.in_coin[static_cast<std::size_t>(u)]) {
                split.in_coin[static_cast<std::size_t>(u)] = 1;
                queue.push_back(u);
            }
    }

    std::vector<int> coin_ids, res_ids;
    for (std::size_t v = 0; v < n; ++v)
        (split.in_coin[v] ? coin_ids : res_ids).push_back(static_cast<int>(v));
    split.coin = induced_subgraph(g, coin_ids);
    split.res = induced_subgraph(g, res_ids);
    return split;
}

OverlapGraph prune_sinks(const OverlapGraph& g) {
    std::size_t n = g.vertices.size();
    std::vector<int> out_alive(n, 0);
    std::vector<std::vector<int>> reverse_adj(n);
    for (std::size_t v = 0; v < n; ++v) {
        out_alive[v] = static_cast<int>(g.adj[v].size());
        for (const auto& [to, mult] : g.adj[v]) reverse_adj[static_cast<std::size_t>(to)].push_back(static_cast<int>(v));
    }
    std::vector<char> alive(n, 1);
    std::deque<int> queue;
    for (std::size_t v = 0; v < n; ++v)
        if (out_alive[v] == 0 && !g.coincidence[v]) queue.push_back(static_cast<int>(v));
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        if (!alive[static_cast<std::size_t>(v)]) continue;
        alive[static_cast<std::size_t>(v)] = 0;
        for (int u : reverse_adj[static_cast<std::size_t>(v)]) {
            if (!alive[static_cast<std::size_t>(u)]) continue;
            int count = 0;
            for (const auto& [to, mult] : g.adj[static_cast<std::size_t>(u)]) count += to == v;
            out_alive[static_cast<std::size_t>(u)] -= count;
            if (out_alive[static_cast<std::size_t>(u)] == 0 && !g.coincidence[static_cast<std::size_t>(u)])
                queue.push_back(u);
        }
    }
    std::vector<int> keep;
    for (std::size_t v = 0; v < n; ++v)
        if (alive[v]) keep.push_back(static_cast<int>(v));
    return induced_subgraph(g, keep);
}

} // namespace purepoint
