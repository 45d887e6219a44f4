#pragma once

#include "purepoint/model.hpp"

namespace purepoint {

// Equivalence class of potential overlaps: colours (i, j) plus the exact
// displacement z = u - y - v. Admissible while |realize(z)| <= R + delta.
struct OverlapClass {
    int colour_left = 0;
    int colour_right = 0;
    FieldVector shift;

    bool is_coincidence() const {
        if (colour_left != colour_right) return false;
        for (const auto& s : shift)
            if (!s.is_zero()) return false;
        return true;
    }
};

struct ClassKey {
    int i = 0, j = 0;
    ScalarVectorKey z;
    bool operator==(const ClassKey& o) const { return i == o.i && j == o.j && z == o.z; }
    bool operator<(const ClassKey& o) const {
        if (i != o.i) return i < o.i;
        if (j != o.j) return j < o.j;
        return z.flat < o.z.flat;
    }
};

struct ClassKeyHash {
    std::size_t operator()(const ClassKey& k) const {
        std::size_t seed = ScalarVectorKeyHash()(k.z);
        boost::hash_combine(seed, k.i);
        boost::hash_combine(seed, k.j);
        return seed;
    }
};

ClassKey class_key(const OverlapClass& c);

// delta = 1e-6 * max(R, 1); every radius comparison over-admits by this margin.
double admission_margin(double radius);

struct OverlapRadius {
    int power = 1;       // least k with ||Q^-k|| < 1
    double inv_norm = 0; // ||Q^-k||, upper bound
    double spread = 0;   // e^(k): max realized distance between digits of D^k
    double radius = 0;   // R = spread * inv_norm / (1 - inv_norm)
};

// Errors: NotExpansive.
OverlapRadius overlap_radius(const SubstitutionModel& model, long long max_digits = 5'000'000);

// Shortest-first realize-independent same-colour differences y - xi collected
// from growing patches. Errors: NoBasis past level_cap.
std::vector<FieldVector> translation_basis(const SubstitutionModel& model, const ColouredPoint& xi,
                                           int level_cap = 12, long long max_points = 5'000'000);

struct PairClosure {
    int stabilized_at = 0;                  // N with J(Phi^N) = J(Phi^(N+k))
    ColouredPointSet witness;               // Phi^(N+k)(xi)
    std::vector<std::size_t> class_counts;  // |J| per level, monotone
};

// Grows Phi^N(xi) until the set of translation classes within `bound` of each
// other stops changing across a window of k levels. Errors: CapExceeded.
PairClosure pair_closure(const SubstitutionModel& model, const ColouredPoint& xi, int k, double bound,
                         int level_cap = 30, long long max_points = 5'000'000);

// All classes (colour_y, y - alpha - z, colour_z) over witness pairs with
// realized |y - alpha - z| <= R + delta. Sorted canonically, exact dedup.
std::vector<OverlapClass> seed_overlaps(const SubstitutionModel& model, const ColouredPointSet& witness,
                                        const FieldVector& alpha, double radius);

// One inflation step of a class: z' = d_ki - d_lj + Qz over all digit pairs,
// keeping admissible successors with pair-count multiplicities.
std::vector<std::pair<OverlapClass, long long>> edge_expand(const SubstitutionModel& model,
                                                            const OverlapClass& v, double radius);

struct OverlapGraph {
    std::vector<OverlapClass> vertices;
    std::vector<std::vector<std::pair<int, long long>>> adj;  // (to, multiplicity)
    std::vector<char> coincidence;
    std::vector<int> seeds;
    double radius = 0;
    double delta = 0;

    MultiDigraph digraph() const;
    long long edge_count() const;
    int coincidence_count() const;
    int find(const OverlapClass& c) const;  // -1 when absent
};

// Breadth-first closure of the seeds under edge_expand. Deterministic.
// Errors: CapExceeded (meyer-suspect input).
OverlapGraph build_graph(const SubstitutionModel& model, const std::vector<OverlapClass>& seeds,
                         double radius, long long max_vertices = 200'000);

struct GraphSplit {
    std::vector<char> in_coin;  // indexed by parent vertex
    OverlapGraph coin;          // induced on vertices reaching a coincidence
    OverlapGraph res;           // induced complement
};

GraphSplit split_graph(const OverlapGraph& g);

// Iteratively removes out-degree-zero vertices (never coincidences).
OverlapGraph prune_sinks(const OverlapGraph& g);

} // namespace purepoint
