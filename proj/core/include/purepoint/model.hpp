#pragma once

#include "purepoint/field_linalg.hpp"
#include "purepoint/realization.hpp"
#include "purepoint/spectral.hpp"

#include <Eigen/Dense>

#include <string>
#include <unordered_map>
#include <vector>

namespace purepoint {

// m x m table; entry (i, j) lists the digit vectors carrying colour j into
// colour i under one substitution step.
using DigitTable = std::vector<std::vector<std::vector<FieldVector>>>;

struct SubstitutionModel {
    std::string name;
    int colours = 0;  // m
    int rank = 0;     // e
    int dim = 0;      // d
    FieldPtr field;
    FieldMatrix expansion;  // Q, e x e over the field
    DigitTable digits;
    Realization realization;
    std::vector<FieldVector> translations;  // optional basis override, exact

    const std::vector<FieldVector>& digit_set(int i, int j) const {
        return digits[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
};

struct ColouredPoint {
    FieldVector pos;
    int colour = 0;
};

// Deduplicated coloured point collection keyed by exact (pos, colour), with
// realized coordinates cached per point.
class ColouredPointSet {
public:
    ColouredPointSet() = default;
    explicit ColouredPointSet(Realization realization);

    bool insert(ColouredPoint p);  // false when the exact key already exists
    bool contains(const FieldVector& pos, int colour) const;
    std::size_t size() const { return points_.size(); }
    int dim() const { return realization_.dim; }
    const Realization& realization() const { return realization_; }
    const ColouredPoint& point(std::size_t i) const { return points_[i]; }
    const double* realized(std::size_t i) const { return &realized_[i * static_cast<std::size_t>(realization_.dim)]; }

private:
    struct Key {
        int colour;
        ScalarVectorKey pos;
        bool operator==(const Key& o) const { return colour == o.colour && pos == o.pos; }
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const {
            std::size_t seed = ScalarVectorKeyHash()(k.pos);
            boost::hash_combine(seed, k.colour);
            return seed;
        }
    };

    Realization realization_;
    std::vector<ColouredPoint> points_;
    std::vector<double> realized_;
    std::unordered_map<Key, int, KeyHash> index_;
};

// Uniform-cell spatial hash over a point set's realized coordinates.
class PointGrid {
public:
    PointGrid(const ColouredPointSet& set, double cell);

    void insert_upto(std::size_t end);  // index points [inserted, end)
    // indices of points within the cell neighbourhood of `center`
    // (superset of the radius-`cell` ball); exact tests are the caller's job.
    template <typename Fn>
    void for_near(const double* center, Fn&& fn) const {
        int d = set_->dim();
        std::vector<long long> base(static_cast<std::size_t>(d));
        for (int t = 0; t < d; ++t)
            base[static_cast<std::size_t>(t)] = static_cast<long long>(std::floor(center[t] / cell_));
        std::vector<long long> cur(static_cast<std::size_t>(d));
        int cells = 1;
        for (int t = 0; t < d; ++t) cells *= 3;
        for (int c = 0; c < cells; ++c) {
            int rem = c;
            for (int t = 0; t < d; ++t) {
                cur[static_cast<std::size_t>(t)] = base[static_cast<std::size_t>(t)] + rem % 3 - 1;
                rem /= 3;
            }
            auto it = cells_.find(pack(cur));
            if (it == cells_.end()) continue;
            for (int idx : it->second) fn(idx);
        }
    }

private:
    static std::size_t pack(const std::vector<long long>& cell) {
        std::size_t seed = cell.size();
        for (long long v : cell) boost::hash_combine(seed, v);
        return seed;
    }

    const ColouredPointSet* set_;
    double cell_;
    std::size_t inserted_ = 0;
    std::unordered_map<std::size_t, std::vector<int>> cells_;
};

struct ValidationReport {
    Eigen::MatrixXi counts;       // substitution matrix S
    double pf_counts = 0.0;       // Perron-Frobenius eigenvalue of S
    Eigen::MatrixXd q_real;       // realized expansion
    double abs_det_q = 0.0;
    bool primitive = false;
    bool expansive = false;
};

// Structural + spectral validation; throws NotPrimitive / NotExpansive /
// VolumeMismatch / BadRealization. A passing report is the precondition of
// every downstream operation.
ValidationReport validate(const SubstitutionModel& model);

Eigen::MatrixXi substitution_counts(const SubstitutionModel& model);
bool is_primitive(const Eigen::MatrixXi& counts);

// Exact digit table of the k-th substitution power; counts equal S^k.
DigitTable digit_power(const SubstitutionModel& model, int k, long long max_digits = 5'000'000);

// The k-th power of the whole model (digits and expansion).
SubstitutionModel power_model(const SubstitutionModel& model, int p);

// Applies the MFS k times with exact dedup. k = 0 returns the input.
ColouredPointSet iterate_points(const SubstitutionModel& model, const ColouredPointSet& pts, int k,
                                long long max_points = 5'000'000);

// One in-place substitution step: applies the MFS to every current point and
// inserts the images. Requires a set that already nests (xi in Phi(xi)).
void iterate_in_place(const SubstitutionModel& model, ColouredPointSet& pts,
                      long long max_points = 5'000'000);

struct FixedSeed {
    int power = 1;            // p with xi in Phi^p(xi)
    ColouredPoint xi;
};

// Smallest p <= p_max with a diagonal digit in D^p; xi = (I - Q^p)^-1 d.
// Deterministic choice: minimal realized |xi|, ties by colour then digit.
// Errors: NoFixedPoint.
FixedSeed fixed_seed(const SubstitutionModel& model, int p_max = 6);

// Digit recentering D'_ij = D_ij - Q a_j + a_i with a_i the depth-`depth`
// digit-address point of tile i closest to the address-cloud centroid.
SubstitutionModel recenter(const SubstitutionModel& model, int depth = 3);

// Depth-`depth` address points of tile i (exact partial digit expansions).
std::vector<FieldVector> tile_address_points(const SubstitutionModel& model, int colour, int depth);

struct MeyerDiagnostics {
    MeyerStatus status = MeyerStatus::Unknown;
    std::vector<std::string> notes;
};

// Pisot-family criterion on the eigenvalues of the realized expansion.
MeyerDiagnostics meyer_check(const SubstitutionModel& model);

} // namespace purepoint
