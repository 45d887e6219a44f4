#include "purepoint/oracle.hpp"
#include "purepoint/errors.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace purepoint {

namespace {

struct LatticeModel {
    int dim = 0;
    long long q = 0;  // expansion q*I
    // digits[i][j] as integer vectors
    std::vector<std::vector<std::vector<std::vector<long long>>>> digits;
    std::vector<long long> xi;
    int xi_colour = 0;
    std::vector<double> volumes;                 // per-colour tile volume weights
    std::vector<std::array<double, 2>> hull_lo;  // unused in packed form; see hulls
    std::vector<std::vector<double>> lo, hi;     // per-colour tile hull box
    bool cube_tiles = true;
};

bool integral_vector(const FieldVector& v, std::vector<long long>& out) {
    out.clear();
    for (const auto& s : v) {
        if (!s.is_rational()) return false;
        Rational q = s.rational_part();
        if (!is_integer(q)) return false;
        out.push_back(numerator(q).convert_to<long long>());
    }
    return true;
}

// Tries to view the model as an integer lattice substitution with expansion
// q*I and integral digits. The fixed point must be integral too.
std::optional<LatticeModel> as_lattice(const SubstitutionModel& model) {
    if (model.field->degree() != 1 || model.rank != model.dim) return std::nullopt;
    if (model.dim > 3) return std::nullopt;  // packed membership keys carry 21 bits per axis
    LatticeModel lat;
    lat.dim = model.dim;
    // expansion must be q*I with integer q >= 2
    for (int i = 0; i < model.rank; ++i)
        for (int j = 0; j < model.rank; ++j) {
            const Scalar& s = model.expansion[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            Rational v = s.rational_part();
            if (i == j) {
                if (!is_integer(v) || v < 2) return std::nullopt;
                long long q = numerator(v).convert_to<long long>();
                if (lat.q == 0)
                    lat.q = q;
                else if (lat.q != q)
                    return std::nullopt;
            } else if (v != 0) {
                return std::nullopt;
            }
        }
    lat.digits.resize(static_cast<std::size_t>(model.colours));
    for (int i = 0; i < model.colours; ++i) {
        lat.digits[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(model.colours));
        for (int j = 0; j < model.colours; ++j)
            for (const auto& d : model.digit_set(i, j)) {
                std::vector<long long> vec;
                if (!integral_vector(d, vec)) return std::nullopt;
                lat.digits[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].push_back(std::move(vec));
            }
    }
    FixedSeed seed = fixed_seed(model);
    if (seed.power != 1) return std::nullopt;
    if (!integral_vector(seed.xi.pos, lat.xi)) return std::nullopt;
    lat.xi_colour = seed.xi.colour;

    // tile hulls: componentwise fixpoint of hull_j = U (d + hull_i)/q
    int m = model.colours;
    lat.lo.assign(static_cast<std::size_t>(m), std::vector<double>(static_cast<std::size_t>(lat.dim), 0.0));
    lat.hi = lat.lo;
    for (int it = 0; it < 80; ++it) {
        auto nlo = lat.lo, nhi = lat.hi;
        for (int j = 0; j < m; ++j)
            for (int t = 0; t < lat.dim; ++t) {
                double lo = std::numeric_limits<double>::infinity(), hi = -lo;
                for (int i = 0; i < m; ++i)
                    for (const auto& d : lat.digits[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) {
                        lo = std::min(lo, (static_cast<double>(d[static_cast<std::size_t>(t)]) +
                                           lat.lo[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)]) /
                                              static_cast<double>(lat.q));
                        hi = std::max(hi, (static_cast<double>(d[static_cast<std::size_t>(t)]) +
                                           lat.hi[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)]) /
                                              static_cast<double>(lat.q));
                    }
                nlo[static_cast<std::size_t>(j)][static_cast<std::size_t>(t)] = lo;
                nhi[static_cast<std::size_t>(j)][static_cast<std::size_t>(t)] = hi;
            }
        lat.lo = std::move(nlo);
        lat.hi = std::move(nhi);
    }

    // volume weights: left Perron eigenvector of counts at q^d (power iteration)
    Eigen::MatrixXi counts = substitution_counts(model);
    Eigen::VectorXd v = Eigen::VectorXd::Ones(m);
    for (int it = 0; it < 2000; ++it) {
        Eigen::VectorXd next = counts.cast<double>().transpose() * v;
        v = next / next.maxCoeff();
    }
    lat.volumes.assign(v.data(), v.data() + m);

    // cube tiles: each column's digits form the full residue grid {0..q-1}^d
    long long cells = 1;
    for (int t = 0; t < lat.dim; ++t) cells *= lat.q;
    for (int j = 0; j < m && lat.cube_tiles; ++j) {
        std::vector<std::vector<long long>> all;
        for (int i = 0; i < m; ++i)
            for (const auto& d : lat.digits[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) {
                std::vector<long long> res(d.size());
                for (std::size_t t = 0; t < d.size(); ++t)
                    res[t] = ((d[t] % lat.q) + lat.q) % lat.q;
                all.push_back(std::move(res));
            }
        std::sort(all.begin(), all.end());
        all.erase(std::unique(all.begin(), all.end()), all.end());
        if (static_cast<long long>(all.size()) != cells) lat.cube_tiles = false;
    }
    return lat;
}

// packed coordinates: 21 bits per axis with offset, 3 axes max
long long pack_point(const std::vector<long long>& x) {
    long long key = 0;
    for (long long v : x) key = (key << 21) | ((v + (1ll << 20)) & ((1ll << 21) - 1));
    return key;
}

// Memoized membership masks: which colours anchor a tile at x in Phi^level(xi).
class LatticeMembership {
public:
    LatticeMembership(const LatticeModel& lat) : lat_(lat), memo_(static_cast<std::size_t>(1)) {}

    unsigned mask(const std::vector<long long>& x, int level) {
        if (level == 0)
            return x == lat_.xi ? (1u << lat_.xi_colour) : 0u;
        if (static_cast<int>(memo_.size()) <= level) memo_.resize(static_cast<std::size_t>(level) + 1);
        auto& table = memo_[static_cast<std::size_t>(level)];
        long long key = pack_point(x);
        auto it = table.find(key);
        if (it != table.end()) return it->second;
        unsigned out = 0;
        int m = static_cast<int>(lat_.digits.size());
        std::vector<long long> y(x.size());
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                for (const auto& d : lat_.digits[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) {
                    bool divisible = true;
                    for (std::size_t t = 0; t < x.size(); ++t) {
                        long long num = x[t] - d[t];
                        if (num % lat_.q != 0) { divisible = false; break; }
                        y[t] = num / lat_.q;
                    }
                    if (!divisible) continue;
                    if (mask(y, level - 1) & (1u << j)) out |= 1u << i;
                }
        table.emplace(key, out);
        return out;
    }

private:
    const LatticeModel& lat_;
    std::vector<std::unordered_map<long long, unsigned>> memo_;
};

double lattice_density(const SubstitutionModel& model, const LatticeModel& lat,
                       const FieldVector& alpha, int n, int depth) {
    std::vector<long long> shift;
    if (!integral_vector(alpha, shift))
        fail(ErrorCode::UnsupportedModel, "density_estimate", "alpha is not a lattice vector");
    long long qn = 1;
    for (int i = 0; i < n; ++i) qn *= lat.q;
    for (auto& s : shift) s *= qn;

    // patch support box: q^depth * (xi + hull of the seed colour)
    long long scale = 1;
    for (int i = 0; i < depth; ++i) scale *= lat.q;
    int d = lat.dim;
    std::vector<double> lo(static_cast<std::size_t>(d)), hi(static_cast<std::size_t>(d));
    for (int t = 0; t < d; ++t) {
        lo[static_cast<std::size_t>(t)] = static_cast<double>(scale) *
            (static_cast<double>(lat.xi[static_cast<std::size_t>(t)]) +
             lat.lo[static_cast<std::size_t>(lat.xi_colour)][static_cast<std::size_t>(t)]);
        hi[static_cast<std::size_t>(t)] = static_cast<double>(scale) *
            (static_cast<double>(lat.xi[static_cast<std::size_t>(t)]) +
             lat.hi[static_cast<std::size_t>(lat.xi_colour)][static_cast<std::size_t>(t)]);
    }
    // central 60% window, clipped so x + Q^n alpha stays inside the support
    std::vector<long long> wlo(static_cast<std::size_t>(d)), whi(static_cast<std::size_t>(d));
    for (int t = 0; t < d; ++t) {
        double span = hi[static_cast<std::size_t>(t)] - lo[static_cast<std::size_t>(t)];
        double a = lo[static_cast<std::size_t>(t)] + 0.2 * span;
        double b = hi[static_cast<std::size_t>(t)] - 0.2 * span;
        double s = static_cast<double>(shift[static_cast<std::size_t>(t)]);
        a = std::max(a, lo[static_cast<std::size_t>(t)] - std::min(0.0, s));
        b = std::min(b, hi[static_cast<std::size_t>(t)] - std::max(0.0, s));
        if (b < a)
            fail(ErrorCode::UnsupportedModel, "density_estimate",
                 "window empty: Q^n alpha outruns the patch; raise depth");
        wlo[static_cast<std::size_t>(t)] = static_cast<long long>(std::ceil(a));
        whi[static_cast<std::size_t>(t)] = static_cast<long long>(std::floor(b));
    }

    long long window_cells = 1;
    for (int t = 0; t < d; ++t)
        window_cells *= whi[static_cast<std::size_t>(t)] - wlo[static_cast<std::size_t>(t)] + 1;

    LatticeMembership member(lat);
    const long long sample_cap = 300'000;
    double num = 0.0, den = 0.0;
    auto visit = [&](const std::vector<long long>& x) {
        unsigned here = member.mask(x, depth);
        if (!here) return;
        std::vector<long long> x2(x.size());
        for (std::size_t t = 0; t < x.size(); ++t) x2[t] = x[t] + shift[t];
        unsigned there = member.mask(x2, depth);
        for (int c = 0; c < static_cast<int>(lat.volumes.size()); ++c) {
            if (!(here & (1u << c))) continue;
            den += lat.volumes[static_cast<std::size_t>(c)];
            if (there & (1u << c)) num += lat.volumes[static_cast<std::size_t>(c)];
        }
    };

    std::vector<long long> x(static_cast<std::size_t>(d));
    if (window_cells <= sample_cap) {
        // exhaustive window scan
        std::vector<long long> cur = wlo;
        while (true) {
            visit(cur);
            int t = 0;
            for (; t < d; ++t) {
                if (++cur[static_cast<std::size_t>(t)] <= whi[static_cast<std::size_t>(t)]) break;
                cur[static_cast<std::size_t>(t)] = wlo[static_cast<std::size_t>(t)];
            }
            if (t == d) break;
        }
    } else {
        // deterministic LCG subsample (spec tolerates +-0.02 counting noise)
        unsigned long long state = 0x9e3779b97f4a7c15ull;
        auto next = [&state]() {
            state = state * 6364136223846793005ull + 1442695040888963407ull;
            return state >> 11;
        };
        for (long long s = 0; s < sample_cap; ++s) {
            for (int t = 0; t < d; ++t) {
                long long span = whi[static_cast<std::size_t>(t)] - wlo[static_cast<std::size_t>(t)] + 1;
                x[static_cast<std::size_t>(t)] = wlo[static_cast<std::size_t>(t)] +
                    static_cast<long long>(next() % static_cast<unsigned long long>(span));
            }
            visit(x);
        }
    }
    (void)model;
    if (den == 0)
        fail(ErrorCode::UnsupportedModel, "density_estimate", "no tiles landed in the window");
    return num / den;
}

double interval_density(const SubstitutionModel& model, const FieldVector& alpha, int n, int depth,
                        long long max_points) {
    FixedSeed seed = fixed_seed(model);
    SubstitutionModel working = power_model(model, seed.power);
    ColouredPointSet patch(model.realization);
    patch.insert(seed.xi);
    int steps = (depth + seed.power - 1) / seed.power;
    for (int i = 0; i < steps; ++i) iterate_in_place(working, patch, max_points);

    // tile lengths from the hull fixpoint
    int m = model.colours;
    std::vector<double> lo(static_cast<std::size_t>(m), 0.0), hi = lo;
    double q = induced_real_matrix(model.realization, model.expansion, model.field)(0, 0);
    for (int it = 0; it < 80; ++it) {
        auto nlo = lo, nhi = hi;
        for (int j = 0; j < m; ++j) {
            double l = std::numeric_limits<double>::infinity(), h = -l;
            for (int i = 0; i < m; ++i)
                for (const auto& dvec : model.digit_set(i, j)) {
                    double d = realize(model.realization, dvec)(0);
                    l = std::min(l, (d + lo[static_cast<std::size_t>(i)]) / q);
                    h = std::max(h, (d + hi[static_cast<std::size_t>(i)]) / q);
                }
            nlo[static_cast<std::size_t>(j)] = l;
            nhi[static_cast<std::size_t>(j)] = h;
        }
        lo = std::move(nlo);
        hi = std::move(nhi);
    }

    // Q^n alpha exactly
    FieldVector shift = alpha;
    for (int i = 0; i < n; ++i) shift = mat_vec(model.expansion, shift);
    double shift_real = realize(model.realization, shift)(0);

    double pmin = std::numeric_limits<double>::infinity(), pmax = -pmin;
    for (std::size_t i = 0; i < patch.size(); ++i) {
        double x = patch.realized(i)[0];
        int c = patch.point(i).colour;
        pmin = std::min(pmin, x + lo[static_cast<std::size_t>(c)]);
        pmax = std::max(pmax, x + hi[static_cast<std::size_t>(c)]);
    }
    double span = pmax - pmin;
    double wlo = pmin + 0.2 * span, whi = pmax - 0.2 * span;
    wlo = std::max(wlo, pmin - std::min(0.0, shift_real));
    whi = std::min(whi, pmax - std::max(0.0, shift_real));
    if (whi <= wlo)
        fail(ErrorCode::UnsupportedModel, "density_estimate",
             "window empty: Q^n alpha outruns the patch; raise depth");

    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < patch.size(); ++i) {
        double x = patch.realized(i)[0];
        if (x < wlo || x > whi) continue;
        int c = patch.point(i).colour;
        double len = hi[static_cast<std::size_t>(c)] - lo[static_cast<std::size_t>(c)];
        den += len;
        if (patch.contains(patch.point(i).pos + shift, c)) num += len;
    }
    if (den == 0)
        fail(ErrorCode::UnsupportedModel, "density_estimate", "no tiles landed in the window");
    return num / den;
}

} // namespace

double density_estimate(const SubstitutionModel& model, const FieldVector& alpha, int n, int depth,
                        long long max_points) {
    if (model.dim == 1) return interval_density(model, alpha, n, depth, max_points);
    auto lat = as_lattice(model);
    if (!lat)
        fail(ErrorCode::UnsupportedModel, "density_estimate",
             "density oracle supports d = 1 or integer lattice models only");
    return lattice_density(model, *lat, alpha, n, depth);
}

DensitySeries density_series(const SubstitutionModel& model, const FieldVector& alpha, int alpha_index,
                             int n_max, int depth, long long max_points) {
    DensitySeries series;
    series.alpha_index = alpha_index;
    series.depth = depth;
    if (model.dim == 1) {
        series.exact_intervals = true;
    } else {
        auto lat = as_lattice(model);
        if (lat) series.heuristic = !lat->cube_tiles;
    }
    for (int n = 1; n <= n_max; ++n) {
        series.n_values.push_back(n);
        series.densities.push_back(density_estimate(model, alpha, n, depth, max_points));
    }
    return series;
}

std::vector<OverlapClass> brute_force_seed_classes(const SubstitutionModel& model, const ColouredPoint& xi,
                                                   const FieldVector& alpha, int depth, double radius,
                                                   long long max_points) {
    ColouredPointSet patch(model.realization);
    patch.insert(xi);
    for (int i = 0; i < depth; ++i) iterate_in_place(model, patch, max_points);

    double limit = radius + admission_margin(radius);
    Eigen::VectorXd alpha_real = realize(model.realization, alpha);
    int d = model.dim;

    // sweep ordered by the first realized coordinate; everything else is the
    // plain double loop
    std::vector<int> order(patch.size());
    for (std::size_t i = 0; i < patch.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return patch.realized(static_cast<std::size_t>(a))[0] <
                                         patch.realized(static_cast<std::size_t>(b))[0]; });
    std::vector<double> first(patch.size());
    for (std::size_t i = 0; i < patch.size(); ++i)
        first[i] = patch.realized(static_cast<std::size_t>(order[i]))[0];

    std::unordered_map<ClassKey, OverlapClass, ClassKeyHash> classes;
    for (std::size_t yi = 0; yi < patch.size(); ++yi) {
        const double* yr = patch.realized(yi);
        double target0 = yr[0] - alpha_real(0);
        auto lo = std::lower_bound(first.begin(), first.end(), target0 - limit - 1e-9);
        auto hi = std::upper_bound(first.begin(), first.end(), target0 + limit + 1e-9);
        for (auto it = lo; it != hi; ++it) {
            std::size_t zi = static_cast<std::size_t>(order[static_cast<std::size_t>(it - first.begin())]);
            double dist_sq = 0.0;
            const double* zr = patch.realized(zi);
            for (int t = 0; t < d; ++t) {
                double diff = yr[t] - alpha_real(t) - zr[t];
                dist_sq += diff * diff;
            }
            if (dist_sq > limit * limit) continue;
            OverlapClass c{patch.point(yi).colour, patch.point(zi).colour,
                           patch.point(yi).pos - alpha - patch.point(zi).pos};
            if (realize(model.realization, c.shift).norm() > limit) continue;
            classes.try_emplace(class_key(c), std::move(c));
        }
    }
    std::vector<OverlapClass> out;
    out.reserve(classes.size());
    for (auto& [key, c] : classes) out.push_back(std::move(c));
    std::sort(out.begin(), out.end(),
              [](const OverlapClass& a, const OverlapClass& b) { return class_key(a) < class_key(b); });
    return out;
}

ColouredPointSet grow_patch(const SubstitutionModel& model, const ColouredPoint& xi, int k,
                            const std::optional<Window>& window, long long max_points) {
    ColouredPointSet start(model.realization);
    start.insert(xi);
    ColouredPointSet patch = iterate_points(model, start, k, max_points);
    if (!window) return patch;
    ColouredPointSet filtered(model.realization);
    for (std::size_t i = 0; i < patch.size(); ++i)
        if (window->contains(patch.realized(i), model.dim)) filtered.insert(patch.point(i));
    return filtered;
}

} // namespace purepoint
