#include "purepoint/model.hpp"
#include "purepoint/errors.hpp"
#include "purepoint/polynomials.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <set>

namespace purepoint {

ColouredPointSet::ColouredPointSet(Realization realization) : realization_(std::move(realization)) {}

bool ColouredPointSet::insert(ColouredPoint p) {
    Key key{p.colour, vector_key(p.pos)};
    auto [it, fresh] = index_.try_emplace(std::move(key), static_cast<int>(points_.size()));
    if (!fresh) return false;
    std::size_t base = realized_.size();
    realized_.resize(base + static_cast<std::size_t>(realization_.dim));
    realize_into(realization_, p.pos, &realized_[base]);
    points_.push_back(std::move(p));
    return true;
}

bool ColouredPointSet::contains(const FieldVector& pos, int colour) const {
    return index_.count(Key{colour, vector_key(pos)}) > 0;
}

PointGrid::PointGrid(const ColouredPointSet& set, double cell) : set_(&set), cell_(std::max(cell, 1e-9)) {
    insert_upto(set.size());
}

void PointGrid::insert_upto(std::size_t end) {
    int d = set_->dim();
    std::vector<long long> cell(static_cast<std::size_t>(d));
    for (std::size_t i = inserted_; i < end; ++i) {
        const double* x = set_->realized(i);
        for (int t = 0; t < d; ++t)
            cell[static_cast<std::size_t>(t)] = static_cast<long long>(std::floor(x[t] / cell_));
        cells_[pack(cell)].push_back(static_cast<int>(i));
    }
    inserted_ = end;
}

Eigen::MatrixXi substitution_counts(const SubstitutionModel& model) {
    Eigen::MatrixXi s(model.colours, model.colours);
    for (int i = 0; i < model.colours; ++i)
        for (int j = 0; j < model.colours; ++j)
            s(i, j) = static_cast<int>(model.digit_set(i, j).size());
    return s;
}

bool is_primitive(const Eigen::MatrixXi& counts) {
    int m = static_cast<int>(counts.rows());
    if (m == 1) return counts(0, 0) > 0;
    // boolean reachability to the Wielandt bound (m-1)^2 + 1
    using Row = std::vector<char>;
    std::vector<Row> b(static_cast<std::size_t>(m), Row(static_cast<std::size_t>(m), 0));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) b[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = counts(i, j) > 0;
    auto mul = [m](const std::vector<Row>& x, const std::vector<Row>& y) {
        std::vector<Row> r(static_cast<std::size_t>(m), Row(static_cast<std::size_t>(m), 0));
        for (int i = 0; i < m; ++i)
            for (int k = 0; k < m; ++k)
                if (x[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)])
                    for (int j = 0; j < m; ++j)
                        if (y[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)])
                            r[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 1;
        return r;
    };
    int bound = (m - 1) * (m - 1) + 1;
    std::vector<Row> acc = b, base = b;
    int done = 1;
    while (done < bound) {  // acc = b^bound via square-and-multiply-ish doubling
        acc = mul(acc, base);
        ++done;
        if (done * 2 <= bound) {
            acc = mul(acc, acc);
            done *= 2;
        }
    }
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (!acc[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) return false;
    return true;
}

namespace {

double pf_eigenvalue(const Eigen::MatrixXi& counts) {
    MultiDigraph g;
    g.resize(static_cast<int>(counts.rows()));
    for (int i = 0; i < counts.rows(); ++i)
        for (int j = 0; j < counts.cols(); ++j)
            if (counts(i, j) > 0) g.add_edge(i, j, counts(i, j));
    return spectral_radius(g, 1e-12);
}

void check_structure(const SubstitutionModel& model) {
    if (model.colours <= 0 || model.rank <= 0 || model.dim <= 0 || !model.field)
        fail(ErrorCode::DomainError, "validate", "model has empty structure");
    if (static_cast<int>(model.digits.size()) != model.colours)
        fail(ErrorCode::DomainError, "validate", "digit table row count != colours");
    for (const auto& row : model.digits) {
        if (static_cast<int>(row.size()) != model.colours)
            fail(ErrorCode::DomainError, "validate", "digit table column count != colours");
        for (const auto& entry : row)
            for (const auto& vec : entry) {
                if (static_cast<int>(vec.size()) != model.rank)
                    fail(ErrorCode::DomainError, "validate", "digit vector length != rank");
                for (const auto& s : vec)
                    if (!s.valid() || !s.field()->same_as(*model.field))
                        fail(ErrorCode::FieldMismatch, "validate", "digit scalar in foreign field");
            }
    }
    if (static_cast<int>(model.expansion.size()) != model.rank)
        fail(ErrorCode::DomainError, "validate", "expansion is not rank x rank");
    for (const auto& row : model.expansion)
        if (static_cast<int>(row.size()) != model.rank)
            fail(ErrorCode::DomainError, "validate", "expansion is not rank x rank");
    for (const auto& t : model.translations)
        if (static_cast<int>(t.size()) != model.rank)
            fail(ErrorCode::DomainError, "validate", "translation vector length != rank");
    if (model.realization.dim != model.dim)
        fail(ErrorCode::BadRealization, "validate", "realization dim != model dim");
}

} // namespace

ValidationReport validate(const SubstitutionModel& model) {
    check_structure(model);
    check_realization(model.realization, *model.field, model.rank);

    ValidationReport report;
    report.counts = substitution_counts(model);
    for (int j = 0; j < model.colours; ++j) {
        if (report.counts.col(j).sum() == 0)
            fail(ErrorCode::NotPrimitive, "validate",
                 "colour " + std::to_string(j + 1) + " has no image digits");
    }
    report.primitive = is_primitive(report.counts);
    if (!report.primitive)
        fail(ErrorCode::NotPrimitive, "validate", "substitution matrix is not primitive");

    report.q_real = induced_real_matrix(model.realization, model.expansion, model.field);
    Eigen::VectorXcd eigs = Eigen::EigenSolver<Eigen::MatrixXd>(report.q_real, false).eigenvalues();
    report.expansive = true;
    for (int i = 0; i < eigs.size(); ++i)
        if (std::abs(eigs(i)) <= 1.0 + 1e-9) report.expansive = false;
    if (!report.expansive)
        fail(ErrorCode::NotExpansive, "validate", "realized expansion has an eigenvalue inside |z| <= 1");

    report.abs_det_q = std::abs(report.q_real.determinant());
    report.pf_counts = pf_eigenvalue(report.counts);
    if (std::abs(report.abs_det_q - report.pf_counts) > 1e-6 * std::max(1.0, report.pf_counts))
        fail(ErrorCode::VolumeMismatch, "validate",
             "|det Q| = " + std::to_string(report.abs_det_q) + " != PF(S) = " + std::to_string(report.pf_counts));
    return report;
}

DigitTable digit_power(const SubstitutionModel& model, int k, long long max_digits) {
    if (k < 1) fail(ErrorCode::DomainError, "digit_power", "k must be >= 1");
    DigitTable acc = model.digits;
    long long total = 0;
    for (int step = 2; step <= k; ++step) {
        DigitTable next(static_cast<std::size_t>(model.colours),
                        std::vector<std::vector<FieldVector>>(static_cast<std::size_t>(model.colours)));
        total = 0;
        for (int i = 0; i < model.colours; ++i)
            for (int n = 0; n < model.colours; ++n) {
                const auto& first = model.digit_set(i, n);
                if (first.empty()) continue;
                for (int j = 0; j < model.colours; ++j) {
                    const auto& rest = acc[static_cast<std::size_t>(n)][static_cast<std::size_t>(j)];
                    if (rest.empty()) continue;
                    auto& out = next[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                    for (const auto& d : first)
                        for (const auto& tail : rest) {
                            out.push_back(d + mat_vec(model.expansion, tail));
                            ++total;
                            if (total > max_digits)
                                fail(ErrorCode::CapExceeded, "digit_power",
                                     "digit table exceeds " + std::to_string(max_digits) + " entries");
                        }
                }
            }
        acc = std::move(next);
    }
    return acc;
}

SubstitutionModel power_model(const SubstitutionModel& model, int p) {
    if (p == 1) return model;
    SubstitutionModel out = model;
    out.digits = digit_power(model, p);
    out.expansion = mat_power(model.expansion, p);
    out.name = model.name + "^" + std::to_string(p);
    return out;
}

void iterate_in_place(const SubstitutionModel& model, ColouredPointSet& pts, long long max_points) {
    std::size_t count = pts.size();
    for (std::size_t idx = 0; idx < count; ++idx) {
        // copy: `insert` may reallocate the backing store
        ColouredPoint p = pts.point(idx);
        FieldVector qx = mat_vec(model.expansion, p.pos);
        for (int i = 0; i < model.colours; ++i) {
            for (const auto& d : model.digit_set(i, p.colour)) {
                pts.insert(ColouredPoint{qx + d, i});
                if (static_cast<long long>(pts.size()) > max_points)
                    fail(ErrorCode::CapExceeded, "iterate_points",
                         "point set exceeds " + std::to_string(max_points));
            }
        }
    }
}

ColouredPointSet iterate_points(const SubstitutionModel& model, const ColouredPointSet& pts, int k,
                                long long max_points) {
    if (k < 0) fail(ErrorCode::DomainError, "iterate_points", "negative power");
    ColouredPointSet cur = pts;
    for (int step = 0; step < k; ++step) {
        ColouredPointSet next(model.realization);
        for (std::size_t idx = 0; idx < cur.size(); ++idx) {
            const ColouredPoint& p = cur.point(idx);
            FieldVector qx = mat_vec(model.expansion, p.pos);
            for (int i = 0; i < model.colours; ++i)
                for (const auto& d : model.digit_set(i, p.colour)) {
                    next.insert(ColouredPoint{qx + d, i});
                    if (static_cast<long long>(next.size()) > max_points)
                        fail(ErrorCode::CapExceeded, "iterate_points",
                             "point set exceeds " + std::to_string(max_points));
                }
        }
        cur = std::move(next);
    }
    return cur;
}

FixedSeed fixed_seed(const SubstitutionModel& model, int p_max) {
    for (int p = 1; p <= p_max; ++p) {
        DigitTable table = p == 1 ? model.digits : digit_power(model, p);
        FieldMatrix lhs = mat_sub(identity_matrix(model.field, model.rank), mat_power(model.expansion, p));
        FixedSeed best;
        double best_norm = std::numeric_limits<double>::infinity();
        ScalarVectorKey best_key;
        bool found = false;
        for (int i = 0; i < model.colours; ++i) {
            for (const auto& delta : table[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)]) {
                FieldVector xi;
                try {
                    xi = solve(lhs, delta);
                } catch (const Error& e) {
                    if (e.code() == ErrorCode::SingularMatrix) continue;
                    throw;
                }
                double norm = realize(model.realization, xi).norm();
                ScalarVectorKey key = vector_key(xi);
                bool better = !found || norm < best_norm - 1e-12 ||
                              (norm < best_norm + 1e-12 && key.flat < best_key.flat);
                if (better) {
                    best = FixedSeed{p, ColouredPoint{std::move(xi), i}};
                    best_norm = norm;
                    best_key = std::move(key);
                    found = true;
                }
            }
        }
        if (found) return best;
    }
    fail(ErrorCode::NoFixedPoint, "fixed_seed",
         "no diagonal digit in D^p for p <= " + std::to_string(p_max));
}

std::vector<FieldVector> tile_address_points(const SubstitutionModel& model, int colour, int depth) {
    FieldMatrix q_inv = inverse(model.expansion);
    struct Node {
        int colour;
        FieldVector sum;
    };
    std::vector<Node> frontier = {
        {colour, FieldVector(static_cast<std::size_t>(model.rank), Scalar(model.field))}};
    FieldMatrix prefix = q_inv;
    for (int level = 0; level < depth; ++level) {
        std::vector<Node> next;
        for (const auto& node : frontier)
            for (int k = 0; k < model.colours; ++k)
                for (const auto& d : model.digit_set(k, node.colour))
                    next.push_back({k, node.sum + mat_vec(prefix, d)});
        frontier = std::move(next);
        prefix = mat_mul(prefix, q_inv);
    }
    std::vector<FieldVector> points;
    std::set<std::vector<Rational>> seen;
    for (auto& node : frontier)
        if (seen.insert(vector_key(node.sum).flat).second) points.push_back(std::move(node.sum));
    return points;
}

SubstitutionModel recenter(const SubstitutionModel& model, int depth) {
    std::vector<FieldVector> anchors;
    anchors.reserve(static_cast<std::size_t>(model.colours));
    for (int i = 0; i < model.colours; ++i) {
        auto cloud = tile_address_points(model, i, depth);
        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(model.dim);
        std::vector<Eigen::VectorXd> realized;
        realized.reserve(cloud.size());
        for (const auto& p : cloud) {
            realized.push_back(realize(model.realization, p));
            centroid += realized.back();
        }
        centroid /= static_cast<double>(cloud.size());
        int best = 0;
        double best_dist = (realized[0] - centroid).norm();
        for (std::size_t t = 1; t < cloud.size(); ++t) {
            double dist = (realized[t] - centroid).norm();
            if (dist < best_dist - 1e-12 ||
                (dist < best_dist + 1e-12 &&
                 vector_key(cloud[t]).flat < vector_key(cloud[static_cast<std::size_t>(best)]).flat)) {
                best = static_cast<int>(t);
                best_dist = dist;
            }
        }
        anchors.push_back(cloud[static_cast<std::size_t>(best)]);
    }

    SubstitutionModel out = model;
    for (int i = 0; i < model.colours; ++i)
        for (int j = 0; j < model.colours; ++j) {
            auto& entry = out.digits[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            FieldVector shift = anchors[static_cast<std::size_t>(i)] -
                                mat_vec(model.expansion, anchors[static_cast<std::size_t>(j)]);
            for (auto& d : entry) d = d + shift;
        }
    return out;
}

MeyerDiagnostics meyer_check(const SubstitutionModel& model) {
    MeyerDiagnostics diag;
    Eigen::MatrixXd q_real = induced_real_matrix(model.realization, model.expansion, model.field);
    Eigen::VectorXcd eigs = Eigen::EigenSolver<Eigen::MatrixXd>(q_real, false).eigenvalues();

    // cluster numerically equal eigenvalues
    std::vector<std::complex<double>> distinct;
    std::vector<int> multiplicity;
    for (int i = 0; i < eigs.size(); ++i) {
        std::complex<double> z(eigs(i).real(), eigs(i).imag());
        bool merged = false;
        for (std::size_t k = 0; k < distinct.size(); ++k)
            if (std::abs(distinct[k] - z) < 1e-7 * std::max(1.0, std::abs(z))) {
                ++multiplicity[k];
                merged = true;
                break;
            }
        if (!merged) {
            distinct.push_back(z);
            multiplicity.push_back(1);
        }
    }

    // diagonalizability: || prod (Q - lambda I) || must vanish
    Eigen::MatrixXd acc = Eigen::MatrixXd::Identity(model.dim, model.dim);
    {
        Eigen::MatrixXcd accc = Eigen::MatrixXcd::Identity(model.dim, model.dim);
        double scale = 1.0;
        for (const auto& z : distinct) {
            accc = accc * (q_real.cast<std::complex<double>>() -
                           z * Eigen::MatrixXcd::Identity(model.dim, model.dim));
            scale *= 1.0 + std::abs(z);
        }
        if (accc.cwiseAbs().maxCoeff() > 1e-6 * scale) {
            diag.status = MeyerStatus::Unknown;
            diag.notes.push_back("realized expansion may not be diagonalizable");
            return diag;
        }
        (void)acc;
    }

    // same multiplicity hypothesis
    for (std::size_t k = 1; k < multiplicity.size(); ++k)
        if (multiplicity[k] != multiplicity[0]) {
            diag.status = MeyerStatus::Unknown;
            diag.notes.push_back("eigenvalues do not share a common multiplicity");
            return diag;
        }

    // exact characteristic polynomial of Q as a Q-linear map on K^e
    int deg = model.field->degree();
    int n = model.rank * deg;
    std::vector<Rational> m_q(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), Rational(0));
    for (int comp = 0; comp < model.rank; ++comp)
        for (int pw = 0; pw < deg; ++pw) {
            FieldVector v(static_cast<std::size_t>(model.rank), Scalar(model.field));
            std::vector<Rational> coeffs(static_cast<std::size_t>(deg), Rational(0));
            coeffs[static_cast<std::size_t>(pw)] = 1;
            v[static_cast<std::size_t>(comp)] = Scalar::from_coeffs(model.field, coeffs);
            FieldVector qv = mat_vec(model.expansion, v);
            int col = comp * deg + pw;
            for (int i = 0; i < model.rank; ++i)
                for (int t = 0; t < deg; ++t)
                    m_q[static_cast<std::size_t>((i * deg + t) * n + col)] =
                        qv[static_cast<std::size_t>(i)].coeffs()[static_cast<std::size_t>(t)];
        }
    poly::IPoly all_conjugates = poly::clear_denominators(poly::char_poly(m_q, n));

    // eigenvalues must be algebraic integers sharing one irreducible minimal polynomial
    poly::IPoly min_poly = poly::min_poly_of_root(all_conjugates, distinct[0]);
    if (min_poly.empty() || min_poly.back() != 1) {
        diag.status = MeyerStatus::No;
        diag.notes.push_back("an eigenvalue is not an algebraic integer");
        return diag;
    }
    for (const auto& z : distinct) {
        if (std::abs(poly::eval(min_poly, z)) > 1e-6) {
            diag.status = MeyerStatus::Unknown;
            diag.notes.push_back("eigenvalues are not mutual algebraic conjugates");
            return diag;
        }
    }

    // Pisot family: every conjugate of modulus >= 1 must itself be an eigenvalue.
    for (const auto& gamma : poly::complex_roots(min_poly)) {
        double mod = std::abs(gamma);
        bool matched = false;
        for (const auto& z : distinct)
            if (std::abs(gamma - z) < 1e-6) matched = true;
        if (matched) continue;
        if (mod >= 1.0 + 1e-9) {
            diag.status = MeyerStatus::No;
            diag.notes.push_back("conjugate of modulus " + std::to_string(mod) +
                                 " lies outside the eigenvalue set");
            return diag;
        }
        if (mod > 1.0 - 1e-9) {
            diag.status = MeyerStatus::Unknown;
            diag.notes.push_back("conjugate sits numerically on the unit circle");
            return diag;
        }
    }
    diag.status = MeyerStatus::Yes;
    return diag;
}

} // namespace purepoint
