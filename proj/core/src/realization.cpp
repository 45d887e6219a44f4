#include "purepoint/realization.hpp"
#include "purepoint/errors.hpp"

#include <cmath>

namespace purepoint {

void realize_into(const Realization& r, const FieldVector& x, double* out) {
    for (std::size_t t = 0; t < r.rows.size(); ++t) {
        const RealizationRow& row = r.rows[t];
        std::complex<double> v = x[static_cast<std::size_t>(row.component)].embed(row.embedding);
        out[t] = (row.part == Part::Re) ? v.real() : v.imag();
    }
}

Eigen::VectorXd realize(const Realization& r, const FieldVector& x) {
    Eigen::VectorXd out(r.dim);
    realize_into(r, x, out.data());
    return out;
}

void check_realization(const Realization& r, const NumberField& field, int rank) {
    if (static_cast<int>(r.rows.size()) != r.dim)
        fail(ErrorCode::BadRealization, "realization", "row count differs from dim");
    for (const auto& row : r.rows) {
        if (row.component < 0 || row.component >= rank)
            fail(ErrorCode::BadRealization, "realization", "component index out of range");
        if (row.embedding < 0 || row.embedding >= field.embedding_count())
            fail(ErrorCode::BadRealization, "realization", "embedding index out of range");
        if (field.embedding_is_real(row.embedding) && row.part == Part::Im)
            fail(ErrorCode::BadRealization, "realization", "imaginary part of a real embedding");
    }
    for (int c = 0; c < rank; ++c) {
        bool covered = false;
        for (const auto& row : r.rows) {
            if (row.component != c) continue;
            if (field.embedding_is_real(row.embedding)) { covered = true; break; }
            bool has_re = false, has_im = false;
            for (const auto& other : r.rows) {
                if (other.component != c || other.embedding != row.embedding) continue;
                (other.part == Part::Re ? has_re : has_im) = true;
            }
            if (has_re && has_im) { covered = true; break; }
        }
        if (!covered)
            fail(ErrorCode::BadRealization, "realization",
                 "component " + std::to_string(c + 1) +
                     " lacks a real embedding row or a matched re/im pair");
    }
}

Eigen::MatrixXd induced_real_matrix(const Realization& r, const FieldMatrix& q, const FieldPtr& field) {
    int rank = static_cast<int>(q.size());
    int deg = field->degree();
    int n = rank * deg;
    Eigen::MatrixXd b(r.dim, n), c(r.dim, n);
    int col = 0;
    for (int comp = 0; comp < rank; ++comp) {
        for (int pow = 0; pow < deg; ++pow, ++col) {
            FieldVector v(static_cast<std::size_t>(rank), Scalar(field));
            std::vector<Rational> coeffs(static_cast<std::size_t>(deg), Rational(0));
            coeffs[static_cast<std::size_t>(pow)] = 1;
            v[static_cast<std::size_t>(comp)] = Scalar::from_coeffs(field, coeffs);
            Eigen::VectorXd iv = realize(r, v);
            Eigen::VectorXd iqv = realize(r, mat_vec(q, v));
            b.col(col) = iv;
            c.col(col) = iqv;
        }
    }
    Eigen::MatrixXd bbt = b * b.transpose();
    Eigen::FullPivLU<Eigen::MatrixXd> lu(bbt);
    if (lu.rank() < r.dim)
        fail(ErrorCode::BadRealization, "realization", "realization does not span R^d");
    Eigen::MatrixXd q_real = c * b.transpose() * lu.inverse();
    double scale = std::max(1.0, c.cwiseAbs().maxCoeff());
    double residual = (q_real * b - c).cwiseAbs().maxCoeff();
    if (residual > 1e-8 * scale)
        fail(ErrorCode::BadRealization, "realization",
             "expansion does not act linearly through the realization");
    return q_real;
}

double inv_op_norm(const Eigen::MatrixXd& q_real, int k) {
    Eigen::FullPivLU<Eigen::MatrixXd> lu(q_real);
    if (!lu.isInvertible())
        fail(ErrorCode::NotExpansive, "inv_op_norm", "expansion matrix is singular");
    Eigen::MatrixXd inv = lu.inverse();
    Eigen::MatrixXd acc = Eigen::MatrixXd::Identity(q_real.rows(), q_real.cols());
    for (int i = 0; i < k; ++i) acc = acc * inv;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(acc);
    return svd.singularValues()(0) * (1.0 + 1e-9);
}

int contraction_power(const Eigen::MatrixXd& q_real, int cap) {
    for (int k = 1; k <= cap; ++k)
        if (inv_op_norm(q_real, k) < 1.0) return k;
    fail(ErrorCode::NotExpansive, "inv_op_norm",
         "no k <= " + std::to_string(cap) + " contracts Q^-k below 1");
}

} // namespace purepoint
