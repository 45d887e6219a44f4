#pragma once

#include "purepoint/field_linalg.hpp"
#include "purepoint/number_field.hpp"

#include <Eigen/Dense>

namespace purepoint {

enum class Part { Re, Im };

struct RealizationRow {
    int component;   // 0-based index into the module rank e
    int embedding;   // 0-based index into the field's embeddings
    Part part;
};

// Geometric realization iota: K^e -> R^d. Row t of the output picks the
// chosen part of the chosen embedding of the chosen component.
struct Realization {
    int dim = 0;
    std::vector<RealizationRow> rows;
};

Eigen::VectorXd realize(const Realization& r, const FieldVector& x);
void realize_into(const Realization& r, const FieldVector& x, double* out);

// Invariant check: every component is covered by a real-embedding row or a
// matched re/im pair of one complex embedding (injectivity of iota).
// Errors: BadRealization.
void check_realization(const Realization& r, const NumberField& field, int rank);

// The real matrix Q_R with iota(Qx) = Q_R iota(x), obtained by solving on a
// Q-basis of K^e and verifying the residual. Errors: BadRealization when iota
// does not span R^d or no consistent real matrix exists.
Eigen::MatrixXd induced_real_matrix(const Realization& r, const FieldMatrix& q, const FieldPtr& field);

// Operator (spectral) norm of Q_real^-k, inflated by 1 + 1e-9 so callers hold
// an upper bound.
double inv_op_norm(const Eigen::MatrixXd& q_real, int k);

// Least k with inv_op_norm(q_real, k) < 1. Errors: NotExpansive past the cap.
int contraction_power(const Eigen::MatrixXd& q_real, int cap = 64);

} // namespace purepoint
