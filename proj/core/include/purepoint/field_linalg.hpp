#pragma once

#include "purepoint/number_field.hpp"

namespace purepoint {

// Small dense matrices over the number field, row-major.
using FieldMatrix = std::vector<std::vector<Scalar>>;

FieldMatrix identity_matrix(const FieldPtr& field, int n);
FieldMatrix mat_mul(const FieldMatrix& a, const FieldMatrix& b);
FieldMatrix mat_sub(const FieldMatrix& a, const FieldMatrix& b);
FieldMatrix mat_power(const FieldMatrix& m, int k);
FieldVector mat_vec(const FieldMatrix& m, const FieldVector& v);

Scalar det(const FieldMatrix& m);
// Errors: SingularMatrix when det = 0 exactly.
FieldMatrix inverse(const FieldMatrix& m);
FieldVector solve(const FieldMatrix& m, const FieldVector& b);

// One exact nonzero kernel vector of m; SingularMatrix error if the kernel is
// trivial. Used for Perron eigenvector extraction over Q(beta).
FieldVector kernel_vector(const FieldMatrix& m);

} // namespace purepoint
