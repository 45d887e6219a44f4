#include "purepoint/field_linalg.hpp"
#include "purepoint/errors.hpp"

namespace purepoint {

namespace {

FieldPtr field_of(const FieldMatrix& m) {
    if (m.empty() || m[0].empty() || !m[0][0].valid())
        fail(ErrorCode::DomainError, "mat_ops", "empty or invalid matrix");
    return m[0][0].field();
}

} // namespace

FieldMatrix identity_matrix(const FieldPtr& field, int n) {
    FieldMatrix m(static_cast<std::size_t>(n), std::vector<Scalar>(static_cast<std::size_t>(n), Scalar(field)));
    for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = Scalar(field, 1);
    return m;
}

FieldMatrix mat_mul(const FieldMatrix& a, const FieldMatrix& b) {
    auto field = field_of(a);
    std::size_t n = a.size(), k = b.size(), p = b[0].size();
    FieldMatrix r(n, std::vector<Scalar>(p, Scalar(field)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (a[i][l].is_zero()) continue;
            for (std::size_t j = 0; j < p; ++j) {
                if (b[l][j].is_zero()) continue;
                r[i][j] += a[i][l] * b[l][j];
            }
        }
    return r;
}

FieldMatrix mat_sub(const FieldMatrix& a, const FieldMatrix& b) {
    FieldMatrix r = a;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) r[i][j] = a[i][j] - b[i][j];
    return r;
}

FieldMatrix mat_power(const FieldMatrix& m, int k) {
    auto field = field_of(m);
    FieldMatrix r = identity_matrix(field, static_cast<int>(m.size()));
    for (int i = 0; i < k; ++i) r = mat_mul(r, m);
    return r;
}

FieldVector mat_vec(const FieldMatrix& m, const FieldVector& v) {
    auto field = field_of(m);
    FieldVector r(m.size(), Scalar(field));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (m[i][j].is_zero() || v[j].is_zero()) continue;
            r[i] += m[i][j] * v[j];
        }
    return r;
}

namespace {

// Fraction-free-ish Gaussian elimination; returns (row echelon, det, pivot columns).
struct Echelon {
    FieldMatrix rows;
    Scalar determinant;
    std::vector<int> pivot_col;  // per pivot row
};

Echelon eliminate(FieldMatrix m) {
    auto field = field_of(m);
    int nrows = static_cast<int>(m.size());
    int ncols = static_cast<int>(m[0].size());
    Scalar detv(field, 1);
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < ncols && r < nrows; ++c) {
        int piv = -1;
        for (int i = r; i < nrows; ++i)
            if (!m[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)].is_zero()) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r) {
            std::swap(m[static_cast<std::size_t>(piv)], m[static_cast<std::size_t>(r)]);
            detv = -detv;
        }
        Scalar inv = m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)].inverse();
        detv = detv * m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
        for (int j = c; j < ncols; ++j)
            m[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] =
                m[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] * inv;
        for (int i = 0; i < nrows; ++i) {
            if (i == r) continue;
            Scalar f = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
            if (f.is_zero()) continue;
            for (int j = c; j < ncols; ++j)
                m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -=
                    f * m[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)];
        }
        pivots.push_back(c);
        ++r;
    }
    if (r < std::min(nrows, ncols) || nrows != ncols) {
        // rank-deficient square matrices have det 0
    }
    if (nrows == ncols && r < nrows) detv = Scalar(field, 0);
    return {std::move(m), std::move(detv), std::move(pivots)};
}

} // namespace

Scalar det(const FieldMatrix& m) {
    if (m.size() != m[0].size())
        fail(ErrorCode::DomainError, "mat_ops", "det of non-square matrix");
    return eliminate(m).determinant;
}

FieldMatrix inverse(const FieldMatrix& m) {
    auto field = field_of(m);
    int n = static_cast<int>(m.size());
    // eliminate [m | I]
    FieldMatrix aug = m;
    FieldMatrix id = identity_matrix(field, n);
    for (int i = 0; i < n; ++i)
        aug[static_cast<std::size_t>(i)].insert(aug[static_cast<std::size_t>(i)].end(),
                                                id[static_cast<std::size_t>(i)].begin(),
                                                id[static_cast<std::size_t>(i)].end());
    Echelon e = eliminate(std::move(aug));
    if (static_cast<int>(e.pivot_col.size()) != n || e.pivot_col.back() >= n)
        fail(ErrorCode::SingularMatrix, "mat_ops", "matrix is singular");
    FieldMatrix r(static_cast<std::size_t>(n), std::vector<Scalar>(static_cast<std::size_t>(n), Scalar(field)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            r[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                e.rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(n + j)];
    return r;
}

FieldVector solve(const FieldMatrix& m, const FieldVector& b) {
    auto field = field_of(m);
    int n = static_cast<int>(m.size());
    FieldMatrix aug = m;
    for (int i = 0; i < n; ++i) aug[static_cast<std::size_t>(i)].push_back(b[static_cast<std::size_t>(i)]);
    Echelon e = eliminate(std::move(aug));
    if (static_cast<int>(e.pivot_col.size()) != n || e.pivot_col.back() >= n)
        fail(ErrorCode::SingularMatrix, "mat_ops", "matrix is singular");
    FieldVector x(static_cast<std::size_t>(n), Scalar(field));
    for (int i = 0; i < n; ++i)
        x[static_cast<std::size_t>(i)] = e.rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(n)];
    return x;
}

FieldVector kernel_vector(const FieldMatrix& m) {
    auto field = field_of(m);
    int n = static_cast<int>(m[0].size());
    Echelon e = eliminate(m);
    std::vector<int> pivot_of_col(static_cast<std::size_t>(n), -1);
    for (std::size_t r = 0; r < e.pivot_col.size(); ++r)
        pivot_of_col[static_cast<std::size_t>(e.pivot_col[r])] = static_cast<int>(r);
    int free_col = -1;
    for (int c = 0; c < n; ++c)
        if (pivot_of_col[static_cast<std::size_t>(c)] < 0) { free_col = c; break; }
    if (free_col < 0)
        fail(ErrorCode::SingularMatrix, "mat_ops", "kernel is trivial");
    FieldVector x(static_cast<std::size_t>(n), Scalar(field));
    x[static_cast<std::size_t>(free_col)] = Scalar(field, 1);
    for (int c = 0; c < n; ++c) {
        int r = pivot_of_col[static_cast<std::size_t>(c)];
        if (r >= 0)
            x[static_cast<std::size_t>(c)] =
                -e.rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(free_col)];
    }
    return x;
}

} // namespace purepoint
