#pragma once

#include "purepoint/rational.hpp"

#include <complex>
#include <memory>
#include <vector>

namespace purepoint {

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

// An algebraic number field Q(theta) fixed by a monic integer minimal
// polynomial. All complex roots (embeddings) are stored to the working
// precision; one root nearest the construction hint is distinguished.
// Degree 1 is the rational field; theta plays no role there.
class NumberField {
public:
    // Errors: RejectReducible, RejectAmbiguousRoot.
    static FieldPtr make(std::vector<Int> min_poly, std::complex<double> root_hint,
                         int precision_bits = 128);

    int degree() const { return degree_; }
    const std::vector<Int>& min_poly() const { return min_poly_; }
    int precision_bits() const { return precision_bits_; }

    int embedding_count() const { return degree_; }
    std::complex<double> embedding(int idx) const { return embeddings_[static_cast<std::size_t>(idx)]; }
    bool embedding_is_real(int idx) const { return real_embedding_[static_cast<std::size_t>(idx)]; }
    int distinguished_embedding() const { return distinguished_; }
    std::complex<double> distinguished_root() const { return embeddings_[static_cast<std::size_t>(distinguished_)]; }
    double embedding_residual(int idx) const { return residuals_[static_cast<std::size_t>(idx)]; }

    // sigma_emb(theta^k) for k < degree
    std::complex<double> root_power(int emb, int k) const {
        return root_powers_[static_cast<std::size_t>(emb * degree_ + k)];
    }

    // theta^degree = sum_k reduction()[k] * theta^k
    const std::vector<Rational>& reduction() const { return reduction_; }

    bool same_as(const NumberField& other) const;

private:
    NumberField() = default;

    std::vector<Int> min_poly_;
    int degree_ = 0;
    int precision_bits_ = 128;
    int distinguished_ = 0;
    std::vector<std::complex<double>> embeddings_;
    std::vector<bool> real_embedding_;
    std::vector<double> residuals_;
    std::vector<std::complex<double>> root_powers_;
    std::vector<Rational> reduction_;
};

// Exact element of Q(theta) in the power basis 1, theta, ..., theta^(deg-1).
class Scalar {
public:
    Scalar() = default;
    explicit Scalar(FieldPtr field);                       // zero
    Scalar(FieldPtr field, Rational constant);
    static Scalar theta(FieldPtr field);
    static Scalar from_coeffs(FieldPtr field, std::vector<Rational> coeffs);

    const FieldPtr& field() const { return field_; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    bool valid() const { return static_cast<bool>(field_); }

    bool is_zero() const;
    bool is_rational() const;
    Rational rational_part() const { return coeffs_.empty() ? Rational(0) : coeffs_[0]; }

    Scalar operator-() const;
    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar operator*(const Rational& q) const;
    Scalar inverse() const;                                // DivideByZero on 0

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    std::complex<double> embed(int embedding) const;
    double embed_distinguished_real() const { return embed(field_->distinguished_embedding()).real(); }

    std::string to_string() const;                         // "a0 + a1*t + ..." debug form

private:
    void check_same_field(const Scalar& o) const;

    FieldPtr field_;
    std::vector<Rational> coeffs_;
};

using FieldVector = std::vector<Scalar>;

FieldVector operator+(const FieldVector& a, const FieldVector& b);
FieldVector operator-(const FieldVector& a, const FieldVector& b);
FieldVector negate(const FieldVector& a);
bool vectors_equal(const FieldVector& a, const FieldVector& b);

struct ScalarVectorKey {
    std::vector<Rational> flat;
    bool operator==(const ScalarVectorKey& o) const { return flat == o.flat; }
};

ScalarVectorKey vector_key(const FieldVector& v);

struct ScalarVectorKeyHash {
    std::size_t operator()(const ScalarVectorKey& k) const {
        return RationalVectorHash()(k.flat);
    }
};

} // namespace purepoint
