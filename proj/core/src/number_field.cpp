#include "purepoint/number_field.hpp"
#include "purepoint/errors.hpp"
#include "purepoint/polynomials.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace purepoint {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::RejectReducible: return "RejectReducible";
        case ErrorCode::RejectAmbiguousRoot: return "RejectAmbiguousRoot";
        case ErrorCode::DivideByZero: return "DivideByZero";
        case ErrorCode::FieldMismatch: return "FieldMismatch";
        case ErrorCode::SingularMatrix: return "SingularMatrix";
        case ErrorCode::NotExpansive: return "NotExpansive";
        case ErrorCode::NotPrimitive: return "NotPrimitive";
        case ErrorCode::VolumeMismatch: return "VolumeMismatch";
        case ErrorCode::BadRealization: return "BadRealization";
        case ErrorCode::NoFixedPoint: return "NoFixedPoint";
        case ErrorCode::CapExceeded: return "CapExceeded";
        case ErrorCode::NoBasis: return "NoBasis";
        case ErrorCode::NoConvergence: return "NoConvergence";
        case ErrorCode::UnsupportedModel: return "UnsupportedModel";
        case ErrorCode::UnsupportedDim: return "UnsupportedDim";
        case ErrorCode::DomainError: return "DomainError";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(Int(text));
        Int num(text.substr(0, slash));
        Int den(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rational(num, den);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad rational literal: " + text);
    }
}

std::string rational_to_string(const Rational& q) {
    std::ostringstream os;
    os << numerator(q);
    if (denominator(q) != 1) os << "/" << denominator(q);
    return os.str();
}

FieldPtr NumberField::make(std::vector<Int> min_poly, std::complex<double> root_hint,
                           int precision_bits) {
    if (min_poly.size() < 2)
        fail(ErrorCode::DomainError, "field_make", "min_poly must have degree >= 1");
    if (min_poly.back() != 1)
        fail(ErrorCode::DomainError, "field_make", "min_poly must be monic");
    if (precision_bits < 16 || precision_bits > 512)
        fail(ErrorCode::DomainError, "field_make", "precision_bits out of range [16, 512]");

    int deg = static_cast<int>(min_poly.size()) - 1;
    if (deg >= 2 && !poly::is_irreducible(min_poly))
        fail(ErrorCode::RejectReducible, "field_make", "min_poly factors over the rationals");

    auto field = std::shared_ptr<NumberField>(new NumberField());
    field->min_poly_ = std::move(min_poly);
    field->degree_ = deg;
    field->precision_bits_ = precision_bits;

    auto refined = poly::complex_roots_refined(field->min_poly_);
    double residual_bound = std::pow(2.0, -precision_bits / 2.0);
    for (const auto& r : refined) {
        field->embeddings_.push_back(r.approx);
        field->residuals_.push_back(r.residual);
        field->real_embedding_.push_back(r.approx.imag() == 0.0);
        if (r.residual >= residual_bound)
            fail(ErrorCode::DomainError, "field_make",
                 "root refinement missed the requested precision");
    }

    // nearest root to the hint, with an ambiguity guard
    int best = 0;
    double best_dist = std::abs(field->embeddings_[0] - root_hint);
    for (int i = 1; i < deg; ++i) {
        double dist = std::abs(field->embeddings_[static_cast<std::size_t>(i)] - root_hint);
        if (dist < best_dist) { best_dist = dist; best = i; }
    }
    for (int i = 0; i < deg; ++i) {
        if (i == best) continue;
        double dist = std::abs(field->embeddings_[static_cast<std::size_t>(i)] - root_hint);
        double separation = std::abs(field->embeddings_[static_cast<std::size_t>(i)] -
                                     field->embeddings_[static_cast<std::size_t>(best)]);
        if (dist < 1e-6 && separation < 1e-6)
            fail(ErrorCode::RejectAmbiguousRoot, "field_make",
                 "two roots within 1e-6 of the hint and of each other");
    }
    field->distinguished_ = best;

    field->root_powers_.resize(static_cast<std::size_t>(deg) * static_cast<std::size_t>(deg));
    for (int s = 0; s < deg; ++s) {
        std::complex<double> acc(1.0, 0.0);
        for (int k = 0; k < deg; ++k) {
            field->root_powers_[static_cast<std::size_t>(s * deg + k)] = acc;
            acc *= field->embeddings_[static_cast<std::size_t>(s)];
        }
    }

    field->reduction_.resize(static_cast<std::size_t>(deg));
    for (int k = 0; k < deg; ++k)
        field->reduction_[static_cast<std::size_t>(k)] = -Rational(field->min_poly_[static_cast<std::size_t>(k)]);

    return field;
}

bool NumberField::same_as(const NumberField& other) const {
    return this == &other ||
           (min_poly_ == other.min_poly_ && distinguished_ == other.distinguished_);
}

Scalar::Scalar(FieldPtr field) : field_(std::move(field)) {
    coeffs_.assign(static_cast<std::size_t>(field_->degree()), Rational(0));
}

Scalar::Scalar(FieldPtr field, Rational constant) : Scalar(std::move(field)) {
    coeffs_[0] = std::move(constant);
}

Scalar Scalar::theta(FieldPtr field) {
    Scalar s(std::move(field));
    if (s.field_->degree() < 2)
        fail(ErrorCode::DomainError, "scalar", "theta undefined for the rational field");
    s.coeffs_[1] = 1;
    return s;
}

Scalar Scalar::from_coeffs(FieldPtr field, std::vector<Rational> coeffs) {
    Scalar s(std::move(field));
    if (coeffs.size() > s.coeffs_.size())
        fail(ErrorCode::DomainError, "scalar", "coefficient vector longer than field degree");
    for (std::size_t i = 0; i < coeffs.size(); ++i) s.coeffs_[i] = std::move(coeffs[i]);
    return s;
}

bool Scalar::is_zero() const {
    for (const auto& c : coeffs_)
        if (c != 0) return false;
    return true;
}

bool Scalar::is_rational() const {
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) return false;
    return true;
}

void Scalar::check_same_field(const Scalar& o) const {
    if (!field_ || !o.field_ || !field_->same_as(*o.field_))
        fail(ErrorCode::FieldMismatch, "scalar", "operands belong to different fields");
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

Scalar Scalar::operator+(const Scalar& o) const {
    check_same_field(o);
    Scalar r = *this;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] += o.coeffs_[i];
    return r;
}

Scalar Scalar::operator-(const Scalar& o) const {
    check_same_field(o);
    Scalar r = *this;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] -= o.coeffs_[i];
    return r;
}

Scalar Scalar::operator*(const Scalar& o) const {
    check_same_field(o);
    int deg = field_->degree();
    std::vector<Rational> prod(static_cast<std::size_t>(2 * deg - 1), Rational(0));
    for (int i = 0; i < deg; ++i) {
        if (coeffs_[static_cast<std::size_t>(i)] == 0) continue;
        for (int j = 0; j < deg; ++j) {
            if (o.coeffs_[static_cast<std::size_t>(j)] == 0) continue;
            prod[static_cast<std::size_t>(i + j)] +=
                coeffs_[static_cast<std::size_t>(i)] * o.coeffs_[static_cast<std::size_t>(j)];
        }
    }
    const auto& red = field_->reduction();
    for (int k = 2 * deg - 2; k >= deg; --k) {
        Rational t = std::move(prod[static_cast<std::size_t>(k)]);
        if (t == 0) continue;
        prod[static_cast<std::size_t>(k)] = 0;
        for (int i = 0; i < deg; ++i)
            prod[static_cast<std::size_t>(k - deg + i)] += t * red[static_cast<std::size_t>(i)];
    }
    prod.resize(static_cast<std::size_t>(deg));
    Scalar r;
    r.field_ = field_;
    r.coeffs_ = std::move(prod);
    return r;
}

Scalar Scalar::operator*(const Rational& q) const {
    Scalar r = *this;
    for (auto& c : r.coeffs_) c *= q;
    return r;
}

// extended Euclid in Q[x] against the minimal polynomial
Scalar Scalar::inverse() const {
    if (is_zero())
        fail(ErrorCode::DivideByZero, "scalar", "inverse of zero");
    int deg = field_->degree();
    if (deg == 1) {
        Scalar r(field_);
        r.coeffs_[0] = Rational(1) / coeffs_[0];
        return r;
    }
    using poly::QPoly;
    auto trim = [](QPoly& p) {
        while (p.size() > 1 && p.back() == 0) p.pop_back();
    };
    QPoly r0 = poly::to_qpoly(field_->min_poly());
    QPoly r1 = coeffs_;
    trim(r1);
    QPoly s0 = {Rational(0)}, s1 = {Rational(1)};  // coefficients of `this` in the combination
    while (!(r1.size() == 1 && r1[0] == 0)) {
        // divide r0 by r1
        QPoly quot(static_cast<std::size_t>(std::max<int>(1, static_cast<int>(r0.size()) - static_cast<int>(r1.size()) + 1)), Rational(0));
        QPoly rem = r0;
        int dn = static_cast<int>(rem.size()) - 1, dm = static_cast<int>(r1.size()) - 1;
        for (int k = dn - dm; k >= 0; --k) {
            Rational c = rem[static_cast<std::size_t>(k + dm)] / r1.back();
            quot[static_cast<std::size_t>(k)] = c;
            if (c == 0) continue;
            for (int i = 0; i <= dm; ++i)
                rem[static_cast<std::size_t>(k + i)] -= c * r1[static_cast<std::size_t>(i)];
        }
        trim(rem);
        // s_next = s0 - quot * s1
        QPoly qs(quot.size() + s1.size() - 1, Rational(0));
        for (std::size_t i = 0; i < quot.size(); ++i) {
            if (quot[i] == 0) continue;
            for (std::size_t j = 0; j < s1.size(); ++j) qs[i + j] += quot[i] * s1[j];
        }
        QPoly s_next(std::max(s0.size(), qs.size()), Rational(0));
        for (std::size_t i = 0; i < s0.size(); ++i) s_next[i] += s0[i];
        for (std::size_t i = 0; i < qs.size(); ++i) s_next[i] -= qs[i];
        trim(s_next);
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s_next);
    }
    // r0 = gcd (a nonzero constant, since min_poly is irreducible and a != 0)
    if (static_cast<int>(r0.size()) != 1 || r0[0] == 0)
        fail(ErrorCode::DomainError, "scalar", "inverse: unexpected gcd degree");
    Rational scale = Rational(1) / r0[0];
    Scalar out(field_);
    for (std::size_t i = 0; i < s0.size() && i < out.coeffs_.size(); ++i)
        out.coeffs_[i] = s0[i] * scale;
    return out;
}

bool Scalar::operator==(const Scalar& o) const {
    if (!field_ || !o.field_) return field_ == o.field_;
    check_same_field(o);
    return coeffs_ == o.coeffs_;
}

std::complex<double> Scalar::embed(int embedding) const {
    std::complex<double> acc(0.0, 0.0);
    int deg = field_->degree();
    for (int k = 0; k < deg; ++k) {
        const Rational& c = coeffs_[static_cast<std::size_t>(k)];
        if (c == 0) continue;
        acc += to_double(c) * field_->root_power(embedding, k);
    }
    return acc;
}

std::string Scalar::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        if (coeffs_[k] == 0) continue;
        if (!first) os << " + ";
        os << rational_to_string(coeffs_[k]);
        if (k >= 1) os << "*t";
        if (k >= 2) os << "^" << k;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

FieldVector operator+(const FieldVector& a, const FieldVector& b) {
    FieldVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

FieldVector operator-(const FieldVector& a, const FieldVector& b) {
    FieldVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

FieldVector negate(const FieldVector& a) {
    FieldVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

bool vectors_equal(const FieldVector& a, const FieldVector& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!(a[i] == b[i])) return false;
    return true;
}

ScalarVectorKey vector_key(const FieldVector& v) {
    ScalarVectorKey key;
    for (const auto& s : v)
        for (const auto& c : s.coeffs()) key.flat.push_back(c);
    return key;
}

} // namespace purepoint
