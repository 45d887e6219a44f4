#pragma once

#include "purepoint/rational.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include <complex>
#include <vector>

namespace purepoint::poly {

// Polynomials are coefficient vectors in ascending order; index k holds the
// coefficient of x^k. Leading coefficient must be nonzero unless stated.
using IPoly = std::vector<Int>;
using QPoly = std::vector<Rational>;

using HighFloat = boost::multiprecision::cpp_bin_float_100;
using HighComplex = boost::multiprecision::cpp_complex_100;

int degree(const IPoly& p);
int degree(const QPoly& p);

std::complex<double> eval(const IPoly& p, std::complex<double> x);
HighComplex eval_hp(const IPoly& p, const HighComplex& x);
Rational eval(const QPoly& p, const Rational& x);

QPoly derivative(const QPoly& p);
IPoly derivative(const IPoly& p);

// All complex roots (with multiplicity), companion-matrix eigenvalues polished
// by high-precision Newton, sorted by (re, im). Deterministic.
std::vector<std::complex<double>> complex_roots(const IPoly& p);

struct RefinedRoot {
    HighComplex value;
    std::complex<double> approx;
    double residual = 0.0;  // |p(value)| at high precision
};

std::vector<RefinedRoot> complex_roots_refined(const IPoly& p);

// Exact division in Q[x] by a monic divisor; returns true and fills quotient
// when the remainder is identically zero.
bool divide_exact(const QPoly& dividend, const QPoly& monic_divisor, QPoly& quotient);

// Minimal-degree monic integer factor of p having the root nearest `target`.
// p needs integer coefficients but not monicity. Empty result means no proper
// monic integer factor through that root exists (the root is not an algebraic
// integer, e.g. p non-monic and irreducible).
IPoly min_poly_of_root(const IPoly& p, std::complex<double> target);

bool is_irreducible(const IPoly& monic_poly);

// Characteristic polynomial of a rational matrix (row-major, n*n entries),
// monic ascending, via Faddeev-LeVerrier. Exact.
QPoly char_poly(const std::vector<Rational>& matrix, int n);

QPoly to_qpoly(const IPoly& p);
// Clears denominators; result has integer coefficients and the same roots.
IPoly clear_denominators(const QPoly& p);

} // namespace purepoint::poly
