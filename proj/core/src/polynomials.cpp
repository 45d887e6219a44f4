#include "purepoint/polynomials.hpp"
#include "purepoint/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace purepoint::poly {

namespace {

bool near_integer(double v, double tol, Int& out) {
    double r = std::round(v);
    if (std::abs(v - r) > tol) return false;
    out = Int(static_cast<long long>(r));
    return true;
}

} // namespace

int degree(const IPoly& p) { return static_cast<int>(p.size()) - 1; }
int degree(const QPoly& p) { return static_cast<int>(p.size()) - 1; }

std::complex<double> eval(const IPoly& p, std::complex<double> x) {
    std::complex<double> acc(0.0, 0.0);
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + to_double(*it);
    return acc;
}

HighComplex eval_hp(const IPoly& p, const HighComplex& x) {
    HighComplex acc(0, 0);
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + HighComplex(HighFloat(*it), 0);
    return acc;
}

Rational eval(const QPoly& p, const Rational& x) {
    Rational acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

QPoly derivative(const QPoly& p) {
    QPoly d;
    for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * Rational(static_cast<unsigned>(k)));
    if (d.empty()) d.push_back(Rational(0));
    return d;
}

IPoly derivative(const IPoly& p) {
    IPoly d;
    for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * Int(static_cast<unsigned>(k)));
    if (d.empty()) d.push_back(Int(0));
    return d;
}

std::vector<RefinedRoot> complex_roots_refined(const IPoly& p_in) {
    IPoly p = p_in;
    if (p.empty() || p.back() == 0)
        fail(ErrorCode::DomainError, "polynomials", "complex_roots: zero leading coefficient");

    std::vector<RefinedRoot> roots;
    // factor out roots at zero
    std::size_t zero_roots = 0;
    while (zero_roots < p.size() - 1 && p[zero_roots] == 0) ++zero_roots;
    for (std::size_t i = 0; i < zero_roots; ++i) roots.push_back({HighComplex(0, 0), {0.0, 0.0}, 0.0});
    p.erase(p.begin(), p.begin() + static_cast<long>(zero_roots));

    int n = degree(p);
    if (n > 0) {
        Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
        double lead = to_double(p.back());
        for (int i = 0; i < n; ++i) {
            if (i + 1 < n) companion(i + 1, i) = 1.0;
            companion(i, n - 1) = -to_double(p[static_cast<std::size_t>(i)]) / lead;
        }
        Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
        IPoly dp = derivative(p);
        for (int i = 0; i < n; ++i) {
            std::complex<double> z(solver.eigenvalues()(i).real(), solver.eigenvalues()(i).imag());
            // Newton polish in high precision; quadratic except at multiple roots.
            HighComplex hz(z.real(), z.imag());
            for (int it = 0; it < 60; ++it) {
                HighComplex f = eval_hp(p, hz);
                HighComplex df = eval_hp(dp, hz);
                if (abs(df) == 0) break;
                HighComplex step = f / df;
                hz -= step;
                if (abs(step) < HighFloat("1e-80")) break;
            }
            // A polished real root of a real polynomial keeps residual imaginary noise.
            HighFloat im = hz.imag();
            if (abs(im) < HighFloat("1e-40") * (1 + abs(hz.real()))) hz = HighComplex(hz.real(), 0);
            RefinedRoot r;
            r.value = hz;
            r.approx = {hz.real().convert_to<double>(), hz.imag().convert_to<double>()};
            r.residual = abs(eval_hp(p, hz)).convert_to<double>();
            roots.push_back(std::move(r));
        }
    }
    std::sort(roots.begin(), roots.end(), [](const RefinedRoot& a, const RefinedRoot& b) {
        if (a.approx.real() != b.approx.real()) return a.approx.real() < b.approx.real();
        return a.approx.imag() < b.approx.imag();
    });
    return roots;
}

std::vector<std::complex<double>> complex_roots(const IPoly& p) {
    std::vector<std::complex<double>> out;
    for (const auto& r : complex_roots_refined(p)) out.push_back(r.approx);
    return out;
}

bool divide_exact(const QPoly& dividend, const QPoly& monic_divisor, QPoly& quotient) {
    if (monic_divisor.empty() || monic_divisor.back() != 1) return false;
    int dn = degree(dividend), dm = degree(monic_divisor);
    if (dn < dm) return false;
    QPoly rem = dividend;
    quotient.assign(static_cast<std::size_t>(dn - dm + 1), Rational(0));
    for (int k = dn - dm; k >= 0; --k) {
        Rational c = rem[static_cast<std::size_t>(k + dm)];
        quotient[static_cast<std::size_t>(k)] = c;
        if (c == 0) continue;
        for (int i = 0; i <= dm; ++i)
            rem[static_cast<std::size_t>(k + i)] -= c * monic_divisor[static_cast<std::size_t>(i)];
    }
    for (int i = 0; i < dm; ++i)
        if (rem[static_cast<std::size_t>(i)] != 0) return false;
    return true;
}

IPoly min_poly_of_root(const IPoly& p, std::complex<double> target) {
    auto roots = complex_roots(p);
    int n = static_cast<int>(roots.size());
    int t = 0;
    double best = std::abs(roots[0] - target);
    for (int i = 1; i < n; ++i) {
        double dist = std::abs(roots[static_cast<std::size_t>(i)] - target);
        if (dist < best) { best = dist; t = i; }
    }
    QPoly pq = to_qpoly(p);

    // Subsets of roots containing the target, by size; the first integer monic
    // product that exactly divides p is the minimal polynomial.
    std::vector<int> others;
    for (int i = 0; i < n; ++i)
        if (i != t) others.push_back(i);

    for (int size = 1; size <= n; ++size) {
        int pick = size - 1;
        std::vector<int> comb(static_cast<std::size_t>(pick));
        std::iota(comb.begin(), comb.end(), 0);
        bool more = true;
        if (pick > static_cast<int>(others.size())) break;
        while (more) {
            std::vector<std::complex<double>> sel = {roots[static_cast<std::size_t>(t)]};
            for (int idx : comb) sel.push_back(roots[static_cast<std::size_t>(others[static_cast<std::size_t>(idx)])]);
            // expand product of (x - r)
            std::vector<std::complex<double>> coeff = {{1.0, 0.0}};
            for (auto r : sel) {
                coeff.push_back({1.0, 0.0});
                for (int k = static_cast<int>(coeff.size()) - 2; k > 0; --k)
                    coeff[static_cast<std::size_t>(k)] = coeff[static_cast<std::size_t>(k - 1)] - r * coeff[static_cast<std::size_t>(k)];
                coeff[0] = -r * coeff[0];
            }
            IPoly cand(coeff.size());
            bool ok = true;
            for (std::size_t k = 0; k < coeff.size() && ok; ++k) {
                if (std::abs(coeff[k].imag()) > 1e-4) { ok = false; break; }
                ok = near_integer(coeff[k].real(), 1e-4, cand[k]);
            }
            if (ok) {
                QPoly quot;
                if (divide_exact(pq, to_qpoly(cand), quot)) return cand;
            }
            // next combination
            more = false;
            for (int i = pick - 1; i >= 0; --i) {
                if (comb[static_cast<std::size_t>(i)] < static_cast<int>(others.size()) - (pick - i)) {
                    ++comb[static_cast<std::size_t>(i)];
                    for (int j = i + 1; j < pick; ++j)
                        comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
                    more = true;
                    break;
                }
            }
            if (pick == 0) break;
        }
    }
    return {};
}

bool is_irreducible(const IPoly& monic_poly) {
    if (degree(monic_poly) <= 1) return true;
    auto roots = complex_roots(monic_poly);
    IPoly f = min_poly_of_root(monic_poly, roots[0]);
    return degree(f) == degree(monic_poly);
}

QPoly char_poly(const std::vector<Rational>& matrix, int n) {
    auto at = [&](const std::vector<Rational>& m, int i, int j) -> const Rational& {
        return m[static_cast<std::size_t>(i * n + j)];
    };
    std::vector<Rational> M(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), Rational(0));
    for (int i = 0; i < n; ++i) M[static_cast<std::size_t>(i * n + i)] = 1;

    QPoly c(static_cast<std::size_t>(n + 1), Rational(0));
    c[static_cast<std::size_t>(n)] = 1;
    for (int k = 1; k <= n; ++k) {
        // M <- A * M
        std::vector<Rational> AM(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), Rational(0));
        for (int i = 0; i < n; ++i)
            for (int l = 0; l < n; ++l) {
                const Rational& a = at(matrix, i, l);
                if (a == 0) continue;
                for (int j = 0; j < n; ++j) {
                    const Rational& m = at(M, l, j);
                    if (m != 0) AM[static_cast<std::size_t>(i * n + j)] += a * m;
                }
            }
        Rational tr = 0;
        for (int i = 0; i < n; ++i) tr += AM[static_cast<std::size_t>(i * n + i)];
        Rational ck = -tr / k;
        c[static_cast<std::size_t>(n - k)] = ck;
        for (int i = 0; i < n; ++i) AM[static_cast<std::size_t>(i * n + i)] += ck;
        M.swap(AM);
    }
    return c;
}

QPoly to_qpoly(const IPoly& p) {
    QPoly q(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) q[i] = Rational(p[i]);
    return q;
}

IPoly clear_denominators(const QPoly& p) {
    Int lcm = 1;
    for (const auto& c : p) {
        Int den = denominator(c);
        lcm = lcm / gcd(lcm, den) * den;
    }
    IPoly out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        Rational scaled = p[i] * Rational(lcm);
        out[i] = numerator(scaled);
    }
    return out;
}

} // namespace purepoint::poly
