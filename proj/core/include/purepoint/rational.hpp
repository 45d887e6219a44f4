#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/functional/hash.hpp>

#include <string>
#include <vector>

namespace purepoint {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }
inline double to_double(const Int& n) { return n.convert_to<double>(); }

inline bool is_integer(const Rational& q) { return denominator(q) == 1; }

// Parses "p/q", "p", or a plain integer string. Throws std::invalid_argument on junk.
Rational parse_rational(const std::string& text);

// Canonical "p" or "p/q" rendering (q > 0).
std::string rational_to_string(const Rational& q);

inline void hash_combine_rational(std::size_t& seed, const Rational& q) {
    boost::hash_combine(seed, q);
}

struct RationalVectorHash {
    std::size_t operator()(const std::vector<Rational>& v) const {
        std::size_t seed = v.size();
        for (const auto& q : v) boost::hash_combine(seed, q);
        return seed;
    }
};

} // namespace purepoint
