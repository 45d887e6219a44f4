#pragma once

#include "purepoint/model.hpp"

#include <string>
#include <vector>

namespace purepoint {

struct SymbolicSubstitution {
    std::string name;
    int alphabet = 0;                    // letters 0 .. alphabet-1
    std::vector<std::vector<int>> rule;  // image word per letter
};

// Occurrence matrix M_ij = #{positions of letter i in rule[j]}.
Eigen::MatrixXi incidence_matrix(const SymbolicSubstitution& s);

// Suspension into an interval tiling: beta = Perron root of the incidence
// matrix, tile lengths a left Perron eigenvector over Q(beta) scaled so the
// first length is 1, digits the exact prefix sums of each rule word.
// Errors: NotPrimitive.
SubstitutionModel suspend_symbolic(const SymbolicSubstitution& s, int precision_bits = 128);

} // namespace purepoint
