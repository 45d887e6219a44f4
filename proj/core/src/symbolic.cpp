#include "purepoint/symbolic.hpp"
#include "purepoint/errors.hpp"
#include "purepoint/polynomials.hpp"

#include <algorithm>

namespace purepoint {

Eigen::MatrixXi incidence_matrix(const SymbolicSubstitution& s) {
    Eigen::MatrixXi m = Eigen::MatrixXi::Zero(s.alphabet, s.alphabet);
    for (int j = 0; j < s.alphabet; ++j)
        for (int letter : s.rule[static_cast<std::size_t>(j)]) {
            if (letter < 0 || letter >= s.alphabet)
                fail(ErrorCode::ParseError, "suspend", "rule letter out of alphabet range");
            m(letter, j) += 1;
        }
    return m;
}

SubstitutionModel suspend_symbolic(const SymbolicSubstitution& s, int precision_bits) {
    if (s.alphabet <= 0 || static_cast<int>(s.rule.size()) != s.alphabet)
        fail(ErrorCode::ParseError, "suspend", "rule count differs from alphabet size");
    Eigen::MatrixXi counts = incidence_matrix(s);
    if (!is_primitive(counts))
        fail(ErrorCode::NotPrimitive, "suspend", "incidence matrix is not primitive");

    int m = s.alphabet;
    std::vector<Rational> entries(static_cast<std::size_t>(m) * static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            entries[static_cast<std::size_t>(i * m + j)] = counts(i, j);
    poly::QPoly char_q = poly::char_poly(entries, m);
    poly::IPoly char_i = poly::clear_denominators(char_q);

    // numeric Perron root to pick the right irreducible factor and embedding
    MultiDigraph g;
    g.resize(m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (counts(i, j) > 0) g.add_edge(i, j, counts(i, j));
    double pf = spectral_radius(g, 1e-12);

    poly::IPoly min_poly = poly::min_poly_of_root(char_i, {pf, 0.0});
    if (min_poly.empty())
        fail(ErrorCode::DomainError, "suspend", "failed to isolate the Perron root's minimal polynomial");

    FieldPtr field = NumberField::make(min_poly, {pf, 0.0}, precision_bits);
    Scalar beta = field->degree() == 1 ? Scalar(field, -Rational(min_poly[0]))
                                       : Scalar::theta(field);

    // left eigenvector: kernel of (S^T - beta I)
    FieldMatrix lhs(static_cast<std::size_t>(m), std::vector<Scalar>(static_cast<std::size_t>(m), Scalar(field)));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            lhs[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = Scalar(field, counts(j, i));
            if (i == j)
                lhs[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -= beta;
        }
    FieldVector lengths = kernel_vector(lhs);
    Scalar norm = lengths[0];
    if (norm.is_zero())
        fail(ErrorCode::DomainError, "suspend", "Perron eigenvector has zero first entry");
    Scalar scale = norm.inverse();
    for (auto& l : lengths) l = l * scale;
    int pf_embedding = field->distinguished_embedding();
    for (const auto& l : lengths)
        if (l.embed(pf_embedding).real() <= 0)
            fail(ErrorCode::DomainError, "suspend", "eigenvector is not positive");

    SubstitutionModel model;
    model.name = s.name.empty() ? "suspension" : s.name;
    model.colours = m;
    model.rank = 1;
    model.dim = 1;
    model.field = field;
    model.expansion = {{beta}};
    model.realization.dim = 1;
    model.realization.rows = {{0, pf_embedding, Part::Re}};
    model.digits.assign(static_cast<std::size_t>(m),
                        std::vector<std::vector<FieldVector>>(static_cast<std::size_t>(m)));
    for (int j = 0; j < m; ++j) {
        Scalar offset(field);
        for (int letter : s.rule[static_cast<std::size_t>(j)]) {
            model.digits[static_cast<std::size_t>(letter)][static_cast<std::size_t>(j)].push_back(
                FieldVector{offset});
            offset += lengths[static_cast<std::size_t>(letter)];
        }
    }
    return model;
}

} // namespace purepoint
