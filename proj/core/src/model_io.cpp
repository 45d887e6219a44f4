#include "purepoint/model_io.hpp"
#include "purepoint/errors.hpp"

#include <fstream>
#include <set>

namespace purepoint {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

[[noreturn]] void bad(const std::string& what) { fail(ErrorCode::ParseError, "parse", what); }

void require_keys(const json& j, const std::set<std::string>& required,
                  const std::set<std::string>& optional, const std::string& where) {
    if (!j.is_object()) bad(where + ": expected an object");
    for (const auto& [key, value] : j.items()) {
        if (!required.count(key) && !optional.count(key))
            bad(where + ": unknown key \"" + key + "\"");
    }
    for (const auto& key : required)
        if (!j.contains(key)) bad(where + ": missing key \"" + key + "\"");
}

Rational parse_rational_json(const json& j, const std::string& where) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const std::exception& e) {
            bad(where + ": " + e.what());
        }
    }
    bad(where + ": rationals must be integers or \"p/q\" strings");
}

Scalar parse_element(const json& j, const FieldPtr& field, const std::string& where) {
    std::vector<Rational> coeffs;
    if (j.is_array()) {
        if (static_cast<int>(j.size()) > field->degree())
            bad(where + ": coefficient array longer than the field degree");
        for (const auto& c : j) coeffs.push_back(parse_rational_json(c, where));
    } else {
        coeffs.push_back(parse_rational_json(j, where));
    }
    return Scalar::from_coeffs(field, std::move(coeffs));
}

FieldVector parse_vector(const json& j, const FieldPtr& field, int rank, const std::string& where) {
    if (!j.is_array() || static_cast<int>(j.size()) != rank)
        bad(where + ": expected an array of " + std::to_string(rank) + " field elements");
    FieldVector v;
    for (const auto& e : j) v.push_back(parse_element(e, field, where));
    return v;
}

int parse_embedding(const json& j, const FieldPtr& field, const std::string& where) {
    if (j.is_string()) {
        if (j.get<std::string>() == "root") return field->distinguished_embedding();
        bad(where + ": embedding string must be \"root\"");
    }
    if (j.is_number_integer()) {
        int idx = j.get<int>();
        if (idx < 1 || idx > field->embedding_count())
            bad(where + ": embedding index out of range");
        return idx - 1;
    }
    if (j.is_object()) {
        require_keys(j, {"near"}, {}, where);
        const auto& hint = j.at("near");
        if (!hint.is_array() || hint.size() != 2) bad(where + ": \"near\" must be [re, im]");
        std::complex<double> target(hint[0].get<double>(), hint[1].get<double>());
        int best = 0;
        double best_dist = std::abs(field->embedding(0) - target);
        for (int i = 1; i < field->embedding_count(); ++i) {
            double dist = std::abs(field->embedding(i) - target);
            if (dist < best_dist) { best_dist = dist; best = i; }
        }
        return best;
    }
    bad(where + ": embedding must be an index, \"root\", or {\"near\": [re, im]}");
}

} // namespace

SubstitutionModel parse_model_json(const json& j, int precision_bits_override) {
    require_keys(j, {"name", "dim", "rank", "field", "digits"},
                 {"colours", "expansion", "expansion_complex", "realization", "translations"},
                 "model");
    SubstitutionModel model;
    model.name = j.at("name").get<std::string>();
    model.dim = j.at("dim").get<int>();
    model.rank = j.at("rank").get<int>();
    if (model.dim < 1 || model.rank < 1) bad("model: dim and rank must be positive");

    const json& jf = j.at("field");
    require_keys(jf, {"min_poly", "root_hint"}, {"precision_bits"}, "field");
    std::vector<Int> min_poly;
    for (const auto& c : jf.at("min_poly")) {
        if (!c.is_number_integer()) bad("field.min_poly: integer coefficients required");
        min_poly.push_back(Int(c.get<long long>()));
    }
    const auto& hint = jf.at("root_hint");
    if (!hint.is_array() || hint.size() != 2) bad("field.root_hint must be [re, im]");
    int precision = jf.value("precision_bits", 128);
    if (precision_bits_override > 0) precision = precision_bits_override;
    model.field = NumberField::make(std::move(min_poly),
                                    {hint[0].get<double>(), hint[1].get<double>()}, precision);

    bool shorthand = j.contains("expansion_complex");
    if (shorthand == j.contains("expansion"))
        bad("model: provide exactly one of expansion / expansion_complex");
    if (shorthand) {
        if (model.rank != 1 || model.dim != 2)
            bad("expansion_complex requires rank 1 and dim 2");
        if (j.contains("realization"))
            bad("expansion_complex already fixes the realization");
        if (model.field->embedding_is_real(model.field->distinguished_embedding()))
            bad("expansion_complex requires a complex distinguished root");
        model.expansion = {{parse_element(j.at("expansion_complex"), model.field, "expansion_complex")}};
        model.realization.dim = 2;
        model.realization.rows = {{0, model.field->distinguished_embedding(), Part::Re},
                                  {0, model.field->distinguished_embedding(), Part::Im}};
    } else {
        const json& je = j.at("expansion");
        if (!je.is_array() || static_cast<int>(je.size()) != model.rank)
            bad("expansion: expected a rank x rank array");
        for (const auto& row : je) {
            if (!row.is_array() || static_cast<int>(row.size()) != model.rank)
                bad("expansion: expected a rank x rank array");
            std::vector<Scalar> r;
            for (const auto& e : row) r.push_back(parse_element(e, model.field, "expansion"));
            model.expansion.push_back(std::move(r));
        }
        if (!j.contains("realization")) bad("model: missing key \"realization\"");
        const json& jr = j.at("realization");
        if (!jr.is_array() || static_cast<int>(jr.size()) != model.dim)
            bad("realization: expected " + std::to_string(model.dim) + " rows");
        model.realization.dim = model.dim;
        for (const auto& row : jr) {
            require_keys(row, {"component", "embedding", "part"}, {}, "realization row");
            RealizationRow r;
            r.component = row.at("component").get<int>() - 1;
            if (r.component < 0 || r.component >= model.rank)
                bad("realization: component out of range");
            r.embedding = parse_embedding(row.at("embedding"), model.field, "realization row");
            std::string part = row.at("part").get<std::string>();
            if (part != "re" && part != "im") bad("realization: part must be \"re\" or \"im\"");
            r.part = part == "re" ? Part::Re : Part::Im;
            model.realization.rows.push_back(r);
        }
    }

    const json& jd = j.at("digits");
    if (!jd.is_array()) bad("digits: expected an m x m array");
    model.colours = static_cast<int>(jd.size());
    if (j.contains("colours") && j.at("colours").get<int>() != model.colours)
        bad("colours does not match the digit table size");
    for (int i = 0; i < model.colours; ++i) {
        const json& row = jd[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != model.colours)
            bad("digits: table is not m x m");
        std::vector<std::vector<FieldVector>> out_row;
        for (int jj = 0; jj < model.colours; ++jj) {
            const json& entry = row[static_cast<std::size_t>(jj)];
            if (!entry.is_array()) bad("digits: entries are arrays of vectors");
            std::vector<FieldVector> vecs;
            for (const auto& v : entry)
                vecs.push_back(parse_vector(v, model.field, model.rank, "digits"));
            out_row.push_back(std::move(vecs));
        }
        model.digits.push_back(std::move(out_row));
    }

    if (j.contains("translations")) {
        for (const auto& t : j.at("translations"))
            model.translations.push_back(parse_vector(t, model.field, model.rank, "translations"));
    }
    return model;
}

namespace {

ordered_json emit_element(const Scalar& s) {
    ordered_json arr = ordered_json::array();
    for (const auto& c : s.coeffs()) arr.push_back(rational_to_string(c));
    return arr;
}

ordered_json emit_vector(const FieldVector& v) {
    ordered_json arr = ordered_json::array();
    for (const auto& s : v) arr.push_back(emit_element(s));
    return arr;
}

} // namespace

ordered_json emit_model_json(const SubstitutionModel& model) {
    ordered_json j;
    j["name"] = model.name;
    j["dim"] = model.dim;
    j["rank"] = model.rank;
    j["colours"] = model.colours;
    ordered_json jf;
    jf["min_poly"] = ordered_json::array();
    for (const auto& c : model.field->min_poly()) jf["min_poly"].push_back(c.convert_to<long long>());
    std::complex<double> root = model.field->distinguished_root();
    jf["root_hint"] = {root.real(), root.imag()};
    jf["precision_bits"] = model.field->precision_bits();
    j["field"] = jf;
    j["expansion"] = ordered_json::array();
    for (const auto& row : model.expansion) {
        ordered_json r = ordered_json::array();
        for (const auto& e : row) r.push_back(emit_element(e));
        j["expansion"].push_back(r);
    }
    j["digits"] = ordered_json::array();
    for (const auto& row : model.digits) {
        ordered_json r = ordered_json::array();
        for (const auto& entry : row) {
            ordered_json cell = ordered_json::array();
            for (const auto& v : entry) cell.push_back(emit_vector(v));
            r.push_back(cell);
        }
        j["digits"].push_back(r);
    }
    j["realization"] = ordered_json::array();
    for (const auto& row : model.realization.rows) {
        ordered_json r;
        r["component"] = row.component + 1;
        r["embedding"] = row.embedding + 1;
        r["part"] = row.part == Part::Re ? "re" : "im";
        j["realization"].push_back(r);
    }
    if (!model.translations.empty()) {
        j["translations"] = ordered_json::array();
        for (const auto& t : model.translations) j["translations"].push_back(emit_vector(t));
    }
    return j;
}

SymbolicSubstitution parse_symbolic_json(const json& j) {
    require_keys(j, {"alphabet", "rules"}, {"name"}, "symbolic");
    SymbolicSubstitution s;
    s.name = j.value("name", "suspension");
    s.alphabet = j.at("alphabet").get<int>();
    if (s.alphabet < 1 || s.alphabet > 10)
        bad("symbolic: alphabet size must be 1..10 (letters are digit characters)");
    const json& rules = j.at("rules");
    if (!rules.is_array() || static_cast<int>(rules.size()) != s.alphabet)
        bad("symbolic: need one rule word per letter");
    for (const auto& w : rules) {
        if (!w.is_string()) bad("symbolic: rule words are strings of digit letters");
        std::vector<int> word;
        for (char ch : w.get<std::string>()) {
            if (ch < '0' || ch > '9') bad("symbolic: rule letters must be digits");
            word.push_back(ch - '0');
        }
        if (word.empty()) bad("symbolic: empty rule word");
        s.rule.push_back(std::move(word));
    }
    return s;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::IoError, "parse", "cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        fail(ErrorCode::ParseError, "parse", std::string("invalid JSON: ") + e.what());
    }
    return j;
}

SubstitutionModel load_model_file(const std::string& path, int precision_bits_override) {
    return parse_model_json(load_json_file(path), precision_bits_override);
}

SymbolicSubstitution load_symbolic_file(const std::string& path) {
    return parse_symbolic_json(load_json_file(path));
}

} // namespace purepoint
