#include "courant/json_io.hpp"

namespace courant {

namespace {

const nlohmann::json& field(const nlohmann::json& j, const std::string& key) {
    auto it = j.find(key);
    if (it == j.end()) throw FileFormatError("file: missing field '" + key + "'");
    return *it;
}

int int_field(const nlohmann::json& j, const std::string& key) {
    const nlohmann::json& v = field(j, key);
    if (!v.is_number_integer()) throw FileFormatError("file: field '" + key + "' must be an integer");
    return v.get<int>();
}

Rational rational_field(const nlohmann::json& v, const std::string& what) {
    try {
        if (v.is_number_integer()) return Rational(v.get<long>());
        if (v.is_string()) return Rational::parse(v.get<std::string>());
    } catch (const std::exception& e) {
        throw FileFormatError("file: bad rational in " + what + ": " + e.what());
    }
    throw FileFormatError("file: " + what + " must be a rational string or integer");
}

}  // namespace

RatMatrix matrix_from_json(const nlohmann::json& j, const std::string& what) {
    if (!j.is_array() || j.empty()) throw FileFormatError("file: " + what + " must be a non-empty array of rows");
    std::size_t rows = j.size();
    if (!j[0].is_array() || j[0].empty())
        throw FileFormatError("file: " + what + " rows must be non-empty arrays");
    std::size_t cols = j[0].size();
    RatMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array() || j[r].size() != cols)
            throw FileFormatError("file: " + what + " rows have inconsistent lengths");
        for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = rational_field(j[r][c], what);
    }
    return m;
}

nlohmann::json matrix_to_json(const RatMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m.at(r, c).str());
        rows.push_back(std::move(row));
    }
    return rows;
}

AlgebroidData algebroid_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw FileFormatError("file: algebroid description must be an object");
    AlgebroidData d;
    d.rank = int_field(j, "rank");
    d.derivations = int_field(j, "derivations");
    d.metric = matrix_from_json(field(j, "metric"), "metric");
    d.anchor = matrix_from_json(field(j, "anchor"), "anchor");

    if (auto it = j.find("structure"); it != j.end()) {
        if (!it->is_array()) throw FileFormatError("file: structure must be an array");
        for (const auto& e : *it)
            d.structure.push_back({int_field(e, "i"), int_field(e, "j"), int_field(e, "k"),
                                   rational_field(field(e, "c"), "structure constant")});
    }
    if (auto it = j.find("commutators"); it != j.end()) {
        if (!it->is_array()) throw FileFormatError("file: commutators must be an array");
        for (const auto& e : *it)
            d.commutators.push_back({int_field(e, "a"), int_field(e, "b"), int_field(e, "c"),
                                     rational_field(field(e, "e"), "commutator constant")});
    }

    std::string mode = field(j, "mode").get<std::string>();
    if (mode == "proto_courant")
        d.mode = AlgebroidMode::proto_courant;
    else if (mode == "almost_leibniz")
        d.mode = AlgebroidMode::almost_leibniz;
    else
        throw FileFormatError("file: unknown mode '" + mode + "'");
    return d;
}

nlohmann::json algebroid_to_json(const AlgebroidData& data) {
    nlohmann::json j;
    j["rank"] = data.rank;
    j["derivations"] = data.derivations;
    j["metric"] = matrix_to_json(data.metric);
    j["anchor"] = matrix_to_json(data.anchor);
    nlohmann::json structure = nlohmann::json::array();
    for (const StructEntry& s : data.structure)
        structure.push_back({{"i", s.i}, {"j", s.j}, {"k", s.k}, {"c", s.c.str()}});
    j["structure"] = std::move(structure);
    nlohmann::json commutators = nlohmann::json::array();
    for (const CommEntry& c : data.commutators)
        commutators.push_back({{"a", c.a}, {"b", c.b}, {"c", c.c}, {"e", c.e.str()}});
    j["commutators"] = std::move(commutators);
    j["mode"] = data.mode == AlgebroidMode::proto_courant ? "proto_courant" : "almost_leibniz";
    return j;
}

Section section_from_json(const nlohmann::json& j, const Algebroid& handle) {
    if (!j.is_object()) throw FileFormatError("file: section must be an object");
    const nlohmann::json& coeffs = field(j, "coeffs");
    if (!coeffs.is_array()) throw FileFormatError("file: section coeffs must be an array");
    if (coeffs.size() != static_cast<std::size_t>(handle.rank()))
        throw FileFormatError("file: section has " + std::to_string(coeffs.size()) +
                              " coefficients, algebroid rank is " + std::to_string(handle.rank()));
    Section s;
    for (const auto& entry : coeffs) {
        if (!entry.is_string()) throw FileFormatError("file: section coefficients must be strings");
        s.coeffs.push_back(parse_scalar(entry.get<std::string>(), handle.derivation_algebra()));
    }
    return s;
}

nlohmann::json section_to_json(const Section& s) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (const ScalarExpr& c : s.coeffs) coeffs.push_back(to_string(c, /*pretty=*/false));
    return nlohmann::json{{"coeffs", std::move(coeffs)}};
}

RatMatrix endomorphism_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw FileFormatError("file: endomorphism must be an object");
    return matrix_from_json(field(j, "matrix"), "endomorphism matrix");
}

nlohmann::json endomorphism_to_json(const RatMatrix& m) {
    return nlohmann::json{{"matrix", matrix_to_json(m)}};
}

nlohmann::json criterion_report_to_json(const CriterionReport& report) {
    nlohmann::json j;
    j["tensorial"] = report.tensorial;
    nlohmann::json violations = nlohmann::json::array();
    for (const Violation& v : report.violations)
        violations.push_back(
            {{"family", v.family}, {"i", v.i}, {"t", v.t}, {"residual", v.residual.str()}});
    j["violations"] = std::move(violations);
    if (report.quotient)
        j["quotient"] = to_string(*report.quotient);
    else
        j["quotient"] = nullptr;
    return j;
}

}  // namespace courant
