/*
 * json_io.hpp
 * -----------
 * JSON serialization for the file formats consumed and produced by the CLI:
 * algebroid descriptions, sections, endomorphisms, and criterion reports.
 * Rationals travel as strings ("p/q" or "p"); indices are 1-based.
 */
#pragma once

#include "courant/algebroid.hpp"
#include "courant/tensorial.hpp"

#include <json.hpp>

#include <string>

namespace courant {

struct FileFormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// {"rank": r, "derivations": n, "metric": [[...]], "anchor": [[...]],
///  "structure": [{"i","j","k","c"}], "commutators": [{"a","b","c","e"}],
///  "mode": "proto_courant"|"almost_leibniz"}
AlgebroidData algebroid_from_json(const nlohmann::json& j);
nlohmann::json algebroid_to_json(const AlgebroidData& data);

/// {"coeffs": ["...", ...]}, entries in the scalar expression grammar.
Section section_from_json(const nlohmann::json& j, const Algebroid& handle);
nlohmann::json section_to_json(const Section& s);

/// {"matrix": [[...]]}
RatMatrix endomorphism_from_json(const nlohmann::json& j);
nlohmann::json endomorphism_to_json(const RatMatrix& m);

/// {"tensorial": bool, "violations": [{"family","i","t","residual"}],
///  "quotient": "..."|null}
nlohmann::json criterion_report_to_json(const CriterionReport& report);

nlohmann::json matrix_to_json(const RatMatrix& m);
RatMatrix matrix_from_json(const nlohmann::json& j, const std::string& what);

}  // namespace courant
