#pragma once

// JSON and DOT encodings of subtrees, modules and verification reports.
//
// Module JSON:
//   { "n": 3, "dim": [x, y], "field": "F2" | "F3" | "F<p>" | "Q",
//     "matrices": [ [[row], ...], ... ],      // n matrices, y rows of x entries
//     "nonzeros": 4,
//     "basisTags": { "columns": [[1], ...], "rows": [[], [1, 3], ...] } }
// Entries are integers (reduced residues for prime fields); non-integral
// rationals are strings "a/b".  basisTags is omitted when absent.

#include <string>

#include <json.hpp>

#include "kronrep/cover_tree.hpp"
#include "kronrep/representation.hpp"
#include "kronrep/theorem.hpp"

namespace kronrep {

nlohmann::ordered_json toJson(const KroneckerModule& m);

// Throws DomainError on a malformed document.
KroneckerModule moduleFromJson(const nlohmann::json& j);

// { "n", "dim", "code", "vertices": [[word], ...] in canonical order,
//   "edges": [[source index, sink index, label], ...] }
nlohmann::ordered_json toJson(const LabeledSubtree& t);

nlohmann::ordered_json toJson(const CoefficientQuiverReport& r);

nlohmann::ordered_json toJson(const TheoremReport& r);

// One node per basis vector (columns c0.., rows r0..), tooltips carry the
// tagged cover vertex; one arrow per nonzero entry labelled "α<label>", with
// the entry appended when it is not 1.
std::string coefficientQuiverDot(const KroneckerModule& m, const std::string& graphName = "coefficient_quiver");

}  // namespace kronrep
