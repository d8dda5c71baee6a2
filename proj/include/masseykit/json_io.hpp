#pragma once

#include <string>

#include "json.hpp"

#include "masseykit/massey.hpp"
#include "masseykit/unipotent.hpp"
#include "masseykit/zassenhaus.hpp"

namespace mk {

// Insertion-ordered documents so that identical inputs serialize to
// byte-identical reports.
using Json = nlohmann::ordered_json;

// Parsing wrappers that convert stream and syntax failures into DomainError,
// keeping the parser's line/column information in the message.
Json load_json_file(const std::string& path);
Json parse_json_text(const std::string& text);

// Group documents come in three kinds:
//   {"kind": "permutation", "degree": n, "generators": [[images 0..n-1], ...]}
//   {"kind": "table", "table": [[...], ...], "generators": [i, ...]?}
//   {"kind": "unitriangular", "dim": d, "p": p, "generators": [[[row], ...], ...]}
// Permutation images are zero based one-line notation; unitriangular
// generators are d x d matrices mod p.  All invariants (closure, bound,
// associativity, permutation and matrix validity) are re-checked.
GroupPtr group_from_json(const Json& j);
// Canonical serialization in table form; round trips through group_from_json.
Json group_to_json(const GroupPtr& G);

// Module document: {"rank": r, "modulus": m, "action": {"g": [[row], ...]}}
// with m = p^k a prime power and action keys indices of group elements that
// generate the group.  A missing or empty action means the trivial action.
ModulePtr module_from_json(const GroupPtr& G, const Json& j);
Json module_to_json(const GModule& M);

// Character document: {"values-on-generators": [v, ...], "p": p}, one value
// per group generator in order.  Extension to the whole table is re-derived
// and its consistency verified.
CyclicCharacter character_from_json(const GroupPtr& G, const Json& j);
Json character_to_json(const CyclicCharacter& chi);
// The same data as a scalar 1-cochain over M, which must be trivial of rank
// one with modulus equal to the character denominator.
Cochain character_cochain(const CyclicCharacter& chi, const ModulePtr& M);

// Presentation document: {"generators": g, "p": p, "relators": ["[x1,x2]", ...]}
// with relators in the word grammar of parse_word.
ProPPresentation presentation_from_json(const Json& j);
Json presentation_to_json(const ProPPresentation& P);

// Report fragments shared by the command line front end.
Json vec_to_json(const Vec& v);
Vec vec_from_json(const Json& j);
Json mat_to_json(const Mat& m);
Json massey_report_to_json(const MasseyReport& r);
Json defining_system_to_json(const DefiningSystem& D);
Json unipotent_hom_to_json(const UnipotentHom& h);
Json decomposition_to_json(const CanonicalDecomposition& d);
Json obstruction_report_to_json(const ObstructionReport& r);

}  // namespace mk
