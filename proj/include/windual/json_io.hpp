#pragma once

#include "windual/orderiso.hpp"
#include "windual/verify.hpp"

#include <json.hpp>

#include <string>

namespace windual {

using Json = nlohmann::json;

// All numbers travel as "p/q" strings (or "p" when q = 1); +inf and -inf as
// the strings "inf" and "-inf". Nothing in this module touches floating
// point. Parsers throw UsageError on malformed documents.

Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j);

Json extended_to_json(const ExtRat& v);
ExtRat extended_from_json(const Json& j);

Json qvec_to_json(const QVec& v);
QVec qvec_from_json(const Json& j);

Json qmat_to_json(const QMat& m);
QMat qmat_from_json(const Json& j);

// {"dim": n, "matrix": [[...], ...]} with an (n+1)x(n+1) matrix.
Json map_to_json(const ProjectiveMap& f);
ProjectiveMap map_from_json(const Json& j);

// {"normal": [...], "offset": "p/q"}
Json hyperplane_to_json(const Hyperplane& h);
Hyperplane hyperplane_from_json(const Json& j);

// {"dim": n, "vrep": {"vertices": [...], "rays": [...]},
//  "hrep": {"ineqs": [{"a": [...], "b": "p/q"}]}, "empty": bool}
// Serialization always carries both canonical representations; parsing
// accepts either one, and when both are present runs a cheap one-sided
// cross-containment check (every generator must satisfy every inequality).
Json polyhedron_to_json(const Polyhedron& p);
Polyhedron polyhedron_from_json(const Json& j);

// {"dim": n, "window": Polyhedron, "epigraph": Polyhedron}; construction
// revalidates the epigraph invariants.
Json plfunction_to_json(const PLConvexFunction& f);
PLConvexFunction plfunction_from_json(const Json& j);

// {"status": "...", "reason": "...", "target_window": Polyhedron?} with
// target_window present iff accepted.
Json verdict_to_json(const AdmissibilityVerdict& v);

// {"kind": "cvx"|"cvx0", "map": ..., "source_window": ..., "target_window": ...}
Json transform_to_json(const InducedTransform& t);

// {"suite", "trials", "passed", "failed", "seed", "first_failure", "ms"}
Json report_to_json(const SuiteReport& r);

enum class SchemaKind { matrix, polyhedron, plfunction, report };

struct SchemaResult {
    bool ok = false;
    std::string diagnostics;  // empty when ok
};

// Structural validation of the wire formats above; never throws.
SchemaResult schema_check(const Json& doc, SchemaKind kind);

}  // namespace windual
