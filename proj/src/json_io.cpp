#include "windual/json_io.hpp"

#include <utility>

namespace windual {

namespace {

const Json& field(const Json& j, const char* name) {
    if (!j.is_object()) throw UsageError("expected a JSON object");
    auto it = j.find(name);
    if (it == j.end()) throw UsageError(std::string("missing field \"") + name + "\"");
    return *it;
}

bool is_nonneg_int(const Json& v) {
    return v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0);
}

std::size_t size_field(const Json& j, const char* name) {
    const Json& v = field(j, name);
    if (!is_nonneg_int(v)) {
        throw UsageError(std::string("field \"") + name + "\" must be a nonnegative integer");
    }
    return v.get<std::size_t>();
}

}  // namespace

Json rational_to_json(const Rational& r) { return rational_to_string(r); }

Rational rational_from_json(const Json& j) {
    if (j.is_number_integer() || j.is_number_unsigned()) {
        return Rational(Integer(j.get<long long>()));
    }
    if (j.is_number_float()) {
        throw UsageError("floating point is not accepted; write rationals as \"p/q\"");
    }
    if (!j.is_string()) throw UsageError("rationals are JSON strings \"p/q\"");
    return rational_from_string(j.get<std::string>());
}

Json extended_to_json(const ExtRat& v) {
    if (v.is_plus_inf()) return "inf";
    if (v.is_minus_inf()) return "-inf";
    return rational_to_json(v.value);
}

ExtRat extended_from_json(const Json& j) {
    if (!j.is_string()) throw UsageError("extended rationals are JSON strings");
    const std::string s = j.get<std::string>();
    if (s == "inf") return ExtRat::plus_inf();
    if (s == "-inf") return ExtRat::minus_inf();
    return ExtRat::finite(rational_from_string(s));
}

Json qvec_to_json(const QVec& v) {
    Json a = Json::array();
    for (std::size_t i = 0; i < v.dim(); ++i) a.push_back(rational_to_json(v[i]));
    return a;
}

QVec qvec_from_json(const Json& j) {
    if (!j.is_array()) throw UsageError("vectors are JSON arrays of rationals");
    QVec v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) v[i] = rational_from_json(j[i]);
    return v;
}

Json qmat_to_json(const QMat& m) {
    Json a = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(qvec_to_json(m.row(i)));
    return a;
}

QMat qmat_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw UsageError("matrices are nonempty JSON arrays of rows");
    const std::size_t rows = j.size();
    const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
    if (cols == 0) throw UsageError("matrix rows are nonempty JSON arrays");
    QMat m = QMat::zero(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        QVec row = qvec_from_json(j[i]);
        if (row.dim() != cols) throw UsageError("matrix rows≠cols: ragged rows");
        for (std::size_t k = 0; k < cols; ++k) m.at(i, k) = row[k];
    }
    return m;
}

Json map_to_json(const ProjectiveMap& f) {
    return Json{{"dim", f.dim()}, {"matrix", qmat_to_json(f.mat())}};
}

ProjectiveMap map_from_json(const Json& j) {
    const std::size_t n = size_field(j, "dim");
    QMat m = qmat_from_json(field(j, "matrix"));
    if (m.rows() != n + 1 || m.cols() != n + 1) {
        throw UsageError("matrix rows≠cols: expected (dim+1) x (dim+1)");
    }
    return ProjectiveMap(n, std::move(m));
}

Json hyperplane_to_json(const Hyperplane& h) {
    return Json{{"normal", qvec_to_json(h.normal)}, {"offset", rational_to_json(h.offset)}};
}

Hyperplane hyperplane_from_json(const Json& j) {
    return Hyperplane{qvec_from_json(field(j, "normal")), rational_from_json(field(j, "offset"))};
}

Json polyhedron_to_json(const Polyhedron& p) {
    VRep v = to_vrep(p);
    HRep h = to_hrep(p);
    Json verts = Json::array();
    for (const auto& x : v.vertices) verts.push_back(qvec_to_json(x));
    Json rays = Json::array();
    for (const auto& r : v.rays) rays.push_back(qvec_to_json(r));
    Json ineqs = Json::array();
    for (const auto& [a, b] : h.ineqs) {
        ineqs.push_back(Json{{"a", qvec_to_json(a)}, {"b", rational_to_json(b)}});
    }
    return Json{{"dim", p.dim()},
                {"vrep", Json{{"vertices", std::move(verts)}, {"rays", std::move(rays)}}},
                {"hrep", Json{{"ineqs", std::move(ineqs)}}},
                {"empty", p.is_empty()}};
}

Polyhedron polyhedron_from_json(const Json& j) {
    const std::size_t n = size_field(j, "dim");
    const bool has_v = j.is_object() && j.contains("vrep");
    const bool has_h = j.is_object() && j.contains("hrep");
    if (!has_v && !has_h) {
        if (j.contains("empty") && field(j, "empty").is_boolean() && j["empty"].get<bool>()) {
            return Polyhedron::empty_set(n);
        }
        throw UsageError("polyhedron needs a vrep or an hrep");
    }

    VRep v{n, {}, {}};
    if (has_v) {
        const Json& jv = field(j, "vrep");
        if (jv.contains("vertices")) {
            for (const Json& x : field(jv, "vertices")) v.vertices.push_back(qvec_from_json(x));
        }
        if (jv.contains("rays")) {
            for (const Json& x : field(jv, "rays")) v.rays.push_back(qvec_from_json(x));
        }
        for (const auto& x : v.vertices) {
            if (x.dim() != n) throw UsageError("vertex dimension differs from \"dim\"");
        }
        for (const auto& x : v.rays) {
            if (x.dim() != n) throw UsageError("ray dimension differs from \"dim\"");
        }
    }
    HRep h{n, {}};
    if (has_h) {
        for (const Json& row : field(field(j, "hrep"), "ineqs")) {
            QVec a = qvec_from_json(field(row, "a"));
            if (a.dim() != n) throw UsageError("inequality dimension differs from \"dim\"");
            h.ineqs.emplace_back(std::move(a), rational_from_json(field(row, "b")));
        }
    }

    if (has_v && has_h) {
        // Cheap one-sided consistency check: every listed generator must
        // satisfy every listed inequality.
        for (const auto& [a, b] : h.ineqs) {
            for (const auto& x : v.vertices) {
                if (dot(a, x) > b) throw UsageError("inconsistent vrep/hrep: vertex violates inequality");
            }
            for (const auto& r : v.rays) {
                if (dot(a, r) > 0) throw UsageError("inconsistent vrep/hrep: ray violates inequality");
            }
        }
    }
    if (j.contains("empty") && field(j, "empty").is_boolean() && j["empty"].get<bool>() && has_v &&
        !v.vertices.empty()) {
        throw UsageError("polyhedron flagged empty but vrep has vertices");
    }
    if (has_v) return Polyhedron::from_vrep(std::move(v));
    return Polyhedron::from_hrep(std::move(h));
}

Json plfunction_to_json(const PLConvexFunction& f) {
    return Json{{"dim", f.dim()},
                {"window", polyhedron_to_json(f.window())},
                {"epigraph", polyhedron_to_json(f.epigraph())}};
}

PLConvexFunction plfunction_from_json(const Json& j) {
    const std::size_t n = size_field(j, "dim");
    Polyhedron window = polyhedron_from_json(field(j, "window"));
    Polyhedron epi = polyhedron_from_json(field(j, "epigraph"));
    if (window.dim() != n || epi.dim() != n + 1) {
        throw UsageError("function window must have dimension dim and epigraph dim+1");
    }
    return PLConvexFunction::from_epigraph(std::move(window), std::move(epi));
}

namespace {

const char* status_name(AdmissibilityStatus s) {
    switch (s) {
        case AdmissibilityStatus::rejected: return "rejected";
        case AdmissibilityStatus::cvx_admissible: return "cvx_admissible";
        case AdmissibilityStatus::cvx0_I_type: return "cvx0_I_type";
        case AdmissibilityStatus::cvx0_J_type: return "cvx0_J_type";
    }
    return "rejected";
}

}  // namespace

Json verdict_to_json(const AdmissibilityVerdict& v) {
    Json j{{"status", status_name(v.status)}, {"reason", v.reason}};
    if (v.target_window) j["target_window"] = polyhedron_to_json(*v.target_window);
    return j;
}

Json transform_to_json(const InducedTransform& t) {
    return Json{{"kind", t.kind == TransformKind::cvx ? "cvx" : "cvx0"},
                {"map", map_to_json(t.map)},
                {"source_window", polyhedron_to_json(t.source_window)},
                {"target_window", polyhedron_to_json(t.target_window)}};
}

Json report_to_json(const SuiteReport& r) {
    Json ff = nullptr;
    if (r.first_failure) {
        Json inputs;
        try {
            inputs = Json::parse(r.first_failure->inputs_json);
        } catch (const Json::parse_error&) {
            inputs = r.first_failure->inputs_json;
        }
        ff = Json{{"trial", r.first_failure->trial}, {"inputs", std::move(inputs)}};
    }
    return Json{{"suite", r.suite},   {"trials", r.trials}, {"passed", r.passed},
                {"failed", r.failed}, {"seed", r.seed},     {"first_failure", std::move(ff)},
                {"ms", r.wall_time_ms}};
}

namespace {

SchemaResult fail(std::string why) { return {false, std::move(why)}; }

SchemaResult check_rational(const Json& j) {
    if (j.is_number_integer() || j.is_number_unsigned()) return {true, ""};
    if (j.is_number_float()) return fail("floating point is not accepted; write rationals as \"p/q\"");
    if (!j.is_string()) return fail("rational must be a string \"p/q\"");
    try {
        rational_from_string(j.get<std::string>());
    } catch (const Error& e) {
        return fail(e.what());
    }
    return {true, ""};
}

SchemaResult check_vector(const Json& j, std::size_t dim) {
    if (!j.is_array()) return fail("vector must be an array");
    if (j.size() != dim) return fail("vector has wrong dimension");
    for (const Json& x : j) {
        if (SchemaResult r = check_rational(x); !r.ok) return r;
    }
    return {true, ""};
}

SchemaResult check_matrix_doc(const Json& doc) {
    if (!doc.is_object()) return fail("matrix document must be an object");
    if (!doc.contains("dim") || !is_nonneg_int(doc["dim"])) {
        return fail("missing or invalid \"dim\"");
    }
    const std::size_t n = doc["dim"].get<std::size_t>();
    if (!doc.contains("matrix") || !doc["matrix"].is_array()) return fail("missing \"matrix\"");
    const Json& m = doc["matrix"];
    if (m.size() != n + 1) return fail("rows≠cols: expected dim+1 rows");
    for (const Json& row : m) {
        if (!row.is_array() || row.size() != n + 1) return fail("rows≠cols");
        for (const Json& x : row) {
            if (SchemaResult r = check_rational(x); !r.ok) return r;
        }
    }
    return {true, ""};
}

SchemaResult check_polyhedron_doc(const Json& doc) {
    if (!doc.is_object()) return fail("polyhedron document must be an object");
    if (!doc.contains("dim") || !is_nonneg_int(doc["dim"])) {
        return fail("missing or invalid \"dim\"");
    }
    const std::size_t n = doc["dim"].get<std::size_t>();
    bool any_rep = false;
    if (doc.contains("vrep")) {
        any_rep = true;
        const Json& v = doc["vrep"];
        if (!v.is_object()) return fail("\"vrep\" must be an object");
        for (const char* key : {"vertices", "rays"}) {
            if (!v.contains(key)) continue;
            if (!v[key].is_array()) return fail(std::string("\"") + key + "\" must be an array");
            for (const Json& x : v[key]) {
                if (SchemaResult r = check_vector(x, n); !r.ok) return r;
            }
        }
    }
    if (doc.contains("hrep")) {
        any_rep = true;
        const Json& h = doc["hrep"];
        if (!h.is_object() || !h.contains("ineqs") || !h["ineqs"].is_array()) {
            return fail("\"hrep\" must be an object with an \"ineqs\" array");
        }
        for (const Json& row : h["ineqs"]) {
            if (!row.is_object() || !row.contains("a") || !row.contains("b")) {
                return fail("inequalities are objects {\"a\", \"b\"}");
            }
            if (SchemaResult r = check_vector(row["a"], n); !r.ok) return r;
            if (SchemaResult r = check_rational(row["b"]); !r.ok) return r;
        }
    }
    if (doc.contains("empty") && !doc["empty"].is_boolean()) return fail("\"empty\" must be a boolean");
    const bool flagged_empty =
        doc.contains("empty") && doc["empty"].is_boolean() && doc["empty"].get<bool>();
    if (!any_rep && !flagged_empty) return fail("polyhedron needs a vrep or an hrep");
    return {true, ""};
}

SchemaResult check_plfunction_doc(const Json& doc) {
    if (!doc.is_object()) return fail("function document must be an object");
    if (!doc.contains("dim") || !is_nonneg_int(doc["dim"])) {
        return fail("missing or invalid \"dim\"");
    }
    const std::size_t n = doc["dim"].get<std::size_t>();
    if (!doc.contains("window") || !doc.contains("epigraph")) {
        return fail("function needs \"window\" and \"epigraph\"");
    }
    if (SchemaResult r = check_polyhedron_doc(doc["window"]); !r.ok) return r;
    if (SchemaResult r = check_polyhedron_doc(doc["epigraph"]); !r.ok) return r;
    if (doc["window"]["dim"].get<std::size_t>() != n) return fail("window dimension must equal dim");
    if (doc["epigraph"]["dim"].get<std::size_t>() != n + 1) {
        return fail("epigraph dimension must equal dim+1");
    }
    return {true, ""};
}

SchemaResult check_report_doc(const Json& doc) {
    if (!doc.is_object()) return fail("report must be an object");
    if (!doc.contains("suite") || !doc["suite"].is_string()) return fail("missing \"suite\"");
    for (const char* key : {"trials", "passed", "failed", "seed"}) {
        if (!doc.contains(key) || !is_nonneg_int(doc[key])) {
            return fail(std::string("missing or invalid \"") + key + "\"");
        }
    }
    if (!doc.contains("ms") || !doc["ms"].is_number_integer()) return fail("missing \"ms\"");
    if (!doc.contains("first_failure")) return fail("missing \"first_failure\"");
    const Json& ff = doc["first_failure"];
    if (!ff.is_null()) {
        if (!ff.is_object() || !ff.contains("trial") || !is_nonneg_int(ff["trial"])) {
            return fail("\"first_failure\" must be null or carry a \"trial\" index");
        }
    }
    if (doc["passed"].get<std::size_t>() + doc["failed"].get<std::size_t>() !=
        doc["trials"].get<std::size_t>()) {
        return fail("passed + failed must equal trials");
    }
    return {true, ""};
}

}  // namespace

SchemaResult schema_check(const Json& doc, SchemaKind kind) {
    try {
        switch (kind) {
            case SchemaKind::matrix: return check_matrix_doc(doc);
            case SchemaKind::polyhedron: return check_polyhedron_doc(doc);
            case SchemaKind::plfunction: return check_plfunction_doc(doc);
            case SchemaKind::report: return check_report_doc(doc);
        }
    } catch (const std::exception& e) {
        return fail(e.what());
    }
    return fail("unknown schema kind");
}

}  // namespace windual
