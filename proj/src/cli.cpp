#include "windual/cli.hpp"

#include "windual/json_io.hpp"

#include <CLI11.hpp>

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>
#include <utility>

namespace windual {

namespace {

std::string slurp(const std::string& spec, std::istream& in) {
    if (spec == "-") return std::string(std::istreambuf_iterator<char>(in), {});
    if (!spec.empty() && spec.front() == '@') {
        std::ifstream f(spec.substr(1), std::ios::binary);
        if (!f) throw UsageError("cannot read file: " + spec.substr(1));
        return std::string(std::istreambuf_iterator<char>(f), {});
    }
    return spec;
}

Json parse_doc(const std::string& spec, std::istream& in) {
    const std::string text = slurp(spec, in);
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw UsageError(std::string("malformed JSON: ") + e.what());
    }
}

QVec vec_arg(const std::string& spec, std::istream& in) {
    return qvec_from_json(parse_doc(spec, in));
}

Polyhedron poly_arg(const std::string& spec, std::istream& in) {
    return polyhedron_from_json(parse_doc(spec, in));
}

PLConvexFunction fn_arg(const std::string& spec, std::istream& in) {
    return plfunction_from_json(parse_doc(spec, in));
}

// Raw matrix rows, or any object carrying a "matrix" field.
QMat matrix_arg(const std::string& spec, std::istream& in) {
    const Json doc = parse_doc(spec, in);
    if (doc.is_array()) return qmat_from_json(doc);
    if (doc.is_object() && doc.contains("matrix")) return qmat_from_json(doc.at("matrix"));
    throw UsageError("matrix input must be a JSON array of rows or {\"matrix\": ...}");
}

ProjectiveMap resolve_map_spec(const std::string& spec, std::optional<std::size_t> dim,
                               const std::optional<std::string>& param, std::istream& in) {
    if (spec == "f0") {
        if (!dim) throw UsageError("--dim is required for the named map \"f0\"");
        return f0(*dim);
    }
    if (spec == "ball") {
        if (!dim) throw UsageError("--dim is required for the named map \"ball\"");
        if (!param) throw UsageError("--param is required for the named map \"ball\"");
        return f_ball(*dim, rational_from_string(*param));
    }
    if (spec == "trapezoid") {
        if (!param) throw UsageError("--param is required for the named map \"trapezoid\"");
        return f_trapezoid(rational_from_string(*param));
    }
    return map_from_json(parse_doc(spec, in));
}

Interval1D interval_arg(const std::string& spec) {
    if (spec == "inf") return Interval1D::half_line();
    return Interval1D::up_to(rational_from_string(spec));
}

std::uint64_t env_seed_or_zero() {
    const char* s = std::getenv("WINDOW_DUALITY_SEED");
    if (!s || !*s) return 0;
    if (s[0] == '-') throw UsageError("WINDOW_DUALITY_SEED must be an unsigned integer");
    errno = 0;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(s, &end, 10);
    if (errno != 0 || end == s || *end != '\0') {
        throw UsageError("WINDOW_DUALITY_SEED must be an unsigned integer");
    }
    return v;
}

void emit(std::ostream& out, const Json& j) { out << j.dump() << "\n"; }

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

std::string render_report(const SuiteReport& r, const std::string& format) {
    const std::string verdict = r.failed == 0 ? "PASS" : "FAIL";
    if (format == "json") {
        return report_to_json(r).dump() + "\n";
    }
    if (format == "text") {
        std::ostringstream os;
        os << r.suite << " " << r.passed << "/" << r.trials << " " << verdict << "\n";
        os << "seed   " << r.seed << "\n";
        os << "ms     " << r.wall_time_ms << "\n";
        if (r.first_failure) {
            os << "trial  " << r.first_failure->trial << "\n";
            os << "inputs " << r.first_failure->inputs_json << "\n";
        }
        return os.str();
    }
    if (format == "svg-summary") {
        const long bar_x = 12, bar_w = 456, bar_y = 44, bar_h = 24;
        const long pass_w =
            r.trials ? static_cast<long>(bar_w * r.passed / r.trials) : 0;
        const long fail_w =
            r.trials ? static_cast<long>(bar_w * r.failed / r.trials) : 0;
        std::ostringstream os;
        os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"480\" height=\"120\" "
              "viewBox=\"0 0 480 120\" role=\"img\">\n";
        os << "  <title>" << xml_escape(r.suite) << "</title>\n";
        os << "  <rect x=\"0\" y=\"0\" width=\"480\" height=\"120\" fill=\"#ffffff\"/>\n";
        os << "  <text x=\"12\" y=\"28\" font-family=\"monospace\" font-size=\"16\">"
           << xml_escape(r.suite) << " " << r.passed << "/" << r.trials << " " << verdict
           << "</text>\n";
        os << "  <rect x=\"" << bar_x << "\" y=\"" << bar_y << "\" width=\"" << bar_w
           << "\" height=\"" << bar_h << "\" fill=\"#e0e0e0\"/>\n";
        if (pass_w > 0) {
            os << "  <rect x=\"" << bar_x << "\" y=\"" << bar_y << "\" width=\"" << pass_w
               << "\" height=\"" << bar_h << "\" fill=\"#2e7d32\"/>\n";
        }
        if (fail_w > 0) {
            os << "  <rect x=\"" << bar_x + pass_w << "\" y=\"" << bar_y << "\" width=\""
               << fail_w << "\" height=\"" << bar_h << "\" fill=\"#c62828\"/>\n";
        }
        os << "  <text x=\"12\" y=\"92\" font-family=\"monospace\" font-size=\"12\">seed "
           << r.seed << ", " << r.wall_time_ms << " ms</text>\n";
        os << "</svg>\n";
        return os.str();
    }
    throw UsageError("unknown report format: \"" + format + "\"");
}

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"exact fractional-linear maps, polytope duality, and order isomorphisms "
                 "of convex functions",
                 "windual"};
    app.require_subcommand(1);

    const auto opt_dim = [](const CLI::Option* o, std::size_t v) {
        return o->count() ? std::optional<std::size_t>(v) : std::nullopt;
    };
    const auto opt_str = [](const CLI::Option* o, const std::string& v) {
        return o->count() ? std::optional<std::string>(v) : std::nullopt;
    };

    // ---- flmap ----------------------------------------------------------
    auto* flmap = app.add_subcommand("flmap", "fractional-linear (projective) maps");
    flmap->require_subcommand(1);

    struct {
        std::string map, point, param;
        std::size_t dim = 0;
        CLI::Option *dim_o = nullptr, *param_o = nullptr;
    } fl_apply;
    {
        auto* c = flmap->add_subcommand("apply", "evaluate a map at a point");
        c->add_option("--map", fl_apply.map, "map JSON, @file, -, or f0|ball|trapezoid")->required();
        fl_apply.dim_o = c->add_option("--dim", fl_apply.dim, "dimension for named maps");
        fl_apply.param_o = c->add_option("--param", fl_apply.param, "parameter for named maps");
        c->add_option("--point", fl_apply.point, "point as a JSON vector")->required();
        c->callback([&] {
            const ProjectiveMap f =
                resolve_map_spec(fl_apply.map, opt_dim(fl_apply.dim_o, fl_apply.dim),
                                 opt_str(fl_apply.param_o, fl_apply.param), in);
            emit(out, qvec_to_json(apply(f, vec_arg(fl_apply.point, in))));
        });
    }

    struct {
        std::string outer, inner, param;
        std::size_t dim = 0;
        CLI::Option *dim_o = nullptr, *param_o = nullptr;
    } fl_comp;
    {
        auto* c = flmap->add_subcommand("compose", "compose two maps (outer after inner)");
        c->add_option("--outer", fl_comp.outer, "outer map")->required();
        c->add_option("--inner", fl_comp.inner, "inner map")->required();
        fl_comp.dim_o = c->add_option("--dim", fl_comp.dim, "dimension for named maps");
        fl_comp.param_o = c->add_option("--param", fl_comp.param, "parameter for named maps");
        c->callback([&] {
            const auto dim = opt_dim(fl_comp.dim_o, fl_comp.dim);
            const auto param = opt_str(fl_comp.param_o, fl_comp.param);
            const ProjectiveMap fo = resolve_map_spec(fl_comp.outer, dim, param, in);
            const ProjectiveMap fi = resolve_map_spec(fl_comp.inner, dim, param, in);
            emit(out, map_to_json(compose(fo, fi)));
        });
    }

    struct {
        std::string map, param;
        std::size_t dim = 0;
        CLI::Option *dim_o = nullptr, *param_o = nullptr;
    } fl_inv;
    {
        auto* c = flmap->add_subcommand("invert", "invert a map");
        c->add_option("--map", fl_inv.map, "map to invert")->required();
        fl_inv.dim_o = c->add_option("--dim", fl_inv.dim, "dimension for named maps");
        fl_inv.param_o = c->add_option("--param", fl_inv.param, "parameter for named maps");
        c->callback([&] {
            const ProjectiveMap f = resolve_map_spec(fl_inv.map, opt_dim(fl_inv.dim_o, fl_inv.dim),
                                                     opt_str(fl_inv.param_o, fl_inv.param), in);
            emit(out, map_to_json(inverse_map(f)));
        });
    }

    struct {
        std::string map, at, param;
        std::size_t dim = 0;
        CLI::Option *dim_o = nullptr, *param_o = nullptr;
    } fl_canon;
    {
        auto* c = flmap->add_subcommand(
            "canonical", "factor a non-affine map as B(F(Cx + x0) - y0) = F0(x)");
        c->add_option("--map", fl_canon.map, "map to factor")->required();
        fl_canon.dim_o = c->add_option("--dim", fl_canon.dim, "dimension for named maps");
        fl_canon.param_o = c->add_option("--param", fl_canon.param, "parameter for named maps");
        c->add_option("--at", fl_canon.at, "base point x0 as a JSON vector")->required();
        c->callback([&] {
            const ProjectiveMap f =
                resolve_map_spec(fl_canon.map, opt_dim(fl_canon.dim_o, fl_canon.dim),
                                 opt_str(fl_canon.param_o, fl_canon.param), in);
            const CanonicalForm cf = canonical_form(f, vec_arg(fl_canon.at, in));
            emit(out, Json{{"B", qmat_to_json(cf.B)},
                           {"C", qmat_to_json(cf.C)},
                           {"y0", qvec_to_json(cf.y0)}});
        });
    }

    struct {
        std::string points, interior, target;
    } fl_pts;
    {
        auto* c = flmap->add_subcommand(
            "from-points", "the unique map sending n+2 points to the standard targets");
        c->add_option("--points", fl_pts.points, "JSON array of n+1 affinely independent points")
            ->required();
        c->add_option("--interior", fl_pts.interior, "interior point of their hull")->required();
        c->add_option("--target", fl_pts.target, "target for the interior point")->required();
        c->callback([&] {
            const Json doc = parse_doc(fl_pts.points, in);
            if (!doc.is_array()) throw UsageError("--points must be a JSON array of vectors");
            std::vector<QVec> xs;
            for (const Json& row : doc) xs.push_back(qvec_from_json(row));
            emit(out, map_to_json(from_simplex_data(xs, vec_arg(fl_pts.interior, in),
                                                    vec_arg(fl_pts.target, in))));
        });
    }

    struct {
        std::string name, param;
        std::size_t dim = 0;
        CLI::Option *dim_o = nullptr, *param_o = nullptr;
    } fl_gal;
    {
        auto* c = flmap->add_subcommand("gallery", "named example maps");
        c->add_option("--name", fl_gal.name, "f0 | ball | trapezoid")->required();
        fl_gal.dim_o = c->add_option("--dim", fl_gal.dim, "dimension (f0, ball)");
        fl_gal.param_o = c->add_option("--param", fl_gal.param, "parameter (ball, trapezoid)");
        c->callback([&] {
            const bool known =
                fl_gal.name == "f0" || fl_gal.name == "ball" || fl_gal.name == "trapezoid";
            if (!known) throw UsageError("unknown gallery map: \"" + fl_gal.name + "\"");
            emit(out, map_to_json(resolve_map_spec(fl_gal.name, opt_dim(fl_gal.dim_o, fl_gal.dim),
                                                   opt_str(fl_gal.param_o, fl_gal.param), in)));
        });
    }

    // ---- poly -----------------------------------------------------------
    auto* poly = app.add_subcommand("poly", "polyhedra: duality, images, lattice operations");
    poly->require_subcommand(1);

    struct {
        std::string poly;
    } po_polar, po_conv;
    {
        auto* c = poly->add_subcommand("polar", "polar dual (needs 0 inside)");
        c->add_option("--poly", po_polar.poly, "polyhedron JSON")->required();
        c->callback([&] { emit(out, polyhedron_to_json(polar(poly_arg(po_polar.poly, in)))); });
    }

    struct {
        std::string map, poly, param;
        std::size_t dim = 0;
        CLI::Option *dim_o = nullptr, *param_o = nullptr;
    } po_img;
    {
        auto* c = poly->add_subcommand("image", "image of a polyhedron under a map");
        c->add_option("--map", po_img.map, "map JSON, @file, -, or f0|ball|trapezoid")->required();
        po_img.dim_o = c->add_option("--dim", po_img.dim, "dimension for named maps");
        po_img.param_o = c->add_option("--param", po_img.param, "parameter for named maps");
        c->add_option("--poly", po_img.poly, "polyhedron JSON")->required();
        c->callback([&] {
            const ProjectiveMap f = resolve_map_spec(po_img.map, opt_dim(po_img.dim_o, po_img.dim),
                                                     opt_str(po_img.param_o, po_img.param), in);
            emit(out, polyhedron_to_json(projective_image(f, poly_arg(po_img.poly, in))));
        });
    }

    struct {
        std::string a, b;
    } po_hull, po_inter, po_eq;
    {
        auto* c = poly->add_subcommand("hull", "closed convex hull of a union");
        c->add_option("--a", po_hull.a, "first polyhedron")->required();
        c->add_option("--b", po_hull.b, "second polyhedron")->required();
        c->callback([&] {
            emit(out, polyhedron_to_json(
                          convex_hull_join(poly_arg(po_hull.a, in), poly_arg(po_hull.b, in))));
        });
    }
    {
        auto* c = poly->add_subcommand("intersect", "intersection");
        c->add_option("--a", po_inter.a, "first polyhedron")->required();
        c->add_option("--b", po_inter.b, "second polyhedron")->required();
        c->callback([&] {
            emit(out, polyhedron_to_json(
                          intersect(poly_arg(po_inter.a, in), poly_arg(po_inter.b, in))));
        });
    }
    {
        auto* c = poly->add_subcommand("convert", "canonical V- and H-representations");
        c->add_option("--poly", po_conv.poly, "polyhedron JSON (either representation)")->required();
        c->callback([&] { emit(out, polyhedron_to_json(poly_arg(po_conv.poly, in))); });
    }
    {
        auto* c = poly->add_subcommand("equal", "set equality (checked through both routes)");
        c->add_option("--a", po_eq.a, "first polyhedron")->required();
        c->add_option("--b", po_eq.b, "second polyhedron")->required();
        c->callback([&] {
            emit(out, Json{{"equal", set_equal(poly_arg(po_eq.a, in), poly_arg(po_eq.b, in))}});
        });
    }

    // ---- fun ------------------------------------------------------------
    auto* fun = app.add_subcommand("fun", "piecewise-linear convex functions");
    fun->require_subcommand(1);

    struct {
        std::string fn, point;
    } fu_eval;
    {
        auto* c = fun->add_subcommand("eval", "evaluate (values may be \"inf\")");
        c->add_option("--fn", fu_eval.fn, "function JSON")->required();
        c->add_option("--point", fu_eval.point, "point as a JSON vector")->required();
        c->callback([&] {
            emit(out, extended_to_json(
                          evaluate(fn_arg(fu_eval.fn, in), vec_arg(fu_eval.point, in))));
        });
    }

    struct {
        std::vector<std::string> fns;
    } fu_sup, fu_inf;
    {
        auto* c = fun->add_subcommand("sup", "pointwise supremum of functions");
        c->add_option("--fn", fu_sup.fns, "function JSON (repeatable)")->required();
        c->callback([&] {
            std::vector<PLConvexFunction> fns;
            for (const auto& spec : fu_sup.fns) fns.push_back(fn_arg(spec, in));
            emit(out, plfunction_to_json(sup_of(fns)));
        });
    }
    {
        auto* c = fun->add_subcommand("infhat", "largest convex minorant of a family");
        c->add_option("--fn", fu_inf.fns, "function JSON (repeatable)")->required();
        c->callback([&] {
            std::vector<PLConvexFunction> fns;
            for (const auto& spec : fu_inf.fns) fns.push_back(fn_arg(spec, in));
            emit(out, plfunction_to_json(inf_hat(fns)));
        });
    }

    struct {
        std::string fn;
    } fu_leg, fu_j, fu_a;
    {
        auto* c = fun->add_subcommand("legendre", "Legendre transform");
        c->add_option("--fn", fu_leg.fn, "function JSON")->required();
        c->callback([&] { emit(out, plfunction_to_json(legendre(fn_arg(fu_leg.fn, in)))); });
    }
    {
        auto* c = fun->add_subcommand("jtransform", "epigraph-inverting order isomorphism");
        c->add_option("--fn", fu_j.fn, "function JSON (geometric class)")->required();
        c->callback([&] { emit(out, plfunction_to_json(j_transform(fn_arg(fu_j.fn, in)))); });
    }
    {
        auto* c = fun->add_subcommand("atransform", "geometric duality (legendre of jtransform)");
        c->add_option("--fn", fu_a.fn, "function JSON (geometric class)")->required();
        c->callback([&] { emit(out, plfunction_to_json(a_transform(fn_arg(fu_a.fn, in)))); });
    }

    struct {
        std::string kind, point, value, polyspec, dir, window, pieces;
    } fu_make;
    {
        auto* c = fun->add_subcommand("make", "construct standard functions");
        c->add_option("--kind", fu_make.kind, "delta | indicator | linear | triangle | pieces")
            ->required();
        c->add_option("--point", fu_make.point, "delta: the point (JSON vector)");
        c->add_option("--value", fu_make.value, "delta/linear/triangle: the value (p/q)");
        c->add_option("--poly", fu_make.polyspec, "indicator: the set");
        c->add_option("--dir", fu_make.dir, "linear/triangle: the direction z (JSON vector)");
        c->add_option("--window", fu_make.window, "pieces: the window polyhedron");
        c->add_option("--pieces", fu_make.pieces,
                      "pieces: JSON array of {\"a\": vector, \"b\": rational}");
        c->callback([&] {
            const auto need = [](const std::string& v, const char* flag) -> const std::string& {
                if (v.empty()) throw UsageError(std::string("missing ") + flag);
                return v;
            };
            PLConvexFunction f = [&]() -> PLConvexFunction {
                if (fu_make.kind == "delta") {
                    return delta(vec_arg(need(fu_make.point, "--point"), in),
                                 rational_from_string(need(fu_make.value, "--value")));
                }
                if (fu_make.kind == "indicator") {
                    return indicator(poly_arg(need(fu_make.polyspec, "--poly"), in));
                }
                if (fu_make.kind == "linear") {
                    return linear_ray(vec_arg(need(fu_make.dir, "--dir"), in),
                                      rational_from_string(need(fu_make.value, "--value")));
                }
                if (fu_make.kind == "triangle") {
                    return triangle(vec_arg(need(fu_make.dir, "--dir"), in),
                                    rational_from_string(need(fu_make.value, "--value")));
                }
                if (fu_make.kind == "pieces") {
                    const Json doc = parse_doc(need(fu_make.pieces, "--pieces"), in);
                    if (!doc.is_array()) {
                        throw UsageError("--pieces must be a JSON array of {\"a\", \"b\"} objects");
                    }
                    std::vector<std::pair<QVec, Rational>> pieces;
                    for (const Json& row : doc) {
                        if (!row.is_object() || !row.contains("a") || !row.contains("b")) {
                            throw UsageError("each piece is an object {\"a\": vector, \"b\": rational}");
                        }
                        pieces.emplace_back(qvec_from_json(row.at("a")),
                                            rational_from_json(row.at("b")));
                    }
                    return PLConvexFunction::from_pieces(
                        poly_arg(need(fu_make.window, "--window"), in), pieces);
                }
                throw UsageError("unknown function kind: \"" + fu_make.kind + "\"");
            }();
            emit(out, plfunction_to_json(f));
        });
    }

    // ---- iso ------------------------------------------------------------
    auto* iso = app.add_subcommand("iso", "order isomorphisms of convex-function classes");
    iso->require_subcommand(1);

    struct {
        std::string kind, matrix, window;
    } iso_cls;
    {
        auto* c = iso->add_subcommand("classify", "admissibility of a matrix over a window");
        c->add_option("--kind", iso_cls.kind, "cvx | cvx0")->required();
        c->add_option("--matrix", iso_cls.matrix, "(n+2)x(n+2) matrix JSON")->required();
        c->add_option("--window", iso_cls.window, "window polyhedron JSON")->required();
        c->callback([&] {
            const QMat m = matrix_arg(iso_cls.matrix, in);
            const Polyhedron k = poly_arg(iso_cls.window, in);
            if (iso_cls.kind == "cvx") {
                emit(out, verdict_to_json(classify_cvx(m, k)));
            } else if (iso_cls.kind == "cvx0") {
                emit(out, verdict_to_json(classify_cvx0(m, k)));
            } else {
                throw UsageError("unknown kind: \"" + iso_cls.kind + "\" (expected cvx or cvx0)");
            }
        });
    }

    struct {
        std::string kind, matrix, window, fn;
    } iso_ind;
    {
        auto* c = iso->add_subcommand("induce", "apply the induced transform to a function");
        c->add_option("--kind", iso_ind.kind, "cvx | cvx0")->required();
        c->add_option("--matrix", iso_ind.matrix, "(n+2)x(n+2) matrix JSON")->required();
        c->add_option("--window", iso_ind.window, "source window polyhedron JSON")->required();
        c->add_option("--fn", iso_ind.fn, "function JSON over the source window")->required();
        c->callback([&] {
            const QMat m = matrix_arg(iso_ind.matrix, in);
            const Polyhedron k = poly_arg(iso_ind.window, in);
            const PLConvexFunction f = fn_arg(iso_ind.fn, in);
            if (iso_ind.kind == "cvx") {
                emit(out, plfunction_to_json(induce(make_cvx_transform(m, k), f)));
            } else if (iso_ind.kind == "cvx0") {
                emit(out, plfunction_to_json(induce(make_cvx0_transform(m, k), f)));
            } else {
                throw UsageError("unknown kind: \"" + iso_ind.kind + "\" (expected cvx or cvx0)");
            }
        });
    }

    struct {
        std::string i1, i2, kind, a, b;
    } iso_tab;
    {
        auto* c = iso->add_subcommand("table1d", "the eight-row one-dimensional family");
        c->add_option("--i1", iso_tab.i1, "source interval: \"inf\" or right endpoint p/q")
            ->required();
        c->add_option("--i2", iso_tab.i2, "target interval: \"inf\" or right endpoint p/q")
            ->required();
        c->add_option("--kind", iso_tab.kind, "I | J")->required();
        c->add_option("--a", iso_tab.a, "positive scale a (p/q)")->required();
        c->add_option("--b", iso_tab.b, "positive scale b (p/q)")->required();
        c->callback([&] {
            TableKind kind;
            if (iso_tab.kind == "I") {
                kind = TableKind::I;
            } else if (iso_tab.kind == "J") {
                kind = TableKind::J;
            } else {
                throw UsageError("unknown kind: \"" + iso_tab.kind + "\" (expected I or J)");
            }
            emit(out, transform_to_json(table_1d(interval_arg(iso_tab.i1),
                                                 interval_arg(iso_tab.i2), kind,
                                                 rational_from_string(iso_tab.a),
                                                 rational_from_string(iso_tab.b))));
        });
    }

    struct {
        std::string z;
    } iso_fz;
    {
        auto* c = iso->add_subcommand("fz", "the standard one-parameter transform family");
        c->add_option("--z", iso_fz.z, "positive parameter z (p/q)")->required();
        c->callback(
            [&] { emit(out, transform_to_json(f_z(rational_from_string(iso_fz.z)))); });
    }

    // ---- schema ---------------------------------------------------------
    struct {
        std::string kind, doc;
    } sch;
    {
        auto* c = app.add_subcommand("schema", "validate a document against a wire format");
        c->add_option("--kind", sch.kind, "matrix | polyhedron | plfunction | report")->required();
        c->add_option("--doc", sch.doc, "document JSON, @file, or -")->required();
        c->callback([&] {
            SchemaKind kind;
            if (sch.kind == "matrix") {
                kind = SchemaKind::matrix;
            } else if (sch.kind == "polyhedron") {
                kind = SchemaKind::polyhedron;
            } else if (sch.kind == "plfunction") {
                kind = SchemaKind::plfunction;
            } else if (sch.kind == "report") {
                kind = SchemaKind::report;
            } else {
                throw UsageError("unknown schema kind: \"" + sch.kind + "\"");
            }
            SchemaResult r;
            try {
                r = schema_check(Json::parse(slurp(sch.doc, in)), kind);
            } catch (const Json::parse_error& e) {
                r = {false, std::string("malformed JSON: ") + e.what()};
            }
            emit(out, Json{{"ok", r.ok}, {"diagnostics", r.diagnostics}});
        });
    }

    // ---- verify ---------------------------------------------------------
    struct {
        std::string suite;
        std::size_t dim = 2;
        std::size_t trials = 100;
        std::uint64_t seed = 0;
        std::string format = "json";
        CLI::Option* seed_o = nullptr;
    } ver;
    {
        auto* c = app.add_subcommand("verify", "run a randomized verification suite");
        c->add_option("suite", ver.suite, "suite name")->required();
        c->add_option("--dim", ver.dim, "ambient dimension (suites with a fixed one ignore it)");
        c->add_option("--trials", ver.trials, "number of trials");
        ver.seed_o = c->add_option("--seed", ver.seed,
                                   "RNG seed (default: WINDOW_DUALITY_SEED, then 0)");
        c->add_option("--format", ver.format, "json | text | svg-summary");
        c->callback([&] {
            TrialConfig cfg;
            cfg.suite = ver.suite;
            cfg.dim = ver.dim;
            cfg.trials = ver.trials;
            cfg.seed = ver.seed_o->count() ? ver.seed : env_seed_or_zero();
            out << render_report(run_suite(cfg), ver.format);
        });
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
        return 0;
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        emit(err, Json{{"error", e.what()}});
        return 2;
    } catch (const UsageError& e) {
        emit(err, Json{{"error", e.what()}});
        return 2;
    } catch (const Error& e) {
        emit(err, Json{{"error", e.what()}});
        return 1;
    } catch (const std::exception& e) {
        emit(err, Json{{"error", e.what()}});
        return 1;
    }
}

}  // namespace windual
