#include "wentzell/config.hpp"

#include "wentzell/errors.hpp"
#include "wentzell/expression.hpp"

#include <cmath>
#include <fstream>

namespace wentzell {

namespace {

CoeffSpec parse_coeff(const Json& j, const char* what) {
    CoeffSpec spec;
    if (j.is_number()) {
        spec.kind = CoeffSpec::Kind::Constant;
        spec.value = j.get<double>();
        return spec;
    }
    if (j.is_string()) {
        spec.kind = CoeffSpec::Kind::Expr;
        spec.expr = j.get<std::string>();
        Expression::parse(spec.expr); // validate now
        return spec;
    }
    if (j.is_object()) {
        if (j.contains("expr")) {
            spec.kind = CoeffSpec::Kind::Expr;
            spec.expr = j.at("expr").get<std::string>();
            Expression::parse(spec.expr);
            return spec;
        }
        if (j.contains("name")) {
            spec.kind = CoeffSpec::Kind::Named;
            spec.name = j.at("name").get<std::string>();
            if (spec.name != "square-ground-state") {
                throw ConfigError(std::string(what) + ": unknown named coefficient '" + spec.name + "'");
            }
            return spec;
        }
    }
    throw ConfigError(std::string(what) + ": expected a number, expression string, or named object");
}

Json emit_coeff(const CoeffSpec& spec) {
    switch (spec.kind) {
        case CoeffSpec::Kind::Constant: return spec.value;
        case CoeffSpec::Kind::Expr: return spec.expr;
        case CoeffSpec::Kind::Named: return Json{{"name", spec.name}};
    }
    return Json();
}

FieldSpec parse_field(const Json& j, const char* what) {
    FieldSpec spec;
    if (j.is_number()) {
        spec.kind = FieldSpec::Kind::Constant;
        spec.value = j.get<double>();
        return spec;
    }
    if (j.is_string()) {
        spec.kind = FieldSpec::Kind::Expr;
        spec.expr = j.get<std::string>();
        Expression::parse(spec.expr);
        return spec;
    }
    if (j.is_object() && j.contains("values")) {
        spec.kind = FieldSpec::Kind::Values;
        spec.values = j.at("values").get<std::vector<double>>();
        return spec;
    }
    if (j.is_array()) {
        spec.kind = FieldSpec::Kind::Values;
        spec.values = j.get<std::vector<double>>();
        return spec;
    }
    throw ConfigError(std::string(what) + ": expected a number, expression string, or value array");
}

Json emit_field(const FieldSpec& spec) {
    switch (spec.kind) {
        case FieldSpec::Kind::Constant: return spec.value;
        case FieldSpec::Kind::Expr: return spec.expr;
        case FieldSpec::Kind::Values: return spec.values;
    }
    return Json();
}

AlphaSpec parse_alpha(const Json& j, const char* what) {
    AlphaSpec spec;
    if (j.is_null()) return spec;
    if (!j.is_object() || !j.contains("family")) {
        throw ConfigError(std::string(what) + ": expected an object with a 'family' key");
    }
    spec.family = j.at("family").get<std::string>();
    if (spec.family == "power") {
        spec.r = j.at("r").get<double>();
        spec.p = j.at("p").get<double>();
    } else if (spec.family == "table") {
        for (const auto& pt : j.at("points")) {
            spec.points.emplace_back(pt.at(0).get<double>(), pt.at(1).get<double>());
        }
    } else if (spec.family != "zero" && spec.family != "arctan") {
        throw ConfigError(std::string(what) + ": unknown family '" + spec.family + "'");
    }
    return spec;
}

Json emit_alpha(const AlphaSpec& spec) {
    Json j;
    j["family"] = spec.family;
    if (spec.family == "power") {
        j["r"] = spec.r;
        j["p"] = spec.p;
    } else if (spec.family == "table") {
        Json pts = Json::array();
        for (const auto& [s, a] : spec.points) pts.push_back(Json::array({s, a}));
        j["points"] = pts;
    }
    return j;
}

BoundaryFn coeff_to_fn(const CoeffSpec& spec) {
    switch (spec.kind) {
        case CoeffSpec::Kind::Constant: {
            const double v = spec.value;
            return [v](double, double, double) { return v; };
        }
        case CoeffSpec::Kind::Expr: {
            auto e = std::make_shared<Expression>(Expression::parse(spec.expr));
            return [e](double x, double y, double s) { return e->eval(x, y, s); };
        }
        case CoeffSpec::Kind::Named:
            // Placeholder density; resolved by the named construction.
            return [](double, double, double) { return 0.0; };
    }
    return constant_coeff(0.0);
}

} // namespace

RunConfig parse_config(const Json& j) {
    RunConfig cfg;
    cfg.description = j.value("description", std::string());

    const Json& m = j.at("mesh");
    cfg.mesh.dimension = m.at("dimension").get<int>();
    if (cfg.mesh.dimension == 1) {
        cfg.mesh.a = m.value("a", 0.0);
        cfg.mesh.b = m.value("b", 1.0);
        cfg.mesh.n = m.at("n").get<int>();
    } else if (cfg.mesh.dimension == 2) {
        cfg.mesh.lx = m.value("lx", 1.0);
        cfg.mesh.ly = m.value("ly", 1.0);
        cfg.mesh.nx = m.at("nx").get<int>();
        cfg.mesh.ny = m.at("ny").get<int>();
    } else {
        throw ConfigError("mesh.dimension must be 1 or 2");
    }

    const Json& co = j.at("coefficients");
    cfg.b_coeff = co.contains("b") ? parse_coeff(co.at("b"), "coefficients.b")
                                   : CoeffSpec{CoeffSpec::Kind::Constant, 1.0, "", ""};
    cfg.c_coeff = co.contains("c") ? parse_coeff(co.at("c"), "coefficients.c")
                                   : CoeffSpec{CoeffSpec::Kind::Constant, 0.0, "", ""};
    cfg.q = co.value("q", 0.0);

    cfg.alpha1 = parse_alpha(j.value("alpha1", Json()), "alpha1");
    cfg.alpha2 = parse_alpha(j.value("alpha2", Json()), "alpha2");

    if (j.contains("load")) {
        const Json& load = j.at("load");
        if (load.contains("f")) cfg.f = parse_field(load.at("f"), "load.f");
        if (load.contains("g")) cfg.g = parse_field(load.at("g"), "load.g");
        cfg.load_scale = load.value("scale", 1.0);
    }

    if (j.contains("shift")) {
        const Json& sh = j.at("shift");
        if (sh.is_string()) {
            if (sh.get<std::string>() != "ground") {
                throw ConfigError("shift must be a number or \"ground\"");
            }
            cfg.shift_ground = true;
        } else {
            cfg.shift_value = sh.get<double>();
        }
    }

    if (j.contains("solve")) {
        const Json& s = j.at("solve");
        cfg.solve_tol = s.value("tol", 1e-9);
        cfg.max_iter = s.value("max_iter", 200);
        cfg.gauge = s.value("gauge", std::string("auto"));
        if (cfg.gauge != "auto" && cfg.gauge != "zero-mean" && cfg.gauge != "none") {
            throw ConfigError("solve.gauge must be auto, zero-mean, or none");
        }
    }

    if (j.contains("sweep")) {
        const Json& s = j.at("sweep");
        SweepSpec sw;
        sw.parameter = s.at("parameter").get<std::string>();
        if (sw.parameter != "load-scale" && sw.parameter != "q" && sw.parameter != "grid-n") {
            throw ConfigError("sweep.parameter must be load-scale, q, or grid-n");
        }
        if (s.contains("values")) {
            sw.values = s.at("values").get<std::vector<double>>();
        } else {
            sw.from = s.at("from").get<double>();
            sw.to = s.at("to").get<double>();
            sw.step = s.at("step").get<double>();
            if (!(sw.step > 0.0)) throw ConfigError("sweep.step must be positive");
        }
        cfg.sweep = sw;
    }
    return cfg;
}

Json emit_config(const RunConfig& cfg) {
    Json j;
    if (!cfg.description.empty()) j["description"] = cfg.description;

    Json m;
    m["dimension"] = cfg.mesh.dimension;
    if (cfg.mesh.dimension == 1) {
        m["a"] = cfg.mesh.a;
        m["b"] = cfg.mesh.b;
        m["n"] = cfg.mesh.n;
    } else {
        m["lx"] = cfg.mesh.lx;
        m["ly"] = cfg.mesh.ly;
        m["nx"] = cfg.mesh.nx;
        m["ny"] = cfg.mesh.ny;
    }
    j["mesh"] = m;

    Json co;
    co["b"] = emit_coeff(cfg.b_coeff);
    co["c"] = emit_coeff(cfg.c_coeff);
    co["q"] = cfg.q;
    j["coefficients"] = co;

    j["alpha1"] = emit_alpha(cfg.alpha1);
    j["alpha2"] = emit_alpha(cfg.alpha2);

    Json load;
    load["f"] = emit_field(cfg.f);
    load["g"] = emit_field(cfg.g);
    load["scale"] = cfg.load_scale;
    j["load"] = load;

    if (cfg.shift_ground) {
        j["shift"] = "ground";
    } else if (cfg.shift_value != 0.0) {
        j["shift"] = cfg.shift_value;
    }

    Json s;
    s["tol"] = cfg.solve_tol;
    s["max_iter"] = cfg.max_iter;
    s["gauge"] = cfg.gauge;
    j["solve"] = s;

    if (cfg.sweep) {
        Json sw;
        sw["parameter"] = cfg.sweep->parameter;
        if (!cfg.sweep->values.empty()) {
            sw["values"] = cfg.sweep->values;
        } else {
            sw["from"] = cfg.sweep->from;
            sw["to"] = cfg.sweep->to;
            sw["step"] = cfg.sweep->step;
        }
        j["sweep"] = sw;
    }
    return j;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("parse error in " + path + ": " + e.what());
    }
    return parse_config(j);
}

Nonlinearity build_alpha(const AlphaSpec& spec) {
    if (spec.family == "zero") return make_zero();
    if (spec.family == "power") return make_power(spec.r, spec.p);
    if (spec.family == "arctan") return make_arctan();
    if (spec.family == "table") return make_table(spec.points);
    throw ConfigError("unknown nonlinearity family '" + spec.family + "'");
}

MeshPtr build_mesh(const RunConfig& cfg) {
    const BoundaryFn b_fn = coeff_to_fn(cfg.b_coeff);
    const BoundaryFn c_fn = coeff_to_fn(cfg.c_coeff);

    std::shared_ptr<Mesh> mesh;
    if (cfg.mesh.dimension == 1) {
        mesh = build_interval_mesh(cfg.mesh.a, cfg.mesh.b, cfg.mesh.n, b_fn, c_fn);
    } else {
        mesh = build_rectangle_mesh(cfg.mesh.lx, cfg.mesh.ly, cfg.mesh.nx, cfg.mesh.ny, b_fn, c_fn);
    }
    if (cfg.c_coeff.kind == CoeffSpec::Kind::Named) {
        // Only one named construction exists; parse_coeff validated the name.
        calibrate_square_ground_state(*mesh, cfg.q);
    }
    return mesh;
}

WentzellProblem build_problem(const RunConfig& cfg, MeshPtr mesh) {
    WentzellProblem problem;
    problem.mesh = mesh;
    problem.q = cfg.q;
    problem.alpha1 = build_alpha(cfg.alpha1);
    problem.alpha2 = build_alpha(cfg.alpha2);
    problem.spectral_shift = cfg.shift_value; // "ground" resolved by the pipeline

    ProductVector load = zero_vector(*mesh);
    switch (cfg.f.kind) {
        case FieldSpec::Kind::Constant:
            for (double& v : load.interior) v = cfg.f.value;
            break;
        case FieldSpec::Kind::Expr: {
            const Expression e = Expression::parse(cfg.f.expr);
            for (std::size_t i = 0; i < mesh->num_nodes(); ++i) {
                load.interior[i] = e.eval(mesh->node_x[i],
                                          mesh->dimension == 2 ? mesh->node_y[i] : 0.0, 0.0);
            }
            break;
        }
        case FieldSpec::Kind::Values:
            if (cfg.f.values.size() != mesh->num_nodes()) {
                throw ConfigError("load.f values must have one entry per grid node");
            }
            load.interior = cfg.f.values;
            break;
    }
    switch (cfg.g.kind) {
        case FieldSpec::Kind::Constant:
            for (double& v : load.boundary) v = cfg.g.value;
            break;
        case FieldSpec::Kind::Expr: {
            const Expression e = Expression::parse(cfg.g.expr);
            for (std::size_t k = 0; k < mesh->num_boundary(); ++k) {
                const int node = mesh->boundary_nodes[k];
                load.boundary[k] = e.eval(mesh->node_x[node],
                                          mesh->dimension == 2 ? mesh->node_y[node] : 0.0,
                                          mesh->arc_coord[k]);
            }
            break;
        }
        case FieldSpec::Kind::Values:
            if (cfg.g.values.size() != mesh->num_boundary()) {
                throw ConfigError("load.g values must have one entry per boundary node");
            }
            load.boundary = cfg.g.values;
            break;
    }
    load.coupled = false;
    if (cfg.load_scale != 1.0) {
        for (double& v : load.interior) v *= cfg.load_scale;
        for (double& v : load.boundary) v *= cfg.load_scale;
    }
    problem.load = load;
    return problem;
}

} // namespace wentzell
