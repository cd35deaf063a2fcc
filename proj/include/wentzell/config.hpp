#pragma once

#include "wentzell/mesh.hpp"
#include "wentzell/nonlinearity.hpp"
#include "wentzell/operators.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace wentzell {

using Json = nlohmann::ordered_json;

// Boundary coefficient: a constant, an expression in (x, y, s), or a named
// construction resolved at mesh-build time.
struct CoeffSpec {
    enum class Kind { Constant, Expr, Named };
    Kind kind = Kind::Constant;
    double value = 0.0;
    std::string expr;
    std::string name;
};

// Load field: a constant, an expression, or explicit nodal values.
struct FieldSpec {
    enum class Kind { Constant, Expr, Values };
    Kind kind = Kind::Constant;
    double value = 0.0;
    std::string expr;
    std::vector<double> values;
};

struct MeshSpec {
    int dimension = 1;
    double a = 0.0, b = 1.0; // 1d extent
    double lx = 1.0, ly = 1.0;
    int n = 64;
    int nx = 32, ny = 32;
};

struct AlphaSpec {
    std::string family = "zero"; // zero | power | arctan | table
    double r = 1.0, p = 1.0;
    std::vector<std::pair<double, double>> points;
};

struct SweepSpec {
    std::string parameter; // load-scale | q | grid-n
    double from = 0.0, to = 0.0, step = 0.0;
    std::vector<double> values; // used instead of from/to/step when nonempty
};

struct RunConfig {
    std::string description;
    MeshSpec mesh;
    CoeffSpec b_coeff;  // defaults to 1
    CoeffSpec c_coeff;  // defaults to 0
    double q = 0.0;
    AlphaSpec alpha1, alpha2;
    FieldSpec f, g;
    double load_scale = 1.0;
    bool shift_ground = false;  // subtract the smallest eigenvalue of the linear part
    double shift_value = 0.0;
    double solve_tol = 1e-9;
    int max_iter = 200;
    std::string gauge = "auto"; // auto | zero-mean | none
    std::optional<SweepSpec> sweep;
};

RunConfig parse_config(const Json& j);
Json emit_config(const RunConfig& cfg);
RunConfig load_config_file(const std::string& path);

Nonlinearity build_alpha(const AlphaSpec& spec);
MeshPtr build_mesh(const RunConfig& cfg);

// Problem with the load assembled and scaled; the ground shift (if any) is
// resolved later by the pipeline because it needs an eigensolve.
WentzellProblem build_problem(const RunConfig& cfg, MeshPtr mesh);

} // namespace wentzell
