#include "config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "json.hpp"

namespace ulab {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw Error(ErrorKind::Config, path + ": " + what);
}

std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
}

void require_object(const json& j, const std::string& path) {
    if (!j.is_object()) fail(path.empty() ? "config" : path, "must be an object");
}

void reject_unknown(const json& j, const std::string& path, std::initializer_list<std::string_view> allowed) {
    for (const auto& [key, _] : j.items()) {
        bool ok = false;
        for (auto a : allowed) ok = ok || key == a;
        if (!ok) fail(join(path, key), "unknown key");
    }
}

double real_value(const json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "must be a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) fail(path, "must be finite");
    return v;
}

Complex complex_value(const json& j, const std::string& path) {
    if (j.is_number()) return {real_value(j, path), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {real_value(j[0], path), real_value(j[1], path)};
    fail(path, "must be a number or an [re, im] pair");
}

std::size_t count_value(const json& j, const std::string& path) {
    if (!j.is_number_integer() && !j.is_number_unsigned()) fail(path, "must be a non-negative integer");
    const auto v = j.get<long long>();
    if (v < 0) fail(path, "must be a non-negative integer");
    return static_cast<std::size_t>(v);
}

FunctionSpec parse_function(const json& j, const std::string& path) {
    require_object(j, path);
    reject_unknown(j, path, {"catalog", "params", "coefficients", "truncated"});
    const bool has_catalog = j.contains("catalog");
    const bool has_coeffs = j.contains("coefficients");
    if (has_catalog == has_coeffs) fail(path, "give exactly one of 'catalog' or 'coefficients'");

    FunctionSpec spec;
    if (has_catalog) {
        if (j.contains("truncated")) fail(join(path, "truncated"), "only applies to coefficient lists");
        if (!j["catalog"].is_string()) fail(join(path, "catalog"), "must be a string");
        spec.catalog = j["catalog"].get<std::string>();
        if (!catalog_known(spec.catalog)) fail(join(path, "catalog"), "unknown catalog function '" + spec.catalog + "'");
        if (j.contains("params")) {
            const auto& ps = j["params"];
            require_object(ps, join(path, "params"));
            for (const auto& [key, value] : ps.items())
                spec.params[key] = real_value(value, join(path, "params." + key));
        }
        try {
            (void)spec.build();
        } catch (const Error& e) {
            // catalog messages already start with "params.<name>: ..."
            throw Error(ErrorKind::Config, path + "." + e.what());
        }
        return spec;
    }

    if (j.contains("params")) fail(join(path, "params"), "only applies to catalog functions");
    const auto& cs = j["coefficients"];
    if (!cs.is_array() || cs.empty()) fail(join(path, "coefficients"), "must be a nonempty array");
    spec.catalog.clear();
    for (std::size_t i = 0; i < cs.size(); ++i)
        spec.coefficients.push_back(complex_value(cs[i], join(path, "coefficients[" + std::to_string(i) + "]")));
    if (spec.coefficients.front() != Complex{1.0, 0.0}) fail(path, "c1 must equal 1");
    if (j.contains("truncated")) {
        if (!j["truncated"].is_boolean()) fail(join(path, "truncated"), "must be a boolean");
        spec.truncated = j["truncated"].get<bool>();
    }
    return spec;
}

ParameterSet parse_params(const json& j) {
    require_object(j, "params");
    reject_unknown(j, "params", {"alpha", "beta", "gamma", "m", "a", "k"});
    ParameterSet p;
    if (j.contains("alpha")) p.alpha = complex_value(j["alpha"], "params.alpha");
    if (j.contains("beta")) p.beta = complex_value(j["beta"], "params.beta");
    if (j.contains("gamma")) p.gamma = complex_value(j["gamma"], "params.gamma");
    if (j.contains("m")) p.m = real_value(j["m"], "params.m");
    if (j.contains("a")) p.a = real_value(j["a"], "params.a");
    if (j.contains("k")) {
        // an explicit k is a quasiconformal constant; omitting it means "univalence only"
        p.k = real_value(j["k"], "params.k");
        if (!(p.k >= 0.0 && p.k < 1.0)) fail("params.k", "must be in [0,1)");
    }
    p.validate();
    return p;
}

DiskGrid parse_grid(const json& j) {
    require_object(j, "grid");
    reject_unknown(j, "grid", {"radii", "angles_per_radius", "refine_steps"});
    DiskGrid g = DiskGrid::boundary_graded();
    if (j.contains("radii")) {
        if (!j["radii"].is_array()) fail("grid.radii", "must be an array");
        g.radii.clear();
        for (std::size_t i = 0; i < j["radii"].size(); ++i)
            g.radii.push_back(real_value(j["radii"][i], "grid.radii[" + std::to_string(i) + "]"));
    }
    if (j.contains("angles_per_radius")) g.angles_per_radius = count_value(j["angles_per_radius"], "grid.angles_per_radius");
    if (j.contains("refine_steps")) g.refine_steps = count_value(j["refine_steps"], "grid.refine_steps");
    g.validate();
    return g;
}

QuadratureConfig parse_quad(const json& j) {
    require_object(j, "quad");
    reject_unknown(j, "quad", {"nodes_per_panel", "max_panels", "rel_tol", "substitution_power"});
    QuadratureConfig q;
    if (j.contains("nodes_per_panel")) q.nodes_per_panel = count_value(j["nodes_per_panel"], "quad.nodes_per_panel");
    if (j.contains("max_panels")) q.max_panels = count_value(j["max_panels"], "quad.max_panels");
    if (j.contains("rel_tol")) q.rel_tol = real_value(j["rel_tol"], "quad.rel_tol");
    if (j.contains("substitution_power"))
        q.substitution_power = count_value(j["substitution_power"], "quad.substitution_power");
    q.validate();
    return q;
}

json complex_json(Complex c) { return json::array({c.real(), c.imag()}); }

json function_json(const FunctionSpec& f) {
    json j = json::object();
    if (!f.catalog.empty()) {
        j["catalog"] = f.catalog;
        if (!f.params.empty()) j["params"] = f.params;
        return j;
    }
    json cs = json::array();
    for (const auto& c : f.coefficients) cs.push_back(complex_json(c));
    j["coefficients"] = cs;
    if (f.truncated) j["truncated"] = true;
    return j;
}

}  // namespace

SeriesFunction FunctionSpec::build() const {
    if (!catalog.empty()) return catalog_build(catalog, params);
    return SeriesFunction(coefficients, "coefficients", truncated);
}

Functions ProblemSpec::functions() const { return {f.build(), g.build(), phi.build()}; }

ProblemSpec parse_config(std::string_view text) {
    json j;
    try {
        j = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::Config, std::string("config: malformed JSON: ") + e.what());
    }
    require_object(j, "");
    reject_unknown(j, "", {"variant", "f", "g", "phi", "params", "grid", "quad"});

    ProblemSpec spec;
    if (j.contains("variant")) {
        if (!j["variant"].is_string()) fail("variant", "must be a string");
        const auto v = parse_variant(j["variant"].get<std::string>());
        if (!v) fail("variant", "must be one of thm31, thm32, cor31, cor32, thm41");
        spec.variant = *v;
    }
    if (j.contains("f")) spec.f = parse_function(j["f"], "f");
    if (j.contains("g")) spec.g = parse_function(j["g"], "g");
    if (j.contains("phi")) spec.phi = parse_function(j["phi"], "phi");
    if (j.contains("params")) spec.params = parse_params(j["params"]);
    if (j.contains("grid")) spec.grid = parse_grid(j["grid"]);
    if (j.contains("quad")) spec.quad = parse_quad(j["quad"]);
    return spec;
}

ProblemSpec load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open config file '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const ProblemSpec& spec) {
    json j;
    j["variant"] = to_string(spec.variant);
    j["f"] = function_json(spec.f);
    j["g"] = function_json(spec.g);
    j["phi"] = function_json(spec.phi);
    json p;
    p["alpha"] = complex_json(spec.params.alpha);
    p["beta"] = complex_json(spec.params.beta);
    p["gamma"] = complex_json(spec.params.gamma);
    p["m"] = spec.params.m;
    p["a"] = spec.params.a;
    if (spec.params.k < 1.0) p["k"] = spec.params.k;
    j["params"] = p;
    j["grid"] = {{"radii", spec.grid.radii},
                 {"angles_per_radius", spec.grid.angles_per_radius},
                 {"refine_steps", spec.grid.refine_steps}};
    j["quad"] = {{"nodes_per_panel", spec.quad.nodes_per_panel},
                 {"max_panels", spec.quad.max_panels},
                 {"rel_tol", spec.quad.rel_tol},
                 {"substitution_power", spec.quad.substitution_power}};
    return j.dump(2) + "\n";
}

}  // namespace ulab
