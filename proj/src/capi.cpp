#include "ulab/ulab.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <numbers>
#include <random>
#include <regex>
#include <stdexcept>
#include <string>

#include "config.hpp"
#include "emit.hpp"
#include "parallel.hpp"

struct ulab_problem {
    ulab::ProblemSpec spec;
    ulab::Functions fns;
};

namespace {

using ulab::Complex;
using ulab::Error;
using ulab::ErrorKind;

thread_local std::string g_last_error;

ulab_status status_of(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidArgument: return ULAB_E_INVALID_ARGUMENT;
        case ErrorKind::Domain: return ULAB_E_DOMAIN;
        case ErrorKind::Hypothesis: return ULAB_E_HYPOTHESIS;
        case ErrorKind::DerivativeVanishes: return ULAB_E_DERIVATIVE_VANISHES;
        case ErrorKind::SingularPower: return ULAB_E_SINGULAR_POWER;
        case ErrorKind::SingularPath: return ULAB_E_SINGULAR_PATH;
        case ErrorKind::UndersampledPath: return ULAB_E_UNDERSAMPLED_PATH;
        case ErrorKind::NoConvergence: return ULAB_E_NO_CONVERGENCE;
        case ErrorKind::TransferPole: return ULAB_E_TRANSFER_POLE;
        case ErrorKind::Degenerate: return ULAB_E_DEGENERATE;
        case ErrorKind::Inconclusive: return ULAB_E_INCONCLUSIVE;
        case ErrorKind::Io: return ULAB_E_IO;
        case ErrorKind::Config: return ULAB_E_CONFIG;
    }
    return ULAB_E_INTERNAL;
}

// Runs body, translating exceptions into a status and the thread-local message.
template <class Body>
ulab_status guarded(Body&& body) {
    try {
        body();
        g_last_error.clear();
        return ULAB_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        if (e.witness()) g_last_error += " (at z = " + ulab::format_complex(*e.witness()) + ")";
        return status_of(e.kind());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
    } catch (const std::exception& e) {
        g_last_error = e.what();
    } catch (...) {
        g_last_error = "unknown failure";
    }
    return ULAB_E_INTERNAL;
}

void require(const void* p, const char* what) {
    if (p == nullptr) throw Error(ErrorKind::InvalidArgument, std::string(what) + " must not be null");
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out == nullptr) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

Complex to_cpp(ulab_complex z) { return {z.re, z.im}; }
ulab_complex to_c(Complex z) { return {z.real(), z.imag()}; }

void set_problem(ulab_problem* problem, ulab::ProblemSpec spec) {
    auto fns = spec.functions();
    problem->spec = std::move(spec);
    problem->fns = std::move(fns);
}

std::vector<double> grid_radii(const ulab_polar_grid& g) {
    if (g.n_radii == 0 || g.n_angles == 0) throw Error(ErrorKind::InvalidArgument, "grid needs radii and angles");
    if (!(g.r_min >= 0.0 && g.r_max >= g.r_min && std::isfinite(g.r_max)))
        throw Error(ErrorKind::InvalidArgument, "grid radii must satisfy 0 <= r_min <= r_max");
    std::vector<double> radii(g.n_radii);
    for (std::size_t j = 0; j < g.n_radii; ++j)
        radii[j] = g.n_radii == 1 ? g.r_max : g.r_min + (g.r_max - g.r_min) * j / (g.n_radii - 1);
    return radii;
}

double to_double(const std::string& s) {
    try {
        return std::stod(s);
    } catch (const std::out_of_range&) {
        throw Error(ErrorKind::InvalidArgument, "number '" + s + "' is out of range");
    }
}

Complex grid_point(double r, std::size_t i, std::size_t n_angles) {
    return std::polar(r, 2.0 * std::numbers::pi * i / n_angles);
}

}  // namespace

extern "C" {

const char* ulab_last_error(void) { return g_last_error.c_str(); }

const char* ulab_status_name(ulab_status status) {
    switch (status) {
        case ULAB_OK: return "ok";
        case ULAB_E_INTERNAL: return "internal";
        default: break;
    }
    if (status > ULAB_OK && status < ULAB_E_INTERNAL) {
        static const ErrorKind kinds[] = {ErrorKind::InvalidArgument, ErrorKind::Domain, ErrorKind::Hypothesis,
                                          ErrorKind::DerivativeVanishes, ErrorKind::SingularPower,
                                          ErrorKind::SingularPath, ErrorKind::UndersampledPath,
                                          ErrorKind::NoConvergence, ErrorKind::TransferPole, ErrorKind::Degenerate,
                                          ErrorKind::Inconclusive, ErrorKind::Io, ErrorKind::Config};
        return ulab::to_string(kinds[status - 1]);
    }
    return "unknown";
}

void ulab_string_free(char* s) { std::free(s); }

ulab_status ulab_problem_parse(const char* json_text, ulab_problem** out) {
    return guarded([&] {
        require(json_text, "json_text");
        require(out, "out");
        auto problem = std::make_unique<ulab_problem>();
        set_problem(problem.get(), ulab::parse_config(json_text));
        *out = problem.release();
    });
}

ulab_status ulab_problem_load(const char* path, ulab_problem** out) {
    return guarded([&] {
        require(path, "path");
        require(out, "out");
        auto problem = std::make_unique<ulab_problem>();
        set_problem(problem.get(), ulab::load_config(path));
        *out = problem.release();
    });
}

void ulab_problem_free(ulab_problem* problem) { delete problem; }

ulab_status ulab_problem_serialize(const ulab_problem* problem, char** json_out) {
    return guarded([&] {
        require(problem, "problem");
        require(json_out, "json_out");
        *json_out = dup_string(ulab::serialize_config(problem->spec));
    });
}

ulab_status ulab_problem_set_k(ulab_problem* problem, double k) {
    return guarded([&] {
        require(problem, "problem");
        if (!(k >= 0.0 && k < 1.0)) throw Error(ErrorKind::Config, "params.k: must be in [0,1)");
        problem->spec.params.k = k;
    });
}

ulab_status ulab_problem_set_a(ulab_problem* problem, double a) {
    return guarded([&] {
        require(problem, "problem");
        auto p = problem->spec.params;
        p.a = a;
        p.validate();
        problem->spec.params = p;
    });
}

ulab_status ulab_parse_complex(const char* text, ulab_complex* out) {
    return guarded([&] {
        require(text, "text");
        require(out, "out");
        static const std::string num = R"([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)";
        static const std::regex both("^\\s*(" + num + ")\\s*([+-])\\s*((?:\\d+\\.?\\d*|\\.\\d+)(?:[eE][+-]?\\d+)?)?\\s*[ij]\\s*$");
        static const std::regex imag_only("^\\s*([+-]?)((?:\\d+\\.?\\d*|\\.\\d+)(?:[eE][+-]?\\d+)?)?\\s*[ij]\\s*$");
        static const std::regex real_only("^\\s*(" + num + ")\\s*$");
        static const std::regex pair("^\\s*\\(\\s*(" + num + ")\\s*,\\s*(" + num + ")\\s*\\)\\s*$");
        std::cmatch m;
        double re = 0.0, im = 0.0;
        if (std::regex_match(text, m, both)) {
            re = to_double(m[1].str());
            im = m[3].matched ? to_double(m[3].str()) : 1.0;
            if (m[2].str() == "-") im = -im;
        } else if (std::regex_match(text, m, imag_only)) {
            im = m[2].matched ? to_double(m[2].str()) : 1.0;
            if (m[1].str() == "-") im = -im;
        } else if (std::regex_match(text, m, real_only)) {
            re = to_double(m[1].str());
        } else if (std::regex_match(text, m, pair)) {
            re = to_double(m[1].str());
            im = to_double(m[2].str());
        } else {
            throw Error(ErrorKind::InvalidArgument, std::string("cannot parse complex number '") + text + "'");
        }
        if (!std::isfinite(re) || !std::isfinite(im))
            throw Error(ErrorKind::InvalidArgument, std::string("complex number '") + text + "' is not finite");
        *out = {re, im};
    });
}

ulab_status ulab_format_complex(ulab_complex z, char** out) {
    return guarded([&] {
        require(out, "out");
        *out = dup_string(ulab::format_complex(to_cpp(z)));
    });
}

ulab_status ulab_check(const ulab_problem* problem, int* passed, char** report_json) {
    return guarded([&] {
        require(problem, "problem");
        require(passed, "passed");
        const auto& s = problem->spec;
        const auto report = ulab::criterion_check(s.variant, s.params, problem->fns, s.grid);
        if (report_json != nullptr) *report_json = dup_string(ulab::report_json(report));
        *passed = report.passed ? 1 : 0;
    });
}

ulab_status ulab_eval(const ulab_problem* problem, ulab_complex z, ulab_complex* value, int* flagged) {
    return guarded([&] {
        require(problem, "problem");
        require(value, "value");
        const auto r = ulab::operator_eval(to_cpp(z), problem->spec.params, problem->fns, problem->spec.quad);
        *value = to_c(r.value);
        if (flagged != nullptr) *flagged = r.branch_crossing ? 1 : 0;
    });
}

ulab_status ulab_chain_eval(const ulab_problem* problem, ulab_complex z, double t, ulab_complex* value,
                            int* flagged) {
    return guarded([&] {
        require(problem, "problem");
        require(value, "value");
        const auto r = ulab::chain_eval(to_cpp(z), t, problem->spec.params, problem->fns, problem->spec.quad);
        *value = to_c(r.value);
        if (flagged != nullptr) *flagged = r.branch_crossing ? 1 : 0;
    });
}

ulab_status ulab_extend_eval(const ulab_problem* problem, ulab_complex z, ulab_complex* value, int* flagged) {
    return guarded([&] {
        require(problem, "problem");
        require(value, "value");
        const auto r = ulab::becker_extend(to_cpp(z), problem->spec.params, problem->fns, problem->spec.quad);
        *value = to_c(r.value);
        if (flagged != nullptr) *flagged = r.branch_crossing ? 1 : 0;
    });
}

ulab_status ulab_transfer(const ulab_problem* problem, ulab_complex z, double t, ulab_complex* G, ulab_complex* w,
                          ulab_complex* p) {
    return guarded([&] {
        require(problem, "problem");
        const auto tr = ulab::transfer_functions(to_cpp(z), t, problem->spec.params, problem->fns);
        if (G != nullptr) *G = to_c(tr.G);
        if (w != nullptr) *w = to_c(tr.w);
        if (p != nullptr) *p = to_c(tr.p);
    });
}

ulab_status ulab_pde_residual(const ulab_problem* problem, ulab_complex z, double t, double* residual) {
    return guarded([&] {
        require(problem, "problem");
        require(residual, "residual");
        *residual = ulab::pde_residual(to_cpp(z), t, problem->spec.params, problem->fns, problem->spec.quad);
    });
}

ulab_status ulab_beltrami(const ulab_problem* problem, ulab_complex z, ulab_complex* mu, double* modulus) {
    return guarded([&] {
        require(problem, "problem");
        const auto s = ulab::beltrami_estimate(to_cpp(z), problem->spec.params, problem->fns, 1e-5,
                                               problem->spec.quad);
        if (mu != nullptr) *mu = to_c(s.mu);
        if (modulus != nullptr) *modulus = s.modulus;
    });
}

ulab_status ulab_extension_constants(double k, double a, ulab_constants* out) {
    return guarded([&] {
        require(out, "out");
        const auto c = ulab::extension_constants(k, a);
        *out = {c.k, c.a, c.L1, c.L2, c.curlyL1, c.curlyL2, c.l};
    });
}

ulab_status ulab_constants_json(double k, double a, char** json_out) {
    return guarded([&] {
        require(json_out, "json_out");
        *json_out = dup_string(ulab::constants_json(ulab::extension_constants(k, a)));
    });
}

ulab_status ulab_chain_csv(const ulab_problem* problem, ulab_polar_grid grid, const double* times, size_t n_times,
                           const char* path, size_t* n_flagged) {
    return guarded([&] {
        require(problem, "problem");
        require(path, "path");
        if (n_times == 0) throw Error(ErrorKind::InvalidArgument, "chain grid needs at least one time");
        require(times, "times");
        const auto radii = grid_radii(grid);
        const auto& s = problem->spec;
        const std::size_t per_t = radii.size() * grid.n_angles;
        std::vector<ulab::GridRow> rows(n_times * per_t);
        std::vector<char> flags(rows.size(), 0);
        ulab::parallel_for(rows.size(), [&](std::size_t idx) {
            const double t = times[idx / per_t];
            const std::size_t rest = idx % per_t;
            const Complex z = grid_point(radii[rest / grid.n_angles], rest % grid.n_angles, grid.n_angles);
            const auto r = ulab::chain_eval(z, t, s.params, problem->fns, s.quad);
            double abs_w = INFINITY;
            try {
                abs_w = std::abs(ulab::transfer_functions(z, t, s.params, problem->fns).w);
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::TransferPole) throw;
            }
            rows[idx] = {z, t, r.value, abs_w, std::nullopt};
            flags[idx] = r.branch_crossing ? 1 : 0;
        });
        ulab::emit_grid_csv(rows, path);
        if (n_flagged != nullptr) *n_flagged = static_cast<std::size_t>(std::count(flags.begin(), flags.end(), 1));
    });
}

ulab_status ulab_extend_csv(const ulab_problem* problem, ulab_polar_grid grid, const char* path,
                            size_t* n_flagged) {
    return guarded([&] {
        require(problem, "problem");
        require(path, "path");
        const auto radii = grid_radii(grid);
        const auto& s = problem->spec;
        std::vector<ulab::GridRow> rows(radii.size() * grid.n_angles);
        std::vector<char> flags(rows.size(), 0);
        ulab::parallel_for(rows.size(), [&](std::size_t idx) {
            const Complex z = grid_point(radii[idx / grid.n_angles], idx % grid.n_angles, grid.n_angles);
            const auto r = ulab::becker_extend(z, s.params, problem->fns, s.quad);
            // analytic inside the disk; the finite-difference stencil needs |z| > 1 + 2h
            double abs_mu = 0.0;
            if (std::abs(z) > 1.0) {
                try {
                    abs_mu = ulab::beltrami_estimate(z, s.params, problem->fns, 1e-5, s.quad).modulus;
                } catch (const Error& e) {
                    if (e.kind() != ErrorKind::Domain && e.kind() != ErrorKind::Degenerate) throw;
                    abs_mu = NAN;
                }
            }
            rows[idx] = {z, std::nullopt, r.value, std::nullopt, abs_mu};
            flags[idx] = r.branch_crossing ? 1 : 0;
        });
        ulab::emit_grid_csv(rows, path);
        if (n_flagged != nullptr) *n_flagged = static_cast<std::size_t>(std::count(flags.begin(), flags.end(), 1));
    });
}

ulab_status ulab_oracle(const ulab_problem* problem, size_t n_radii, size_t n_angles, double r_max,
                        size_t n_targets, unsigned long long seed, int* collision, char** report_json) {
    return guarded([&] {
        require(problem, "problem");
        require(collision, "collision");
        if (!(r_max > 0.0 && r_max < 1.0)) throw Error(ErrorKind::InvalidArgument, "r_max must lie in (0,1)");
        const auto& s = problem->spec;
        const auto cloud = ulab::operator_cloud(s.params, problem->fns, s.quad, n_radii, n_angles, r_max);
        const double tol = ulab::default_collision_tolerance(cloud);
        const auto hit = ulab::injectivity_scan(cloud, tol);

        std::optional<bool> covered;
        if (n_targets > 0) {
            std::mt19937_64 rng(seed);
            std::uniform_real_distribution<double> unit(0.0, 1.0);
            std::vector<Complex> targets;
            for (std::size_t i = 0; i < n_targets; ++i) {
                // uniform in the disk of radius 0.95 r_max
                const Complex z = std::polar(0.95 * r_max * std::sqrt(unit(rng)), 2.0 * std::numbers::pi * unit(rng));
                targets.push_back(ulab::operator_eval(z, s.params, problem->fns, s.quad).value);
            }
            const auto curve = ulab::sample_closed_curve(
                [&](double th) { return ulab::operator_eval(std::polar(r_max, th), s.params, problem->fns, s.quad).value; },
                targets);
            covered = ulab::argument_principle_check(curve, targets);
        }
        *collision = hit ? 1 : 0;
        if (report_json != nullptr) *report_json = dup_string(ulab::collision_json(hit, cloud, tol, covered));
    });
}

ulab_status ulab_plot(const char* csv_path, const char* svg_path) {
    return guarded([&] {
        require(csv_path, "csv_path");
        require(svg_path, "svg_path");
        ulab::emit_svg(ulab::load_grid_csv(csv_path), svg_path);
    });
}

}  // extern "C"
