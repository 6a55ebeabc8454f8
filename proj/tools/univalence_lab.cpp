// univalence-lab: command-line front end over the C API.
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ulab/ulab.h"

namespace {

enum Exit : int { kOk = 0, kFail = 2, kHypothesis = 3, kUsage = 64, kSoftware = 70 };

struct UsageError {
    std::string message;
};

// Owns a problem handle and a returned string.
struct Problem {
    ulab_problem* handle = nullptr;
    ~Problem() { ulab_problem_free(handle); }
};

struct Text {
    char* s = nullptr;
    ~Text() { ulab_string_free(s); }
};

int report_failure(ulab_status st) {
    std::cerr << "univalence-lab: " << ulab_status_name(st) << ": " << ulab_last_error() << '\n';
    switch (st) {
        case ULAB_E_HYPOTHESIS: return kHypothesis;
        case ULAB_E_CONFIG:
        case ULAB_E_INVALID_ARGUMENT: return kUsage;
        default: return kSoftware;
    }
}

struct Failed {
    int code;
};

void ok(ulab_status st) {
    if (st != ULAB_OK) throw Failed{report_failure(st)};
}

ulab_complex parse_z(const std::string& text) {
    ulab_complex z{};
    if (ulab_parse_complex(text.c_str(), &z) != ULAB_OK) throw UsageError{ulab_last_error()};
    return z;
}

std::string show(ulab_complex z) {
    Text t;
    ok(ulab_format_complex(z, &t.s));
    return t.s;
}

struct Common {
    std::string config;
    std::optional<double> k;
    std::optional<double> a;

    void add_to(CLI::App* cmd, bool overrides) {
        cmd->add_option("--config,-c", config, "problem description (JSON); defaults apply when omitted")
            ->check(CLI::ExistingFile);
        if (overrides) {
            cmd->add_option("--k", k, "quasiconformal constant in [0,1), overrides the config");
            cmd->add_option("--a", a, "chain parameter a > 0, overrides the config");
        }
    }

    void load(Problem& p) const {
        ok(config.empty() ? ulab_problem_parse("{}", &p.handle) : ulab_problem_load(config.c_str(), &p.handle));
        if (k) ok(ulab_problem_set_k(p.handle, *k));
        if (a) ok(ulab_problem_set_a(p.handle, *a));
    }
};

void warn_flagged(std::size_t n) {
    if (n > 0) std::cerr << "univalence-lab: warning: " << n << " values crossed a principal branch cut\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical checks of univalence criteria, the integral operator, its Loewner chain and "
                 "quasiconformal extension"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "univalence-lab 1.0.0");

    Common common;

    auto* check = app.add_subcommand("check", "run the configured criterion on the sample grid");
    common.add_to(check, true);

    std::string z_text;
    auto* eval = app.add_subcommand("eval", "evaluate the operator F at a point of the disk");
    common.add_to(eval, false);
    eval->add_option("--z", z_text, "point, e.g. \"0.5+0.3i\"")->required();

    std::vector<double> times = {0.0, 0.5, 1.0};
    std::string out;
    double r_min = 0.0, r_max = 0.0;
    std::size_t n_radii = 0, n_angles = 0;
    auto* chain = app.add_subcommand("chain", "write L(z,t) on a polar grid as CSV");
    common.add_to(chain, true);
    chain->add_option("--t", times, "times t >= 0")->delimiter(',')->capture_default_str();
    chain->add_option("--out,-o", out, "CSV path")->required();
    chain->add_option("--r-max", r_max, "outer radius, at most 1 (default 0.95)");
    chain->add_option("--radii", n_radii, "number of radii (default 10)");
    chain->add_option("--angles", n_angles, "number of angles (default 64)");

    auto* extend = app.add_subcommand("extend", "write the extension F and |mu| on a polar grid as CSV");
    common.add_to(extend, true);
    extend->add_option("--out,-o", out, "CSV path")->required();
    extend->add_option("--r-min", r_min, "inner radius (default 0.5)");
    extend->add_option("--r-max", r_max, "outer radius (default 2)");
    extend->add_option("--radii", n_radii, "number of radii (default 16)");
    extend->add_option("--angles", n_angles, "number of angles (default 64)");

    double k = 0.0, a = 1.0;
    auto* constants = app.add_subcommand("constants", "print the extension constants as JSON");
    constants->add_option("--k", k, "k in [0,1)")->required();
    constants->add_option("--a", a, "a > 0")->capture_default_str();

    std::size_t n_targets = 50;
    unsigned long long seed = 1;
    auto* oracle = app.add_subcommand("oracle", "injectivity scan and argument-principle check of F");
    common.add_to(oracle, false);
    oracle->add_option("--r-max", r_max, "sample radius in (0,1) (default 0.99)");
    oracle->add_option("--radii", n_radii, "number of radii (default 200)");
    oracle->add_option("--angles", n_angles, "number of angles (default 200)");
    oracle->add_option("--targets", n_targets, "argument-principle targets (0 skips)")->capture_default_str();
    oracle->add_option("--seed", seed, "target seed")->capture_default_str();

    std::string csv;
    auto* plot = app.add_subcommand("plot", "draw the image mesh of a CSV grid as SVG");
    plot->add_option("--csv", csv, "input CSV")->required()->check(CLI::ExistingFile);
    plot->add_option("--out,-o", out, "SVG path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    auto pick = [](auto given, auto fallback) { return given ? given : fallback; };

    try {
        if (*check) {
            Problem p;
            common.load(p);
            Text report;
            int passed = 0;
            ok(ulab_check(p.handle, &passed, &report.s));
            std::cout << report.s;
            return passed ? kOk : kFail;
        }
        if (*eval) {
            const auto z = parse_z(z_text);
            Problem p;
            common.load(p);
            ulab_complex w{};
            int flagged = 0;
            ok(ulab_eval(p.handle, z, &w, &flagged));
            std::cout << show(w) << '\n';
            warn_flagged(flagged);
            return kOk;
        }
        if (*chain) {
            Problem p;
            common.load(p);
            const ulab_polar_grid g{0.0, pick(r_max, 0.95), pick(n_radii, std::size_t{10}), pick(n_angles, std::size_t{64})};
            // radii spaced on (0, r_max]: drop the centre
            const ulab_polar_grid shifted{g.r_max / g.n_radii, g.r_max, g.n_radii, g.n_angles};
            std::size_t flagged = 0;
            ok(ulab_chain_csv(p.handle, shifted, times.data(), times.size(), out.c_str(), &flagged));
            warn_flagged(flagged);
            return kOk;
        }
        if (*extend) {
            Problem p;
            common.load(p);
            const ulab_polar_grid g{pick(r_min, 0.5), pick(r_max, 2.0), pick(n_radii, std::size_t{16}),
                                    pick(n_angles, std::size_t{64})};
            std::size_t flagged = 0;
            ok(ulab_extend_csv(p.handle, g, out.c_str(), &flagged));
            warn_flagged(flagged);
            return kOk;
        }
        if (*constants) {
            Text json;
            ok(ulab_constants_json(k, a, &json.s));
            std::cout << json.s;
            return kOk;
        }
        if (*oracle) {
            Problem p;
            common.load(p);
            Text report;
            int collision = 0;
            ok(ulab_oracle(p.handle, pick(n_radii, std::size_t{200}), pick(n_angles, std::size_t{200}),
                           pick(r_max, 0.99), n_targets, seed, &collision, &report.s));
            std::cout << report.s;
            const bool covered = std::string(report.s).find("\"argument_principle\": false") == std::string::npos;
            return collision || !covered ? kFail : kOk;
        }
        if (*plot) {
            ok(ulab_plot(csv.c_str(), out.c_str()));
            return kOk;
        }
    } catch (const UsageError& e) {
        std::cerr << "univalence-lab: " << e.message << '\n';
        return kUsage;
    } catch (const Failed& f) {
        return f.code;
    }
    return kUsage;
}
