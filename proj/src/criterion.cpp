#include "criterion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "parallel.hpp"

namespace ulab {

Complex radial_factor(double r, Complex gamma, double m) {
    if (r == 0.0) return 1.0 / gamma;
    return (1.0 - std::exp((m + 1.0) * gamma * std::log(r))) / gamma;
}

double criterion_value(Variant variant, Complex z, const ParameterSet& p, const Functions& fns) {
    if (p.gamma == Complex{0.0, 0.0})
        throw Error(ErrorKind::InvalidArgument, "gamma must be nonzero");
    const double r = std::abs(z);
    const double shift = (p.m - 1.0) / 2.0;

    switch (variant) {
    case Variant::thm31:
    case Variant::thm41: {
        if (r == 0.0) return std::fabs(shift);
        const auto t = criterion_terms(fns.f, fns.g, fns.phi, z);
        const Complex bracket = p.alpha * t.pre_schwarzian + p.beta * t.log_ratio;
        return std::abs(radial_factor(r, p.gamma, p.m) * bracket - shift);
    }
    case Variant::thm32: {
        if (r == 0.0) return 0.0;
        const auto t = criterion_terms(fns.f, fns.g, fns.phi, z);
        const Complex bracket = p.alpha * t.pre_schwarzian + p.beta * t.log_ratio;
        const double re = p.gamma.real();
        return radial_factor(r, Complex{re, 0.0}, p.m).real() * std::abs(bracket);
    }
    case Variant::cor31: {
        // alpha = beta, g = identity, phi = f
        if (r == 0.0) return std::fabs(shift);
        const SeriesFunction identity;
        const auto t = criterion_terms(fns.f, identity, fns.f, z);
        const Complex bracket = 1.0 + t.pre_schwarzian - fns.f.log_derivative_term(z);
        return std::abs(p.alpha * radial_factor(r, p.gamma, p.m) * bracket - shift);
    }
    case Variant::cor32: {
        // alpha = 1, g = phi, m = 1
        if (r == 0.0) return 0.0;
        const SeriesFunction identity;
        const auto t = criterion_terms(fns.f, identity, identity, z);
        const double re = p.gamma.real();
        return radial_factor(r, Complex{re, 0.0}, 1.0).real() * std::abs(t.pre_schwarzian);
    }
    }
    return 0.0;
}

double criterion_bound(Variant variant, const ParameterSet& p) {
    switch (variant) {
    case Variant::thm31:
    case Variant::cor31: return (p.m + 1.0) / 2.0;
    case Variant::thm32:
    case Variant::cor32: return 1.0;
    case Variant::thm41: return p.k * (p.m + 1.0) / 2.0;
    }
    return 0.0;
}

void check_hypotheses(Variant variant, const ParameterSet& p, const Functions& fns,
                      const DiskGrid& grid) {
    grid.validate();
    if (p.gamma == Complex{0.0, 0.0}) throw Error(ErrorKind::Hypothesis, "gamma must be nonzero");
    if (!(p.m >= 0.0)) throw Error(ErrorKind::Hypothesis, "m must be >= 0");
    if ((variant == Variant::thm32 || variant == Variant::cor32) && !(p.gamma.real() > 0.0))
        throw Error(ErrorKind::Hypothesis, std::string(to_string(variant)) + " requires Re gamma > 0");
    if (variant == Variant::thm32 && !(p.m >= 1.0))
        throw Error(ErrorKind::Hypothesis, "thm32 requires m >= 1");
    if (variant == Variant::thm41 && !(p.k >= 0.0 && p.k < 1.0))
        throw Error(ErrorKind::Hypothesis, "thm41 requires k in [0,1)");

    auto require_nonvanishing = [&](const SeriesFunction& s, const char* name) {
        const auto nv = nonvanishing_check(s, grid.max_radius(), grid);
        if (!nv.nonvanishing)
            throw Error(ErrorKind::Hypothesis,
                        std::string(name) + "(z)/z vanishes near z = " + format_complex(*nv.witness),
                        nv.witness);
    };
    switch (variant) {
    case Variant::thm31:
    case Variant::thm32:
    case Variant::thm41:
        if (!fns.g.class_a()) throw Error(ErrorKind::Hypothesis, "g is not of class A");
        if (!fns.phi.class_a()) throw Error(ErrorKind::Hypothesis, "phi is not of class A");
        require_nonvanishing(fns.g, "g");
        require_nonvanishing(fns.phi, "phi");
        break;
    case Variant::cor31:
        require_nonvanishing(fns.f, "f");
        break;
    case Variant::cor32: break;
    }
    if (!fns.f.class_a()) throw Error(ErrorKind::Hypothesis, "f is not of class A");
}

namespace {

struct Sample {
    double value = -std::numeric_limits<double>::infinity();
    Complex z{0.0, 0.0};
    bool vanishing = false;
};

// DerivativeVanishes becomes an infinite value so the sample wins the supremum.
Sample evaluate(Variant variant, Complex z, const ParameterSet& p, const Functions& fns) {
    try {
        const double v = criterion_value(variant, z, p, fns);
        return {std::isnan(v) ? std::numeric_limits<double>::infinity() : v, z, false};
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::DerivativeVanishes)
            return {std::numeric_limits<double>::infinity(), z, true};
        throw;
    }
}

}  // namespace

CriterionReport criterion_check(Variant variant, const ParameterSet& p, const Functions& fns,
                                const DiskGrid& grid) {
    check_hypotheses(variant, p, fns, grid);

    CriterionReport report;
    report.variant = variant;
    report.grid = grid;
    report.bound = criterion_bound(variant, p);

    const std::size_t nr = grid.radii.size();
    const std::size_t na = grid.angles_per_radius;
    std::vector<Sample> row_best(nr);
    parallel_for(nr, [&](std::size_t i) {
        Sample best;
        for (std::size_t j = 0; j < na; ++j) {
            const Sample s = evaluate(variant, grid.sample(i, j), p, fns);
            if (s.value > best.value) best = s;
        }
        row_best[i] = best;
    });
    // fixed-order reduction; ties keep the lowest index
    Sample best;
    for (const auto& s : row_best)
        if (s.value > best.value) best = s;
    report.samples_evaluated = nr * na;

    if (!best.vanishing && grid.refine_steps > 0) {
        const double r_max = grid.max_radius();
        double r = std::abs(best.z);
        double theta = std::arg(best.z);
        const auto it = std::find(grid.radii.begin(), grid.radii.end(), r);
        double dr = r / 2.0;
        if (it != grid.radii.end()) {
            const auto idx = static_cast<std::size_t>(it - grid.radii.begin());
            if (idx + 1 < nr) dr = std::min(dr, (grid.radii[idx + 1] - r) / 2.0);
            if (idx > 0) dr = std::min(dr, (r - grid.radii[idx - 1]) / 2.0);
        }
        double dtheta = std::numbers::pi / static_cast<double>(na);
        for (std::size_t step = 0; step < grid.refine_steps && !best.vanishing; ++step) {
            for (int moves = 0; moves < 8; ++moves) {
                Sample candidate = best;
                for (const auto& [rr, tt] : {std::pair{r + dr, theta}, std::pair{r - dr, theta},
                                            std::pair{r, theta + dtheta}, std::pair{r, theta - dtheta}}) {
                    const double rc = std::clamp(rr, 1e-12, r_max);
                    const Sample s = evaluate(variant, std::polar(rc, tt), p, fns);
                    ++report.samples_evaluated;
                    if (s.value > candidate.value) candidate = s;
                }
                if (!(candidate.value > best.value)) break;
                best = candidate;
                r = std::abs(best.z);
                theta = std::arg(best.z);
                if (best.vanishing) break;
            }
            dr /= 2.0;
            dtheta /= 2.0;
        }
    }

    report.sup_value = best.value;
    report.witness = best.z;
    report.margin = report.bound - report.sup_value;
    report.passed = !best.vanishing && report.sup_value <= report.bound + kCriterionStrictness;
    if (best.vanishing)
        report.warnings.push_back("f'(z) vanishes at the witness; reported as a violation");

    const bool uses_g_phi = variant != Variant::cor31 && variant != Variant::cor32;
    for (const auto& [s, name] : {std::pair{&fns.f, "f"}, std::pair{&fns.g, "g"}, std::pair{&fns.phi, "phi"}}) {
        if (s != &fns.f && !uses_g_phi) continue;
        if (!s->tail_within_tolerance(grid.max_radius()))
            report.warnings.push_back(std::string(name) + " (" + s->label() +
                                      "): truncated series tail exceeds 1e-12 at |z| = " +
                                      std::to_string(grid.max_radius()) +
                                      "; values there are not certified");
    }
    return report;
}

}  // namespace ulab
