#include "operator.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "quadrature.hpp"

namespace ulab {

namespace {

// Brackets this small (B(0) = 1) are treated as zeros, i.e. branch points of the outer root.
constexpr double kBracketZero = 1e-12;
// When the integral cancels to (nearly) zero, tolerance is measured against
// this fraction of the integral of |integrand| instead.
constexpr double kCancellationScale = 1e-6;

bool single_valued_exponent(Complex c) {
    return c.imag() == 0.0 && c.real() == std::round(c.real());
}

void require_positive_real_gamma(Complex gamma) {
    if (!(gamma.real() > 0.0))
        throw Error(ErrorKind::Hypothesis,
                    "operator evaluation requires Re gamma > 0 (gamma = " + format_complex(gamma) + ")");
}

}  // namespace

void QuadratureConfig::validate() const {
    if (nodes_per_panel < 2 || nodes_per_panel > 256)
        throw Error(ErrorKind::Config, "quad.nodes_per_panel: must be in [2, 256]");
    if (max_panels < 2 || max_panels > 4096)
        throw Error(ErrorKind::Config, "quad.max_panels: must be in [2, 4096]");
    if (!(rel_tol > 0.0) || !(rel_tol < 1.0))
        throw Error(ErrorKind::Config, "quad.rel_tol: must be in (0, 1)");
    if (substitution_power > 64)
        throw Error(ErrorKind::Config, "quad.substitution_power: must be in [0, 64] (0 = automatic)");
}

std::size_t effective_substitution_power(Complex gamma, const QuadratureConfig& q) {
    if (q.substitution_power > 0) return q.substitution_power;
    require_positive_real_gamma(gamma);
    const double p = std::ceil(2.0 / gamma.real());
    return static_cast<std::size_t>(std::clamp(p, 1.0, 64.0));
}

Complex integrand(Complex u, const ParameterSet& p, const Functions& fns) {
    Complex h{1.0, 0.0};
    if (p.alpha != Complex{0.0, 0.0}) h *= principal_power(fns.f.derivative(u), p.alpha);
    if (p.beta != Complex{0.0, 0.0})
        h *= principal_power(fns.g.quotient(u) / fns.phi.quotient(u), p.beta);
    return h;
}

RayQuadrature::RayQuadrature(const ParameterSet& p, const Functions& fns, const QuadratureConfig& q,
                             double theta, bool record_h)
    : p_(p),
      fns_(fns),
      q_(q),
      direction_(std::polar(1.0, theta)),
      power_(effective_substitution_power(p.gamma, q)),
      record_h_(record_h),
      track_derivative_(p.alpha != Complex{0.0, 0.0} && !single_valued_exponent(p.alpha)),
      track_ratio_(p.beta != Complex{0.0, 0.0} && !single_valued_exponent(p.beta)),
      track_bracket_(p.gamma != Complex{0.0, 0.0} && !single_valued_exponent(1.0 / p.gamma)) {
    require_positive_real_gamma(p.gamma);
    q_.validate();
}

Complex RayQuadrature::node_h(Complex u, Trackers& tr) const {
    Complex h{1.0, 0.0};
    if (p_.alpha != Complex{0.0, 0.0}) {
        const Complex d = fns_.f.derivative(u);
        if (std::abs(d) < kVanishingFloor)
            throw Error(ErrorKind::DerivativeVanishes, "f'(u) vanishes at u = " + format_complex(u), u);
        if (track_derivative_) tr.derivative.advance(d);
        h *= std::exp(p_.alpha * principal_log(d));
    }
    if (p_.beta != Complex{0.0, 0.0}) {
        const Complex qg = fns_.g.quotient(u);
        const Complex qp = fns_.phi.quotient(u);
        if (std::abs(qg) < kVanishingFloor || std::abs(qp) < kVanishingFloor)
            throw Error(ErrorKind::Hypothesis, "g or phi vanishes at u = " + format_complex(u), u);
        const Complex ratio = qg / qp;
        if (track_ratio_) tr.ratio.advance(ratio);
        h *= std::exp(p_.beta * principal_log(ratio));
    }
    return h;
}

RayQuadrature::Step RayQuadrature::advance(double r) {
    if (!(r > radius_) || !(r < 1.0))
        throw Error(ErrorKind::Domain, "ray radii must increase strictly inside (0,1); got " +
                                           std::to_string(r));
    const Complex gamma = p_.gamma;
    const double pw = static_cast<double>(power_);
    const Complex pg = pw * gamma;
    const bool first = radius_ == 0.0;
    const double log_rho = first ? 0.0 : std::log(radius_ / r);
    const Complex base = first ? Complex{0.0, 0.0} : std::exp(gamma * log_rho) * bracket_;

    // Cells in s; u = r s^p e^{i theta}. The first segment is graded toward
    // s = 0 so that [0, 2^-D] carries at most ~2^{-54} of the integral.
    std::vector<std::pair<double, double>> cells;
    if (first) {
        const int depth = static_cast<int>(std::clamp(std::ceil(54.0 / pg.real()), 1.0, 200.0));
        cells.emplace_back(0.0, std::ldexp(1.0, -depth));
        for (int j = depth - 1; j >= 0; --j)
            cells.emplace_back(std::ldexp(1.0, -(j + 1)), std::ldexp(1.0, -j));
    } else {
        cells.emplace_back(std::exp(log_rho / pw), 1.0);
    }

    const auto& rule = gauss_legendre(q_.nodes_per_panel);
    std::optional<Complex> previous;
    for (std::size_t nsub = 1;; nsub *= 2) {
        Trackers tr = trackers_;
        std::vector<RayPoint> points;
        points.reserve(cells.size() * nsub);
        Complex estimate{0.0, 0.0};
        double magnitude = 0.0;
        bool sampled = true;
        try {
            for (const auto& [a, b] : cells) {
                const double len = (b - a) / static_cast<double>(nsub);
                for (std::size_t panel = 0; panel < nsub; ++panel) {
                    const double lo = a + len * static_cast<double>(panel);
                    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
                        const double s = lo + len * rule.nodes[i];
                        const double log_s = std::log(s);
                        const Complex u = r * std::exp(pw * log_s) * direction_;
                        const Complex term = gamma * pw * std::exp((pg - 1.0) * log_s) * node_h(u, tr) *
                                             (rule.weights[i] * len);
                        estimate += term;
                        magnitude += std::abs(term);
                    }
                    // bracket at the panel end: B(tau r) = tau^{-gamma} (base + partial)
                    const double s_end = panel + 1 == nsub ? b : lo + len;
                    const double log_tau = pw * std::log(s_end);
                    const Complex bracket = std::exp(-gamma * log_tau) * (base + estimate);
                    if (track_bracket_ && !tr.bracket_lost) {
                        try {
                            // B(0) = 1, so this is a relative zero test
                            if (std::abs(bracket) < kBracketZero)
                                throw Error(ErrorKind::SingularPath, "operator bracket vanishes on the ray");
                            tr.bracket.advance(bracket);
                        } catch (const Error& e) {
                            // a zero of B on the ray is a branch point of the outer root
                            if (e.kind() == ErrorKind::UndersampledPath && nsub < q_.max_panels) throw;
                            tr.bracket_lost = true;
                        }
                    }
                    const double x = r * std::exp(log_tau);
                    points.push_back({x, bracket, record_h_ ? integrand(x * direction_, p_, fns_)
                                                            : Complex{1.0, 0.0}});
                }
            }
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::UndersampledPath || nsub >= q_.max_panels) throw;
            sampled = false;
        }

        // A principal-branch jump in the integrand makes it discontinuous; the
        // result is flagged as invalid, so further refinement is pointless.
        const bool jumped = sampled && (tr.derivative.crossed() || tr.ratio.crossed());
        if (jumped || (sampled && previous &&
                       std::abs(estimate - *previous) <=
                           q_.rel_tol * std::max(std::abs(base + estimate), kCancellationScale * magnitude))) {
            trackers_ = tr;
            trace_.insert(trace_.end(), points.begin(), points.end());
            bracket_ = base + estimate;
            radius_ = r;
            Step step;
            step.bracket = bracket_;
            step.panels = cells.size() * nsub;
            step.integrand_crossing = tr.derivative.crossed() || tr.ratio.crossed();
            step.bracket_crossing =
                track_bracket_ && (tr.bracket_lost ||
                                   std::fabs(tr.bracket.argument() - principal_arg(bracket_)) > kBranchAgreement);
            return step;
        }
        if (nsub >= q_.max_panels)
            throw Error(ErrorKind::NoConvergence,
                        "operator quadrature did not reach rel_tol within max_panels at r = " +
                            std::to_string(r),
                        r * direction_);
        previous = sampled ? std::optional<Complex>(estimate) : std::nullopt;
    }
}

OperatorResult operator_eval(Complex z, const ParameterSet& p, const Functions& fns,
                             const QuadratureConfig& q) {
    require_positive_real_gamma(p.gamma);
    const double r = std::abs(z);
    if (!(r < 1.0))
        throw Error(ErrorKind::Domain, "operator_eval requires |z| < 1", z);
    if (r == 0.0) return {};
    RayQuadrature ray(p, fns, q, std::arg(z));
    const auto step = ray.advance(r);
    OperatorResult out;
    out.bracket = step.bracket;
    out.value = z * principal_power(step.bracket, 1.0 / p.gamma);
    out.panels_used = step.panels;
    out.branch_crossing = step.integrand_crossing || step.bracket_crossing;
    return out;
}

std::vector<OperatorResult> operator_eval_ray(double theta, std::span<const double> radii,
                                              const ParameterSet& p, const Functions& fns,
                                              const QuadratureConfig& q) {
    RayQuadrature ray(p, fns, q, theta);
    const Complex direction = std::polar(1.0, theta);
    std::vector<OperatorResult> out;
    out.reserve(radii.size());
    for (double r : radii) {
        const auto step = ray.advance(r);
        OperatorResult res;
        res.bracket = step.bracket;
        res.value = r * direction * principal_power(step.bracket, 1.0 / p.gamma);
        res.panels_used = step.panels;
        res.branch_crossing = step.integrand_crossing || step.bracket_crossing;
        out.push_back(res);
    }
    return out;
}

Complex hyp2f1(Complex a, Complex b, Complex c, Complex w) {
    if (c.imag() == 0.0 && c.real() <= 0.0 && c.real() == std::round(c.real()))
        throw Error(ErrorKind::Domain, "hyp2f1: c is a pole (non-positive integer)");
    if (!(std::abs(w) < 1.0))
        throw Error(ErrorKind::Domain, "hyp2f1: series requires |w| < 1", w);
    Complex sum{1.0, 0.0};
    Complex term{1.0, 0.0};
    int small_terms = 0;
    for (int n = 0; n < 100000; ++n) {
        const double dn = static_cast<double>(n);
        term *= (a + dn) * (b + dn) / ((c + dn) * (dn + 1.0)) * w;
        sum += term;
        if (term == Complex{0.0, 0.0}) return sum;  // terminating series
        // two consecutive negligible terms guard against an accidental near-zero factor
        small_terms = std::abs(term) < 1e-16 * std::abs(sum) ? small_terms + 1 : 0;
        if (small_terms == 2) return sum;
    }
    throw Error(ErrorKind::NoConvergence, "hyp2f1: series did not converge within 1e5 terms", w);
}

Complex example31_closed_form(Complex z, const ParameterSet& p) {
    require_positive_real_gamma(p.gamma);
    if (!(std::abs(z) < 1.0)) throw Error(ErrorKind::Domain, "example31_closed_form requires |z| < 1", z);
    if (z == Complex{0.0, 0.0}) return {0.0, 0.0};
    const Complex f21 = hyp2f1(p.gamma, -(p.alpha + p.beta), 1.0 + p.gamma, -z / 2.0);
    return z * principal_power(f21, 1.0 / p.gamma);
}

Functions example31_functions() {
    return {SeriesFunction({1.0, 0.25}, "quadratic"), SeriesFunction({1.0, 0.5}, "quadratic"),
            SeriesFunction({1.0}, "identity")};
}

}  // namespace ulab
