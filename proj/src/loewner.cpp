#include "loewner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "oracle.hpp"

namespace ulab {

namespace {

constexpr double kUnitCircleSlack = 8.0 * std::numeric_limits<double>::epsilon();

Complex unflagged(const ChainResult& r, Complex z, double t) {
    if (r.branch_crossing)
        throw Error(ErrorKind::SingularPath,
                    "chain value at z = " + format_complex(z) + ", t = " + std::to_string(t) +
                        " is flagged by a branch crossing",
                    z);
    return r.value;
}

}  // namespace

ChainResult chain_eval(Complex z, double t, const ParameterSet& p, const Functions& fns,
                       const QuadratureConfig& q) {
    if (!(t >= 0.0) || !std::isfinite(t))
        throw Error(ErrorKind::Domain, "chain time must be finite and >= 0");
    // points normalized onto the circle may sit a few ulps outside it
    const double r = std::abs(z);
    if (r > 1.0 + kUnitCircleSlack || (r >= 1.0 && t == 0.0))
        throw Error(ErrorKind::Domain, "chain_eval requires |z| < 1, or |z| <= 1 when t > 0", z);
    if (!(p.gamma.real() > 0.0))
        throw Error(ErrorKind::Hypothesis, "chain evaluation requires Re gamma > 0");
    if (z == Complex{0.0, 0.0}) return {};
    if (t == 0.0) {
        const auto op = operator_eval(z, p, fns, q);
        return {op.value, op.bracket, op.branch_crossing};
    }

    // zeta = e^{-at} z has the argument of z, so Log zeta = -at + Log z and the
    // power e^{matgamma} can be pulled out of the bracket as the real e^{mat}.
    const double growth = p.a * t;
    const double rho = std::exp(-growth) * std::min(r, 1.0);
    const Complex E = std::exp(-(p.m + 1.0) * growth * p.gamma);

    RayQuadrature ray(p, fns, q, std::arg(z), true);
    const auto step = ray.advance(rho);
    const Complex zeta = std::polar(rho, std::arg(z));
    const Complex bracket = E * step.bracket + (1.0 - E) * integrand(zeta, p, fns);

    bool crossing = step.integrand_crossing;
    const Complex root = 1.0 / p.gamma;
    const bool single_valued = root.imag() == 0.0 && root.real() == std::round(root.real());
    if (!single_valued) {
        try {
            ArgumentTracker tracker(Complex{1.0, 0.0}, 0.0);
            for (const auto& pt : ray.trace()) tracker.advance(E * pt.bracket + (1.0 - E) * pt.h);
            tracker.advance(bracket);
            crossing = crossing || tracker.crossed() ||
                       std::fabs(tracker.argument() - principal_arg(bracket)) > kBranchAgreement;
        } catch (const Error& e) {
            // a vanishing or unresolvable bracket on the ray: the root cannot be continued
            if (e.kind() != ErrorKind::SingularPath && e.kind() != ErrorKind::UndersampledPath) throw;
            crossing = true;
        }
    }

    ChainResult out;
    out.bracket = bracket;
    out.branch_crossing = crossing;
    out.value = z * std::exp(p.m * growth) * principal_power(bracket, 1.0 / p.gamma);
    return out;
}

Complex transfer_w(Complex G, double m, double a) {
    const Complex den = (1.0 - a) * G + 1.0 + m * a;
    if (std::abs(den) < 1e-300)
        throw Error(ErrorKind::TransferPole, "w denominator (1-a)G + 1 + ma vanishes at G = " + format_complex(G));
    return ((1.0 + a) * G + 1.0 - m * a) / den;
}

Transfer transfer_functions(Complex z, double t, const ParameterSet& p, const Functions& fns) {
    if (!(t >= 0.0) || !std::isfinite(t))
        throw Error(ErrorKind::Domain, "chain time must be finite and >= 0");
    if (p.gamma == Complex{0.0, 0.0}) throw Error(ErrorKind::InvalidArgument, "gamma must be nonzero");
    const Complex zeta = std::exp(-p.a * t) * z;
    const auto terms = criterion_terms(fns.f, fns.g, fns.phi, zeta);
    const Complex decay = 1.0 - std::exp(-(p.m + 1.0) * p.a * t * p.gamma);

    Transfer out;
    out.G = (p.alpha * terms.pre_schwarzian + p.beta * terms.log_ratio) / p.gamma * decay;
    out.w = transfer_w(out.G, p.m, p.a);
    if (out.w == Complex{1.0, 0.0})
        throw Error(ErrorKind::TransferPole, "w = 1, so p = (1+w)/(1-w) is undefined", z);
    out.p = (1.0 + out.w) / (1.0 - out.w);
    return out;
}

double pde_residual(Complex z, double t, const ParameterSet& p, const Functions& fns, const QuadratureConfig& q) {
    const double r = std::abs(z);
    if (!(r > 0.0 && r < 1.0)) throw Error(ErrorKind::Domain, "pde_residual requires 0 < |z| < 1", z);
    if (!(t > 0.0)) throw Error(ErrorKind::Domain, "pde_residual requires t > 0");
    t = std::max(t, kPdeMinTime);

    const double hz = kPdeStepZ;
    const double ht = kPdeStepT;
    auto L = [&](Complex zz, double tt) { return unflagged(chain_eval(zz, tt, p, fns, q), zz, tt); };

    const Complex Lx = (L(z + hz, t) - L(z - hz, t)) / (2.0 * hz);
    const Complex Ly = (L(z + Complex{0.0, hz}, t) - L(z - Complex{0.0, hz}, t)) / (2.0 * hz);
    const Complex Lz = 0.5 * (Lx - Complex{0.0, 1.0} * Ly);
    const Complex Lt = (L(z, t + ht) - L(z, t - ht)) / (2.0 * ht);
    const Complex pv = transfer_functions(z, t, p, fns).p;

    const Complex lhs = z * Lz;
    const Complex rhs = pv * Lt;
    const double scale = std::abs(lhs) + std::abs(rhs);
    if (std::abs(lhs) < 1e-14 && std::abs(rhs) < 1e-14)
        throw Error(ErrorKind::Degenerate, "both sides of the Loewner equation vanish numerically", z);
    return std::abs(lhs - rhs) / scale;
}

bool subordination_probe(double t, double s, double rho, const ParameterSet& p, const Functions& fns,
                         std::size_t samples, const QuadratureConfig& q) {
    if (!(t >= 0.0 && t <= s)) throw Error(ErrorKind::InvalidArgument, "subordination probe needs 0 <= t <= s");
    if (!(rho > 0.0 && rho < 1.0)) throw Error(ErrorKind::InvalidArgument, "subordination probe needs rho in (0,1)");
    if (samples == 0) throw Error(ErrorKind::InvalidArgument, "subordination probe needs at least one sample");

    std::vector<Complex> targets(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        const Complex zeta = std::polar(0.5 * rho, 2.0 * std::numbers::pi * static_cast<double>(i) / samples);
        targets[i] = unflagged(chain_eval(zeta, t, p, fns, q), zeta, t);
    }
    const auto curve = sample_closed_curve(
        [&](double theta) {
            const Complex z = std::polar(rho, theta);
            return unflagged(chain_eval(z, s, p, fns, q), z, s);
        },
        targets);
    for (const Complex target : targets)
        if (winding_number(curve, target, kProbeClearance) != 1) return false;
    return true;
}

}  // namespace ulab
