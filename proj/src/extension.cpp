#include "extension.hpp"

#include <cmath>
#include <limits>

namespace ulab {

ExtensionConstants extension_constants(double k, double a) {
    if (!(k >= 0.0 && k < 1.0)) throw Error(ErrorKind::InvalidArgument, "k must be in [0,1)");
    if (!(a > 0.0) || !std::isfinite(a)) throw Error(ErrorKind::InvalidArgument, "a must be a positive real");

    constexpr double undefined = -std::numeric_limits<double>::infinity();
    ExtensionConstants c;
    c.k = k;
    c.a = a;
    if (a == 1.0) {
        c.L1 = c.curlyL1 = c.l = k;
        c.L2 = c.curlyL2 = undefined;
        return c;
    }
    const double A = std::fabs(1.0 - a * a);
    const double sq_minus = (1.0 - a) * (1.0 - a);
    const double sq_plus = (1.0 + a) * (1.0 + a);
    const double den = A + k * sq_minus;
    c.L1 = (sq_minus + k * A) / den;
    c.L2 = -(sq_plus + k * A) / den;
    if (k == 0.0) {
        c.curlyL1 = 0.0;
        c.curlyL2 = undefined;
    } else {
        const double root = std::sqrt(4.0 * a * a + (1.0 - a * a) * (1.0 - a * a) * k * k);
        c.curlyL1 = (-2.0 * a + root) / (k * sq_minus);
        c.curlyL2 = (-2.0 * a - root) / (k * sq_minus);
    }
    c.l = c.L1;
    return c;
}

Containment disk_containment_check(double k, double a, double l, double m) {
    const double l2 = l * l;
    const double D = 2.0 * a * (1.0 + l2) + (1.0 - l2) * (1.0 + a * a);
    if (!(D > 0.0))
        throw Error(ErrorKind::Degenerate, "containment disk denominator 2a(1+l^2) + (1-l^2)(1+a^2) is not positive");
    Containment out;
    out.center = (a * (1.0 + l2) * (m - 1.0) + (1.0 - l2) * (m * a * a - 1.0)) / D;
    out.radius = 2.0 * a * l * (1.0 + m) / D;
    out.inner_center = (m - 1.0) / 2.0;
    out.inner_radius = k * (m + 1.0) / 2.0;
    out.slack = out.radius - (std::abs(out.center - out.inner_center) + out.inner_radius);
    out.contained = out.slack >= -kContainmentTolerance;
    return out;
}

ChainResult becker_extend(Complex z, const ParameterSet& p, const Functions& fns, const QuadratureConfig& q) {
    const double r = std::abs(z);
    if (!std::isfinite(r)) throw Error(ErrorKind::Domain, "extension point must be finite");
    if (r < 1.0) {
        const auto op = operator_eval(z, p, fns, q);
        return {op.value, op.bracket, op.branch_crossing};
    }
    return chain_eval(z / r, std::max(std::log(r), kSeamClamp), p, fns, q);
}

BeltramiSample beltrami_estimate(Complex z, const ParameterSet& p, const Functions& fns, double h,
                                 const QuadratureConfig& q) {
    if (!(h > 0.0)) throw Error(ErrorKind::InvalidArgument, "difference step must be positive");
    if (!(std::abs(z) > 1.0 + 2.0 * h))
        throw Error(ErrorKind::Domain, "Beltrami samples must satisfy |z| > 1 + 2h", z);
    auto F = [&](Complex w) {
        const auto r = becker_extend(w, p, fns, q);
        if (r.branch_crossing)
            throw Error(ErrorKind::SingularPath, "extension value is flagged by a branch crossing", w);
        return r.value;
    };
    const Complex i{0.0, 1.0};
    const Complex Fx = (F(z + h) - F(z - h)) / (2.0 * h);
    const Complex Fy = (F(z + i * h) - F(z - i * h)) / (2.0 * h);
    const Complex dz = 0.5 * (Fx - i * Fy);
    const Complex dzbar = 0.5 * (Fx + i * Fy);
    if (std::abs(dz) < 1e-12) throw Error(ErrorKind::Degenerate, "dF/dz vanishes numerically", z);
    BeltramiSample s;
    s.z = z;
    s.mu = dzbar / dz;
    s.modulus = std::abs(s.mu);
    return s;
}

}  // namespace ulab
