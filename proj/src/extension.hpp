#pragma once

#include "loewner.hpp"

namespace ulab {

inline constexpr double kSeamClamp = 1e-6;
inline constexpr double kContainmentTolerance = 1e-12;

/// Roots of the quadratics that bound the quasiconformal constant of the
/// extension, and the resulting constant l. Undefined roots are -infinity.
struct ExtensionConstants {
    double k = 0.0;
    double a = 1.0;
    double L1 = 0.0;
    double L2 = 0.0;
    double curlyL1 = 0.0;
    double curlyL2 = 0.0;
    double l = 0.0;
};

/// Requires k in [0,1), a > 0. With A = |1 - a^2| and D = A + k(1-a)^2:
/// L1 = ((1-a)^2 + kA)/D, L2 = -((1+a)^2 + kA)/D,
/// curlyL = (-2a +- sqrt(4a^2 + (1-a^2)^2 k^2)) / (k (1-a)^2), l = L1.
/// a = 1 collapses to l = L1 = curlyL1 = k; k = 0 gives curlyL1 = 0.
ExtensionConstants extension_constants(double k, double a);

struct Containment {
    bool contained = false;
    double slack = 0.0;  // radius(Delta) - (center distance + radius(Delta'))
    Complex center{0.0, 0.0};
    double radius = 0.0;
    Complex inner_center{0.0, 0.0};
    double inner_radius = 0.0;
};

/// Whether the disk |G - (m-1)/2| <= k(m+1)/2 lies inside the disk of G
/// values for which |w| <= l, up to 1e-12. Throws Degenerate when
/// 2a(1+l^2) + (1-l^2)(1+a^2) <= 0.
Containment disk_containment_check(double k, double a, double l, double m = 1.0);

/// F(z) = L(z, 0) for |z| < 1 and L(z/|z|, log|z|) outside, with log|z|
/// clamped below at 1e-6.
ChainResult becker_extend(Complex z, const ParameterSet& p, const Functions& fns, const QuadratureConfig& q = {});

struct BeltramiSample {
    Complex z{0.0, 0.0};
    Complex mu{0.0, 0.0};
    double modulus = 0.0;
};

/// mu = dF/dzbar / dF/dz from central differences of step h in x and y.
/// Requires |z| > 1 + 2h; throws Degenerate when |dF/dz| < 1e-12.
BeltramiSample beltrami_estimate(Complex z, const ParameterSet& p, const Functions& fns, double h = 1e-5,
                                 const QuadratureConfig& q = {});

}  // namespace ulab
