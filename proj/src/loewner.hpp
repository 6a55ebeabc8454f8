#pragma once

#include "operator.hpp"

namespace ulab {

inline constexpr double kPdeStepZ = 1e-5;
inline constexpr double kPdeStepT = 1e-4;
inline constexpr double kPdeMinTime = 1e-3;
inline constexpr double kProbeClearance = 1e-10;

struct ChainResult {
    Complex value{0.0, 0.0};
    Complex bracket{1.0, 0.0};  // E I(zeta) + (1 - E) h(zeta), E = e^{-(m+1) a t gamma}
    bool branch_crossing = false;
};

/// L(z,t) = z e^{mat} [E I(zeta) + (1 - E) h(zeta)]^{1/gamma} with zeta = e^{-at} z,
/// I the operator bracket at zeta and E = e^{-(m+1) a t gamma}.
/// Requires |z| <= 1 with |z| < 1 or t > 0, t >= 0 and Re gamma > 0.
ChainResult chain_eval(Complex z, double t, const ParameterSet& p, const Functions& fns,
                       const QuadratureConfig& q = {});

struct Transfer {
    Complex G{0.0, 0.0};
    Complex w{0.0, 0.0};
    Complex p{1.0, 0.0};
};

/// G = (1/gamma)[alpha zeta f''/f' + beta(zeta g'/g - zeta phi'/phi)](1 - e^{-(m+1) a t gamma}),
/// w = ((1+a)G + 1 - ma) / ((1-a)G + 1 + ma), p = (1+w)/(1-w).
/// Throws TransferPole when the w denominator vanishes or w = 1.
Transfer transfer_functions(Complex z, double t, const ParameterSet& p, const Functions& fns);

/// Just the w map, for property tests on arbitrary G.
Complex transfer_w(Complex G, double m, double a);

/// |z L_z - p L_t| / (|z L_z| + |p L_t|) from central differences
/// (1e-5 per axis in z, 1e-4 in t). t below 1e-3 is evaluated at 1e-3.
double pde_residual(Complex z, double t, const ParameterSet& p, const Functions& fns,
                    const QuadratureConfig& q = {});

/// Checks that L(zeta, t) lies inside the curve theta -> L(rho e^{i theta}, s)
/// (winding number 1) for `samples` points zeta on |zeta| = rho/2.
/// Throws Inconclusive when a point lies within 1e-10 of the curve.
bool subordination_probe(double t, double s, double rho, const ParameterSet& p, const Functions& fns,
                         std::size_t samples, const QuadratureConfig& q = {});

}  // namespace ulab
