#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "branch.hpp"
#include "problem.hpp"

namespace ulab {

struct QuadratureConfig {
    std::size_t nodes_per_panel = 32;
    /// Limit on uniform subdivisions of each graded cell during panel doubling.
    std::size_t max_panels = 64;
    double rel_tol = 1e-10;
    /// Power p of the change of variables t = s^p; 0 selects max(1, ceil(2 / Re gamma)).
    std::size_t substitution_power = 0;

    void validate() const;
    friend bool operator==(const QuadratureConfig&, const QuadratureConfig&) = default;
};

std::size_t effective_substitution_power(Complex gamma, const QuadratureConfig& q);

struct OperatorResult {
    Complex value{0.0, 0.0};
    Complex bracket{1.0, 0.0};  // gamma * int_0^1 t^{gamma-1} h(t z) dt
    std::size_t panels_used = 0;
    bool branch_crossing = false;  // when set, `value` is not the analytic continuation
};

/// h(u) = f'(u)^alpha (g(u)/phi(u))^beta with principal powers; g/phi is
/// formed from the quotient series so h(0) = 1.
Complex integrand(Complex u, const ParameterSet& p, const Functions& fns);

/// Trace point of the cumulative ray integral: B(x) is the bracket at x e^{i theta}.
struct RayPoint {
    double radius = 0.0;
    Complex bracket{1.0, 0.0};
    Complex h{1.0, 0.0};  // only filled when the integrator records h
};

/// Accumulates int_0^x u^{gamma-1} h(u) du along the ray arg u = theta for
/// increasing x, so that a whole radial family costs one pass.
///
/// The first segment [0, r_1] is integrated in s with u = r_1 s^p e^{i theta}
/// on cells graded geometrically toward s = 0; later segments [r_{k-1}, r_k]
/// use a single cell. Each cell is split into 1, 2, 4, ... uniform panels until
/// two successive estimates agree to rel_tol relative to the bracket.
class RayQuadrature {
public:
    RayQuadrature(const ParameterSet& p, const Functions& fns, const QuadratureConfig& q,
                  double theta, bool record_h = false);

    struct Step {
        Complex bracket;
        std::size_t panels = 0;
        bool integrand_crossing = false;  // h left the principal branch somewhere on [0, r]
        bool bracket_crossing = false;    // tracked arg of B(r) differs from the principal one
    };

    /// Advances to radius r in (previous radius, 1). Throws Domain, Hypothesis, NoConvergence.
    Step advance(double r);

    [[nodiscard]] const std::vector<RayPoint>& trace() const { return trace_; }

private:
    struct Trackers {
        ArgumentTracker derivative{Complex{1.0, 0.0}, 0.0};
        ArgumentTracker ratio{Complex{1.0, 0.0}, 0.0};
        ArgumentTracker bracket{Complex{1.0, 0.0}, 0.0};
        bool bracket_lost = false;  // B vanished or could not be followed on the ray
    };
    Complex node_h(Complex u, Trackers& tr) const;

    const ParameterSet& p_;
    const Functions& fns_;
    QuadratureConfig q_;
    Complex direction_;
    std::size_t power_;
    bool record_h_;
    bool track_derivative_;
    bool track_ratio_;
    bool track_bracket_;
    double radius_ = 0.0;
    Complex bracket_{1.0, 0.0};
    Trackers trackers_;
    std::vector<RayPoint> trace_;
};

/// F(z) = z [gamma int_0^1 t^{gamma-1} h(tz) dt]^{1/gamma}, principal root.
OperatorResult operator_eval(Complex z, const ParameterSet& p, const Functions& fns,
                             const QuadratureConfig& q = {});

/// operator_eval at r e^{i theta} for each radius (strictly increasing, in (0,1)).
std::vector<OperatorResult> operator_eval_ray(double theta, std::span<const double> radii,
                                              const ParameterSet& p, const Functions& fns,
                                              const QuadratureConfig& q = {});

/// Gauss series for 2F1(a, b; c; w), |w| < 1.
Complex hyp2f1(Complex a, Complex b, Complex c, Complex w);

/// z [2F1(gamma, -(alpha+beta); 1+gamma; -z/2)]^{1/gamma}: the operator for
/// f = z + z^2/4, g = z + z^2/2, phi = z in closed form.
Complex example31_closed_form(Complex z, const ParameterSet& p);

/// The function triple behind example31_closed_form.
Functions example31_functions();

}  // namespace ulab
