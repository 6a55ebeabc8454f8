#pragma once

#include <span>
#include <vector>

#include "error.hpp"

namespace ulab {

/// Log w with the argument normalized to (-pi, pi]; -0.0 imaginary parts on
/// the negative axis map to +pi.
Complex principal_log(Complex w);
double principal_arg(Complex w);

/// exp(c Log w); 0 when w = 0 and Re c > 0. Throws SingularPower for w = 0, Re c <= 0.
Complex principal_power(Complex w, Complex c);

// Largest argument increment accepted between adjacent samples. The principal
// increment is always in (-pi, pi], so anything this close to pi is ambiguous.
inline constexpr double kMaxArgumentStep = 0.9 * 3.14159265358979323846;
// Tracked and principal arguments further apart than this mean the cut was crossed.
inline constexpr double kBranchAgreement = 1e-9;

/// Follows arg(w) continuously along an ordered sequence of samples.
class ArgumentTracker {
public:
    ArgumentTracker() = default;
    /// Seed with a known argument at the path start (e.g. 0 where w = 1).
    explicit ArgumentTracker(Complex start, double start_argument);

    /// Advances to w and returns the continuous argument. Throws SingularPath
    /// for w = 0 and UndersampledPath for an ambiguous increment.
    double advance(Complex w);

    [[nodiscard]] bool started() const { return started_; }
    [[nodiscard]] double argument() const { return argument_; }
    [[nodiscard]] Complex last() const { return last_; }
    /// True once the tracked argument has disagreed with the principal one.
    [[nodiscard]] bool crossed() const { return crossed_; }

private:
    Complex last_{1.0, 0.0};
    double argument_ = 0.0;
    bool started_ = false;
    bool crossed_ = false;
};

struct BranchedPath {
    std::vector<Complex> samples;
    int winding_offset = 0;  // sheets accumulated between the first and last sample
};

struct ContinuousPowers {
    std::vector<Complex> values;
    bool crossing = false;  // continuous result left the principal branch somewhere
    int winding_offset = 0;
};

/// w^c along the path with the argument carried continuously from the first
/// sample (which starts on the principal branch).
ContinuousPowers continuous_power_along_path(const BranchedPath& path, Complex c);

}  // namespace ulab
