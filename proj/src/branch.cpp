#include "branch.hpp"

#include <cmath>
#include <numbers>

namespace ulab {

double principal_arg(Complex w) {
    if (w.imag() == 0.0 && w.real() < 0.0) return std::numbers::pi;
    return std::arg(w);
}

Complex principal_log(Complex w) {
    return {std::log(std::abs(w)), principal_arg(w)};
}

Complex principal_power(Complex w, Complex c) {
    if (w == Complex{0.0, 0.0}) {
        if (c.real() > 0.0) return {0.0, 0.0};
        throw Error(ErrorKind::SingularPower, "0^c is singular for Re c <= 0 (c = " + format_complex(c) + ")");
    }
    return std::exp(c * principal_log(w));
}

ArgumentTracker::ArgumentTracker(Complex start, double start_argument)
    : last_(start), argument_(start_argument), started_(true) {
    if (start == Complex{0.0, 0.0})
        throw Error(ErrorKind::SingularPath, "tracked path starts at 0");
    crossed_ = std::fabs(argument_ - principal_arg(start)) > kBranchAgreement;
}

double ArgumentTracker::advance(Complex w) {
    if (w == Complex{0.0, 0.0})
        throw Error(ErrorKind::SingularPath, "tracked path passes through 0");
    if (!started_) {
        *this = ArgumentTracker(w, principal_arg(w));
        return argument_;
    }
    const double step = principal_arg(w / last_);
    if (std::fabs(step) >= kMaxArgumentStep)
        throw Error(ErrorKind::UndersampledPath,
                    "argument jumps by " + std::to_string(step) + " between adjacent samples", w);
    argument_ += step;
    last_ = w;
    if (std::fabs(argument_ - principal_arg(w)) > kBranchAgreement) crossed_ = true;
    return argument_;
}

ContinuousPowers continuous_power_along_path(const BranchedPath& path, Complex c) {
    ContinuousPowers out;
    ArgumentTracker tracker;
    out.values.reserve(path.samples.size());
    for (const Complex& w : path.samples) {
        const double arg = tracker.advance(w);
        out.values.push_back(std::exp(c * Complex{std::log(std::abs(w)), arg}));
    }
    out.crossing = tracker.crossed();
    if (!path.samples.empty())
        out.winding_offset = static_cast<int>(
            std::lround((tracker.argument() - principal_arg(path.samples.back())) / (2.0 * std::numbers::pi)));
    return out;
}

}  // namespace ulab
