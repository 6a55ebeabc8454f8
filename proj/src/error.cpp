#include "error.hpp"

#include <cmath>
#include <cstdio>

namespace ulab {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid argument";
    case ErrorKind::Domain: return "domain error";
    case ErrorKind::Hypothesis: return "hypothesis violation";
    case ErrorKind::DerivativeVanishes: return "derivative vanishes";
    case ErrorKind::SingularPower: return "singular power";
    case ErrorKind::SingularPath: return "singular path";
    case ErrorKind::UndersampledPath: return "undersampled path";
    case ErrorKind::NoConvergence: return "no convergence";
    case ErrorKind::TransferPole: return "transfer pole";
    case ErrorKind::Degenerate: return "degenerate point";
    case ErrorKind::Inconclusive: return "inconclusive";
    case ErrorKind::Io: return "i/o error";
    case ErrorKind::Config: return "configuration error";
    }
    return "unknown error";
}

std::string format_complex(Complex z) {
    char buf[80];
    const double im = z.imag();
    std::snprintf(buf, sizeof buf, "%.17g%s%.17gi", z.real(),
                  (std::signbit(im) ? "-" : "+"), std::fabs(im));
    return buf;
}

}  // namespace ulab
