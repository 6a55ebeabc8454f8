#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

namespace ulab {

using Complex = std::complex<double>;

enum class ErrorKind {
    InvalidArgument,
    Domain,              // point outside the admissible region
    Hypothesis,          // a theorem hypothesis is violated (nonvanishing, Re gamma, m range)
    DerivativeVanishes,  // f'(z) = 0 at the witness
    SingularPower,       // 0^c with Re c <= 0
    SingularPath,        // a tracked path passes through 0
    UndersampledPath,    // adjacent samples too far apart to track the argument
    NoConvergence,
    TransferPole,        // denominator of w vanishes, or w = 1
    Degenerate,          // finite-difference derivative too small to be meaningful
    Inconclusive,        // winding number target too close to the curve
    Io,
    Config,
};

const char* to_string(ErrorKind kind) noexcept;

// Every failure in the core is reported through this type; the C API maps
// kind() onto a status code.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message,
          std::optional<Complex> witness = std::nullopt)
        : std::runtime_error(message), kind_(kind), witness_(witness) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }
    [[nodiscard]] const std::optional<Complex>& witness() const noexcept { return witness_; }

private:
    ErrorKind kind_;
    std::optional<Complex> witness_;
};

std::string format_complex(Complex z);

}  // namespace ulab
