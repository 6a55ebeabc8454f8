#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "grid.hpp"

namespace ulab {

inline constexpr std::size_t kDefaultDegree = 64;
inline constexpr double kTruncationTolerance = 1e-12;
// Below this modulus z h'(z)/h(z) is taken from the series quotient h'(z) / (h(z)/z).
inline constexpr double kRemovableRadius = 1e-8;
// |f'(z)|, |g(z)/z|, |phi(z)/z| below this count as vanishing (all are 1 at z = 0).
inline constexpr double kVanishingFloor = 1e-13;

struct SeriesEval {
    Complex value;
    Complex first;
    Complex second;
    bool truncation_warning = false;
};

/// Normalized analytic function on the unit disk stored as the truncated
/// power series c_1 z + c_2 z^2 + ... + c_N z^N (c_0 = 0 implied).
///
/// A series marked `truncated` stands for an infinite expansion; evaluating it
/// where |c_N| |z|^N exceeds kTruncationTolerance attaches a warning.
class SeriesFunction {
public:
    SeriesFunction() : SeriesFunction(std::vector<Complex>{Complex{1.0, 0.0}}, "identity") {}
    explicit SeriesFunction(std::vector<Complex> coefficients, std::string label = {},
                            bool truncated = false);

    [[nodiscard]] std::span<const Complex> coefficients() const { return coefficients_; }
    [[nodiscard]] std::size_t degree() const { return coefficients_.size(); }
    [[nodiscard]] const std::string& label() const { return label_; }
    [[nodiscard]] bool truncated() const { return truncated_; }
    [[nodiscard]] bool class_a() const { return coefficients_.front() == Complex{1.0, 0.0}; }

    /// s, s', s'' at z in a single Horner pass. Throws Domain for |z| > 1.
    [[nodiscard]] SeriesEval eval(Complex z) const;
    [[nodiscard]] Complex value(Complex z) const;
    [[nodiscard]] Complex derivative(Complex z) const;
    /// s(z)/z, which is c_1 at the origin.
    [[nodiscard]] Complex quotient(Complex z) const;
    /// z s'(z)/s(z), with the removable singularity at 0 filled in.
    [[nodiscard]] Complex log_derivative_term(Complex z) const;
    /// |c_N| r^N within tolerance (always true for exact polynomials).
    [[nodiscard]] bool tail_within_tolerance(double radius) const;

    friend bool operator==(const SeriesFunction&, const SeriesFunction&) = default;

private:
    std::vector<Complex> coefficients_;
    std::string label_;
    bool truncated_ = false;
};

SeriesEval eval_with_derivatives(const SeriesFunction& s, Complex z);

struct CriterionTerms {
    Complex pre_schwarzian;  // z f''/f'
    Complex log_ratio;       // z g'/g - z phi'/phi
};

/// Throws DerivativeVanishes when f'(z) = 0 and Hypothesis when g or phi
/// vanishes away from the origin.
CriterionTerms criterion_terms(const SeriesFunction& f, const SeriesFunction& g,
                               const SeriesFunction& phi, Complex z);

/// Catalog: identity; quadratic {c}; koebe {degree}; exponential {lambda, degree}.
SeriesFunction catalog_build(std::string_view name, const std::map<std::string, double>& params);
bool catalog_known(std::string_view name);

struct NonvanishingResult {
    bool nonvanishing = true;
    std::optional<Complex> witness;  // sample with the smallest |s(z)/z| when the check fails
    double min_modulus = 0.0;
};

inline constexpr double kNonvanishingFloor = 1e-10;

/// Samples |s(z)/z| over the grid points with |z| <= radius. A pass is
/// evidence only: zeros between samples can be missed.
NonvanishingResult nonvanishing_check(const SeriesFunction& s, double radius, const DiskGrid& grid,
                                      double floor = kNonvanishingFloor);

}  // namespace ulab
