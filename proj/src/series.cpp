#include "series.hpp"

#include <cmath>
#include <limits>

namespace ulab {

namespace {

void require_in_disk(Complex z) {
    if (!(std::abs(z) <= 1.0))
        throw Error(ErrorKind::Domain, "series evaluation outside the closed unit disk at z = " +
                                           format_complex(z),
                    z);
}

double param_or(const std::map<std::string, double>& params, const std::string& key,
                double fallback) {
    const auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

std::size_t degree_param(const std::map<std::string, double>& params) {
    const double d = param_or(params, "degree", static_cast<double>(kDefaultDegree));
    if (!(d >= 2.0) || d > 1048576.0 || d != std::floor(d))
        throw Error(ErrorKind::Config, "params.degree: must be an integer in [2, 1048576]");
    return static_cast<std::size_t>(d);
}

void reject_unknown(const std::map<std::string, double>& params,
                    std::initializer_list<std::string_view> allowed, std::string_view name) {
    for (const auto& [key, _] : params) {
        bool ok = false;
        for (auto a : allowed) ok = ok || key == a;
        if (!ok)
            throw Error(ErrorKind::Config, "params." + key + ": unknown parameter for catalog function '" +
                                               std::string(name) + "'");
    }
}

}  // namespace

SeriesFunction::SeriesFunction(std::vector<Complex> coefficients, std::string label, bool truncated)
    : coefficients_(std::move(coefficients)), label_(std::move(label)), truncated_(truncated) {
    if (coefficients_.empty())
        throw Error(ErrorKind::InvalidArgument, "series needs at least one coefficient");
    for (const auto& c : coefficients_)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw Error(ErrorKind::InvalidArgument, "series coefficients must be finite");
}

SeriesEval SeriesFunction::eval(Complex z) const {
    require_in_disk(z);
    // Horner on a_0 = 0, a_n = c_n; `half_second` carries s''/2.
    Complex p = coefficients_.back();
    Complex d1{0.0, 0.0};
    Complex half_second{0.0, 0.0};
    for (std::size_t n = coefficients_.size() - 1; n-- > 0;) {
        half_second = half_second * z + d1;
        d1 = d1 * z + p;
        p = p * z + coefficients_[n];
    }
    half_second = half_second * z + d1;
    d1 = d1 * z + p;
    p = p * z;
    return {p, d1, 2.0 * half_second, !tail_within_tolerance(std::abs(z))};
}

Complex SeriesFunction::value(Complex z) const {
    return quotient(z) * z;
}

Complex SeriesFunction::derivative(Complex z) const {
    require_in_disk(z);
    Complex d{0.0, 0.0};
    for (std::size_t n = coefficients_.size(); n-- > 0;)
        d = d * z + static_cast<double>(n + 1) * coefficients_[n];
    return d;
}

Complex SeriesFunction::quotient(Complex z) const {
    require_in_disk(z);
    Complex q{0.0, 0.0};
    for (std::size_t n = coefficients_.size(); n-- > 0;) q = q * z + coefficients_[n];
    return q;
}

Complex SeriesFunction::log_derivative_term(Complex z) const {
    const Complex q = quotient(z);
    const Complex d = derivative(z);
    if (std::abs(z) <= kRemovableRadius) return d / q;
    return d * z / (q * z);
}

bool SeriesFunction::tail_within_tolerance(double radius) const {
    if (!truncated_) return true;
    const double n = static_cast<double>(coefficients_.size());
    const double cn = std::abs(coefficients_.back());
    if (cn == 0.0 || radius == 0.0) return true;
    return std::log(cn) + n * std::log(radius) <= std::log(kTruncationTolerance);
}

SeriesEval eval_with_derivatives(const SeriesFunction& s, Complex z) {
    return s.eval(z);
}

CriterionTerms criterion_terms(const SeriesFunction& f, const SeriesFunction& g,
                               const SeriesFunction& phi, Complex z) {
    const SeriesEval fe = f.eval(z);
    if (std::abs(fe.first) < kVanishingFloor)
        throw Error(ErrorKind::DerivativeVanishes, "f'(z) vanishes at z = " + format_complex(z), z);

    for (const SeriesFunction* h : {&g, &phi}) {
        if (std::abs(h->quotient(z)) < kVanishingFloor)
            throw Error(ErrorKind::Hypothesis,
                        (h == &g ? std::string("g") : std::string("phi")) +
                            " vanishes at z = " + format_complex(z),
                        z);
    }
    if (z == Complex{0.0, 0.0}) return {Complex{0.0, 0.0}, Complex{0.0, 0.0}};

    const Complex pre = z * fe.second / fe.first;
    // For class-A g and phi both log-derivative terms tend to 1, so below the
    // removable radius the difference is formed from the quotient series.
    const Complex ratio = g.log_derivative_term(z) - phi.log_derivative_term(z);
    return {pre, ratio};
}

bool catalog_known(std::string_view name) {
    return name == "identity" || name == "quadratic" || name == "koebe" || name == "exponential";
}

SeriesFunction catalog_build(std::string_view name, const std::map<std::string, double>& params) {
    if (name == "identity") {
        reject_unknown(params, {}, name);
        return SeriesFunction({Complex{1.0, 0.0}}, "identity");
    }
    if (name == "quadratic") {
        reject_unknown(params, {"c"}, name);
        const double c = param_or(params, "c", 0.0);
        if (!std::isfinite(c) || std::fabs(c) > 1e6)
            throw Error(ErrorKind::Config, "params.c: must be finite with |c| <= 1e6");
        return SeriesFunction({Complex{1.0, 0.0}, Complex{c, 0.0}}, "quadratic");
    }
    if (name == "koebe") {
        reject_unknown(params, {"degree"}, name);
        const std::size_t n = degree_param(params);
        std::vector<Complex> c(n);
        for (std::size_t i = 0; i < n; ++i) c[i] = static_cast<double>(i + 1);
        return SeriesFunction(std::move(c), "koebe", true);
    }
    if (name == "exponential") {
        reject_unknown(params, {"lambda", "degree"}, name);
        const double lambda = param_or(params, "lambda", 1.0);
        if (!std::isfinite(lambda) || std::fabs(lambda) > 50.0)
            throw Error(ErrorKind::Config, "params.lambda: must satisfy |lambda| <= 50");
        const std::size_t n = degree_param(params);
        // (e^{lambda z} - 1)/lambda = sum lambda^{n-1} z^n / n!
        std::vector<Complex> c(n);
        double term = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            c[i] = term;
            term *= lambda / static_cast<double>(i + 2);
        }
        return SeriesFunction(std::move(c), "exponential", true);
    }
    throw Error(ErrorKind::Config, "unknown catalog function '" + std::string(name) + "'");
}

NonvanishingResult nonvanishing_check(const SeriesFunction& s, double radius, const DiskGrid& grid,
                                      double floor) {
    if (!(radius > 0.0) || !(radius < 1.0))
        throw Error(ErrorKind::InvalidArgument, "nonvanishing_check: radius must lie in (0,1)");
    NonvanishingResult result;
    result.min_modulus = std::numeric_limits<double>::infinity();
    Complex argmin{0.0, 0.0};
    for (std::size_t i = 0; i < grid.radii.size(); ++i) {
        if (grid.radii[i] > radius) break;
        for (std::size_t j = 0; j < grid.angles_per_radius; ++j) {
            const Complex z = grid.sample(i, j);
            const double q = std::abs(s.quotient(z));
            if (q < result.min_modulus) {
                result.min_modulus = q;
                argmin = z;
            }
        }
    }
    if (result.min_modulus < floor) {
        result.nonvanishing = false;
        result.witness = argmin;
    }
    return result;
}

}  // namespace ulab
