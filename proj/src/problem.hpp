#pragma once

#include <optional>
#include <string_view>

#include "error.hpp"
#include "series.hpp"

namespace ulab {

enum class Variant { thm31, thm32, cor31, cor32, thm41 };

const char* to_string(Variant v) noexcept;
std::optional<Variant> parse_variant(std::string_view name) noexcept;

/// Parameters shared by the criteria, the chain and the extension.
/// k = 1 means "univalence only"; a quasiconformal constant must lie in [0,1).
struct ParameterSet {
    Complex alpha{1.0, 0.0};
    Complex beta{0.0, 0.0};
    Complex gamma{1.0, 0.0};
    double m = 1.0;
    double a = 1.0;
    double k = 1.0;

    /// Structural checks only (gamma != 0, m >= 0, a > 0, k in [0,1]).
    void validate() const;

    friend bool operator==(const ParameterSet&, const ParameterSet&) = default;
};

/// The functions entering the operator: f, g and phi, all of class A.
struct Functions {
    SeriesFunction f;
    SeriesFunction g;
    SeriesFunction phi;

    friend bool operator==(const Functions&, const Functions&) = default;
};

}  // namespace ulab
