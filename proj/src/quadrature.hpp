#pragma once

#include <cstddef>
#include <vector>

namespace ulab {

/// n-point Gauss-Legendre rule mapped to [0, 1], nodes ascending.
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Cached per n; safe to call concurrently.
const GaussLegendreRule& gauss_legendre(std::size_t n);

}  // namespace ulab
