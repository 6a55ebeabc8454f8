#pragma once

#include <cstddef>
#include <vector>

#include "error.hpp"

namespace ulab {

// Polar sampling of the open unit disk. Samples are r_i * exp(2 pi i j / n).
struct DiskGrid {
    std::vector<double> radii;
    std::size_t angles_per_radius = 512;
    std::size_t refine_steps = 20;

    // radii 1 - 2^{-j}, j = 1..levels
    static DiskGrid boundary_graded(std::size_t levels = 10, std::size_t angles = 512,
                                    std::size_t refine_steps = 20);

    void validate() const;
    [[nodiscard]] double max_radius() const;
    [[nodiscard]] std::size_t size() const { return radii.size() * angles_per_radius; }
    [[nodiscard]] Complex sample(std::size_t radius_index, std::size_t angle_index) const;

    friend bool operator==(const DiskGrid&, const DiskGrid&) = default;
};

}  // namespace ulab
