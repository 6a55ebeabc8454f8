#include "grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ulab {

DiskGrid DiskGrid::boundary_graded(std::size_t levels, std::size_t angles,
                                   std::size_t refine_steps) {
    DiskGrid grid;
    grid.angles_per_radius = angles;
    grid.refine_steps = refine_steps;
    for (std::size_t j = 1; j <= levels; ++j)
        grid.radii.push_back(1.0 - std::ldexp(1.0, -static_cast<int>(j)));
    return grid;
}

void DiskGrid::validate() const {
    if (radii.empty())
        throw Error(ErrorKind::Config, "grid.radii: must be nonempty");
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (!(radii[i] > 0.0) || !(radii[i] < 1.0))
            throw Error(ErrorKind::Config, "grid.radii: every radius must lie in (0,1)");
        if (i > 0 && !(radii[i] > radii[i - 1]))
            throw Error(ErrorKind::Config, "grid.radii: must be strictly increasing");
    }
    if (angles_per_radius < 8)
        throw Error(ErrorKind::Config, "grid.angles_per_radius: must be at least 8");
}

double DiskGrid::max_radius() const {
    return radii.empty() ? 0.0 : radii.back();
}

Complex DiskGrid::sample(std::size_t radius_index, std::size_t angle_index) const {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(angle_index) /
                         static_cast<double>(angles_per_radius);
    return std::polar(radii[radius_index], theta);
}

}  // namespace ulab
