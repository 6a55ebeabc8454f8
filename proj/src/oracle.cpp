#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <unordered_map>

#include "parallel.hpp"

namespace ulab {

namespace {

double segment_distance(Complex a, Complex b, Complex t) {
    const Complex d = b - a;
    const double len2 = std::norm(d);
    if (len2 == 0.0) return std::abs(t - a);
    const double s = std::clamp(((t - a) * std::conj(d)).real() / len2, 0.0, 1.0);
    return std::abs(t - (a + s * d));
}

struct CellHash {
    std::size_t operator()(const std::pair<std::int64_t, std::int64_t>& c) const noexcept {
        return std::hash<std::int64_t>{}(c.first * 0x9E3779B97F4A7C15LL ^ c.second);
    }
};

std::int64_t cell_index(double x, double tol) {
    const double c = std::floor(x / tol);
    constexpr double lim = 4.0e18;
    return static_cast<std::int64_t>(std::clamp(c, -lim, lim));
}

}  // namespace

SampleCloud operator_cloud(const ParameterSet& p, const Functions& fns, const QuadratureConfig& q,
                           std::size_t n_radii, std::size_t n_angles, double r_max) {
    if (n_radii == 0 || n_angles == 0) throw Error(ErrorKind::InvalidArgument, "sample cloud needs radii and angles");
    if (!(r_max > 0.0 && r_max < 1.0)) throw Error(ErrorKind::Domain, "sample cloud radius must lie in (0,1)");
    std::vector<double> radii(n_radii);
    for (std::size_t j = 0; j < n_radii; ++j) radii[j] = r_max * static_cast<double>(j + 1) / n_radii;

    std::vector<std::vector<OperatorResult>> rays(n_angles);
    parallel_for(n_angles, [&](std::size_t i) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(i) / n_angles;
        rays[i] = operator_eval_ray(theta, radii, p, fns, q);
    });

    SampleCloud cloud;
    cloud.radius = r_max;
    cloud.points.reserve(n_radii * n_angles);
    for (std::size_t i = 0; i < n_angles; ++i) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(i) / n_angles;
        for (std::size_t j = 0; j < n_radii; ++j) {
            if (rays[i][j].branch_crossing) {
                ++cloud.skipped;
                continue;
            }
            cloud.points.emplace_back(std::polar(radii[j], theta), rays[i][j].value);
        }
    }
    return cloud;
}

double default_collision_tolerance(const SampleCloud& cloud) {
    if (cloud.points.empty()) return 1e-300;
    double lo_x = std::numeric_limits<double>::infinity(), hi_x = -lo_x, lo_y = lo_x, hi_y = -lo_x;
    for (const auto& [z, w] : cloud.points) {
        lo_x = std::min(lo_x, w.real());
        hi_x = std::max(hi_x, w.real());
        lo_y = std::min(lo_y, w.imag());
        hi_y = std::max(hi_y, w.imag());
    }
    return std::max(kCollisionRelativeTolerance * std::hypot(hi_x - lo_x, hi_y - lo_y), 1e-300);
}

std::optional<Collision> injectivity_scan(const SampleCloud& cloud, double tol) {
    if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "collision tolerance must be positive");
    const auto& pts = cloud.points;

    using Cell = std::pair<std::int64_t, std::int64_t>;
    std::unordered_map<Cell, std::vector<std::size_t>, CellHash> cells;
    cells.reserve(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i)
        cells[{cell_index(pts[i].second.real(), tol), cell_index(pts[i].second.imag(), tol)}].push_back(i);

    // Any pair closer than tol sits in adjacent cells, so scanning the 3x3
    // neighbourhood finds the same smallest j for each i as the full scan.
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto [zi, wi] = pts[i];
        const std::int64_t cx = cell_index(wi.real(), tol);
        const std::int64_t cy = cell_index(wi.imag(), tol);
        std::size_t best = std::numeric_limits<std::size_t>::max();
        for (std::int64_t dx = -1; dx <= 1; ++dx) {
            for (std::int64_t dy = -1; dy <= 1; ++dy) {
                const auto it = cells.find({cx + dx, cy + dy});
                if (it == cells.end()) continue;
                for (std::size_t j : it->second) {
                    if (j <= i || j >= best) continue;
                    const auto [zj, wj] = pts[j];
                    if (std::abs(wi - wj) < tol && std::abs(zi - zj) > 10.0 * tol) best = j;
                }
            }
        }
        if (best != std::numeric_limits<std::size_t>::max())
            return Collision{i, best, zi, pts[best].first, wi, pts[best].second};
    }
    return std::nullopt;
}

int winding_number(std::span<const Complex> curve, Complex target, double clearance) {
    const std::size_t n = curve.size();
    if (n < 3) throw Error(ErrorKind::InvalidArgument, "winding number needs at least 3 curve points");
    for (std::size_t i = 0; i < n; ++i) {
        if (segment_distance(curve[i], curve[(i + 1) % n], target) <= clearance)
            throw Error(ErrorKind::Inconclusive,
                        "target " + format_complex(target) + " lies within " + std::to_string(clearance) +
                            " of the curve",
                        target);
    }
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double step = std::arg((curve[(i + 1) % n] - target) / (curve[i] - target));
        if (std::fabs(step) >= kMaxArgumentStep)
            throw Error(ErrorKind::UndersampledPath,
                        "curve too coarse around target " + format_complex(target) + "; refine the sampling",
                        target);
        total += step;
    }
    return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

std::vector<int> argument_principle_windings(std::span<const Complex> curve, std::span<const Complex> targets,
                                             double clearance) {
    if (curve.size() < 3) throw Error(ErrorKind::InvalidArgument, "curve needs at least 3 points");
    if (std::abs(curve.front() - curve.back()) > kClosureTolerance)
        throw Error(ErrorKind::InvalidArgument, "curve is not closed (first and last points differ by more than 1e-10)");
    std::vector<int> out;
    out.reserve(targets.size());
    for (const Complex t : targets) out.push_back(winding_number(curve, t, clearance));
    return out;
}

bool argument_principle_check(std::span<const Complex> curve, std::span<const Complex> targets,
                              double clearance) {
    const auto w = argument_principle_windings(curve, targets, clearance);
    return std::all_of(w.begin(), w.end(), [](int v) { return v == 1; });
}

std::vector<Complex> sample_closed_curve(const std::function<Complex(double)>& curve,
                                         std::span<const Complex> targets, std::size_t initial,
                                         std::size_t max_points) {
    std::size_t n = std::max<std::size_t>(initial, 8);
    for (;;) {
        std::vector<Complex> pts(n + 1);
        for (std::size_t i = 0; i < n; ++i) pts[i] = curve(2.0 * std::numbers::pi * static_cast<double>(i) / n);
        pts[n] = pts[0];

        bool fine = true;
        for (const Complex t : targets) {
            for (std::size_t i = 0; i < n && fine; ++i) {
                const Complex a = pts[i] - t;
                const Complex b = pts[i + 1] - t;
                // a target on a vertex is left for winding_number to report
                if (a == Complex{0.0, 0.0} || b == Complex{0.0, 0.0}) continue;
                if (std::fabs(std::arg(b / a)) >= std::numbers::pi / 2.0) fine = false;
            }
            if (!fine) break;
        }
        if (fine || 2 * n > max_points) return pts;
        n *= 2;
    }
}

}  // namespace ulab
