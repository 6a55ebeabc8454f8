#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "criterion.hpp"
#include "extension.hpp"
#include "oracle.hpp"

namespace ulab {

/// One CSV record. Optional columns must be present in every row or in none.
struct GridRow {
    Complex z{0.0, 0.0};
    std::optional<double> t;
    Complex w{0.0, 0.0};
    std::optional<double> abs_w;
    std::optional<double> abs_mu;
};

inline constexpr const char* kPassNote = "PASS means no violation was found by sampling; it is not a proof";

std::string report_json(const CriterionReport& report);
/// Undefined roots (-infinity) are written as null.
std::string constants_json(const ExtensionConstants& c);
std::string collision_json(const std::optional<Collision>& hit, const SampleCloud& cloud, double tol,
                           std::optional<bool> argument_principle);

/// Header re_z,im_z[,t],re_w,im_w[,abs_w][,abs_mu]; fields printed with
/// 17 significant digits; every line newline-terminated.
void write_grid_csv(std::ostream& out, const std::vector<GridRow>& rows);
void emit_grid_csv(const std::vector<GridRow>& rows, const std::filesystem::path& path);
std::vector<GridRow> read_grid_csv(std::istream& in);
std::vector<GridRow> load_grid_csv(const std::filesystem::path& path);

/// Image mesh of a complete polar grid: one closed polyline per radius and one
/// open polyline per angle, drawn through the w values. Throws InvalidArgument
/// for a ragged grid.
std::string render_svg(const std::vector<GridRow>& rows);
void emit_svg(const std::vector<GridRow>& rows, const std::filesystem::path& path);

}  // namespace ulab
