#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "grid.hpp"
#include "operator.hpp"

namespace ulab {

/// A function given either by catalog name (plus parameters) or by its
/// coefficient list c_1..c_N.
struct FunctionSpec {
    std::string catalog = "identity";  // empty when coefficients are given
    std::map<std::string, double> params;
    std::vector<Complex> coefficients;
    bool truncated = false;

    [[nodiscard]] SeriesFunction build() const;
    friend bool operator==(const FunctionSpec&, const FunctionSpec&) = default;
};

struct ProblemSpec {
    FunctionSpec f;
    FunctionSpec g;
    FunctionSpec phi;
    ParameterSet params;
    DiskGrid grid = DiskGrid::boundary_graded();
    QuadratureConfig quad;
    Variant variant = Variant::thm31;

    [[nodiscard]] Functions functions() const;
    friend bool operator==(const ProblemSpec&, const ProblemSpec&) = default;
};

/// Parses and validates a JSON problem description. Complex numbers are
/// [re, im] pairs or plain numbers. Unknown keys are rejected. Errors are
/// Config errors whose message starts with the offending field path.
ProblemSpec parse_config(std::string_view text);
ProblemSpec load_config(const std::filesystem::path& path);

/// JSON text that parse_config maps back to an equal spec.
std::string serialize_config(const ProblemSpec& spec);

}  // namespace ulab
