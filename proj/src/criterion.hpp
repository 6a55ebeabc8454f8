#pragma once

#include <string>
#include <vector>

#include "grid.hpp"
#include "problem.hpp"

namespace ulab {

inline constexpr double kCriterionStrictness = 1e-12;

struct CriterionReport {
    Variant variant = Variant::thm31;
    bool passed = false;
    double sup_value = 0.0;
    double bound = 0.0;
    Complex witness{0.0, 0.0};
    double margin = 0.0;  // bound - sup_value
    DiskGrid grid;
    std::size_t samples_evaluated = 0;
    std::vector<std::string> warnings;
};

/// (1 - |z|^{(m+1) gamma}) / gamma with |z|^c = exp(c ln|z|).
Complex radial_factor(double r, Complex gamma, double m);

/// Left-hand side of the chosen criterion at z. Variant hypotheses are the
/// caller's responsibility (criterion_check enforces them).
double criterion_value(Variant variant, Complex z, const ParameterSet& p, const Functions& fns);

/// Right-hand side: (m+1)/2 for thm31/cor31, 1 for thm32/cor32, k(m+1)/2 for thm41.
double criterion_bound(Variant variant, const ParameterSet& p);

/// Throws Hypothesis when the variant's hypotheses fail (Re gamma, m range,
/// k < 1 for thm41, nonvanishing of g and phi on the grid).
void check_hypotheses(Variant variant, const ParameterSet& p, const Functions& fns,
                      const DiskGrid& grid);

/// Supremum of criterion_value over the grid followed by a coordinate search
/// in (r, theta) around the best sample. PASS means no violation was found by
/// sampling; it is not a proof.
CriterionReport criterion_check(Variant variant, const ParameterSet& p, const Functions& fns,
                                const DiskGrid& grid);

}  // namespace ulab
