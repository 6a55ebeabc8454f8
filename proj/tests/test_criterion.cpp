#include "doctest.h"

#include <numbers>

#include "criterion.hpp"
#include "operator.hpp"
#include "test_support.hpp"

using namespace ulab;

namespace {

Functions identity_functions() {
    return {SeriesFunction{}, SeriesFunction{}, SeriesFunction{}};
}

ParameterSet params(Complex alpha, Complex beta, Complex gamma, double m = 1.0) {
    ParameterSet p;
    p.alpha = alpha;
    p.beta = beta;
    p.gamma = gamma;
    p.m = m;
    return p;
}

// Closed forms for the example functions: z f''/f' = z/(2+z) and
// z g'/g - z phi'/phi = z/(2+z), so the bracket is (alpha+beta) z/(2+z).
double example_thm31(Complex z, const ParameterSet& p) {
    const double r = std::abs(z);
    const Complex factor = (1.0 - std::pow(r, (p.m + 1.0) * p.gamma)) / p.gamma;
    return std::abs(factor * (p.alpha + p.beta) * z / (2.0 + z) - (p.m - 1.0) / 2.0);
}

double example_thm32(Complex z, const ParameterSet& p) {
    const double r = std::abs(z);
    const double re = p.gamma.real();
    return (1.0 - std::pow(r, (p.m + 1.0) * re)) / re * std::abs((p.alpha + p.beta) * z / (2.0 + z));
}

}  // namespace

TEST_CASE("criterion_value trivial cases") {
    const auto id = identity_functions();
    ulab_test::Sampler rng(1);
    for (int i = 0; i < 20; ++i) {
        const Complex z = rng.in_disk(0.99);
        CHECK(criterion_value(Variant::thm31, z, params(0.7, 0.3, {2.0, 1.0}), id) == 0.0);
        CHECK(std::abs(criterion_value(Variant::thm31, z, params(0.7, 0.3, {2.0, 1.0}, 3.0), id) - 1.0) < 1e-15);
    }
    CHECK(criterion_bound(Variant::thm31, params(1.0, 0.0, 1.0, 3.0)) == 2.0);
}

TEST_CASE("criterion_value against closed forms") {
    const auto fns = example31_functions();
    ulab_test::Sampler rng(2);
    for (int i = 0; i < 200; ++i) {
        const Complex z = rng.in_disk(0.999);
        const Complex gamma{rng.uniform(0.1, 3.0), rng.uniform(-2.0, 2.0)};
        const double m = rng.uniform(1.0, 4.0);
        const auto p = params({rng.uniform(-1, 1), rng.uniform(-1, 1)}, {rng.uniform(-1, 1), rng.uniform(-1, 1)},
                              gamma, m);
        CHECK(std::abs(criterion_value(Variant::thm31, z, p, fns) - example_thm31(z, p)) < 1e-12);
        CHECK(std::abs(criterion_value(Variant::thm32, z, p, fns) - example_thm32(z, p)) < 1e-12);
    }

    // Koebe: z f''/f' = (4z + 2z^2)/(1 - z^2); at z = 0.9 and gamma = 1 the value is 5.22
    const Functions koebe{catalog_build("koebe", {{"degree", 4096}}), SeriesFunction{}, SeriesFunction{}};
    CHECK(std::abs(criterion_value(Variant::cor32, {0.9, 0.0}, params(1.0, 0.0, 1.0), koebe) - 5.22) < 1e-12);
}

TEST_CASE("cor31 matches thm31 with alpha = beta, g = identity, phi = f") {
    const auto f = catalog_build("exponential", {{"lambda", 0.6}});
    const Functions as_cor{f, SeriesFunction{}, SeriesFunction{}};
    const Functions as_thm{f, SeriesFunction{}, f};
    ulab_test::Sampler rng(3);
    for (int i = 0; i < 50; ++i) {
        const Complex z = rng.in_disk(0.95);
        const Complex alpha{rng.uniform(-1, 1), rng.uniform(-1, 1)};
        const auto p = params(alpha, alpha, {1.3, -0.4}, 2.0);
        CHECK(std::abs(criterion_value(Variant::cor31, z, p, as_cor) - criterion_value(Variant::thm31, z, p, as_thm)) <
              1e-12);
    }
}

TEST_CASE("Pascu-type bound on the radial factor") {
    ulab_test::Sampler rng(4);
    for (int i = 0; i < 500; ++i) {
        const double r = rng.uniform(0.0, 1.0);
        const Complex gamma{rng.uniform(0.01, 5.0), rng.uniform(-5.0, 5.0)};
        const double m = rng.uniform(0.0, 5.0);
        const double lhs = std::abs(radial_factor(r, gamma, m));
        const double rhs = radial_factor(r, gamma.real(), m).real();
        CHECK(lhs <= rhs + 1e-12);
    }
}

TEST_CASE("thm32 at a sample implies thm31 at the same sample") {
    const std::vector<Functions> configs = {
        example31_functions(),
        {catalog_build("exponential", {{"lambda", 0.4}}), catalog_build("quadratic", {{"c", -0.3}}),
         catalog_build("quadratic", {{"c", 0.2}})},
    };
    ulab_test::Sampler rng(5);
    int implied = 0;
    for (const auto& fns : configs) {
        for (int i = 0; i < 500; ++i) {
            const Complex z = rng.in_disk(0.999);
            const auto p = params({rng.uniform(-1, 1), rng.uniform(-1, 1)}, {rng.uniform(-1, 1), rng.uniform(-1, 1)},
                                  {rng.uniform(0.1, 3.0), rng.uniform(-3.0, 3.0)}, rng.uniform(1.0, 4.0));
            if (criterion_value(Variant::thm32, z, p, fns) <= 1.0) {
                ++implied;
                CHECK(criterion_value(Variant::thm31, z, p, fns) <= (p.m + 1.0) / 2.0 + 1e-12);
            }
        }
    }
    CHECK(implied > 100);
}

TEST_CASE("thm41 shares the thm31 value and scales the bound by k") {
    const auto fns = example31_functions();
    auto p = params(0.5, 0.5, {1.0, 0.3}, 2.0);
    p.k = 0.4;
    ulab_test::Sampler rng(6);
    for (int i = 0; i < 50; ++i) {
        const Complex z = rng.in_disk(0.99);
        CHECK(criterion_value(Variant::thm41, z, p, fns) == criterion_value(Variant::thm31, z, p, fns));
    }
    CHECK(criterion_bound(Variant::thm41, p) == doctest::Approx(0.6).epsilon(1e-15));
}

TEST_CASE("enlarging the grid never lowers the supremum") {
    const auto fns = example31_functions();
    const auto p = params(0.5, 0.5, 1.0);
    DiskGrid coarse;
    coarse.radii = {0.5, 0.75, 0.875};
    coarse.angles_per_radius = 16;
    coarse.refine_steps = 0;
    DiskGrid fine = coarse;
    fine.radii = {0.25, 0.5, 0.75, 0.875, 0.9375};
    fine.angles_per_radius = 64;  // a multiple of 16 contains every coarse angle
    const auto a = criterion_check(Variant::thm32, p, fns, coarse);
    const auto b = criterion_check(Variant::thm32, p, fns, fine);
    CHECK(b.sup_value >= a.sup_value);
    CHECK(a.samples_evaluated == 48);

    // refinement starts from the best grid sample, so it can only raise the value
    DiskGrid refined = coarse;
    refined.refine_steps = 20;
    CHECK(criterion_check(Variant::thm32, p, fns, refined).sup_value >= a.sup_value);
}

TEST_CASE("example configuration passes thm32 on the default grid") {
    const auto report = criterion_check(Variant::thm32, params(0.5, 0.5, 1.0), example31_functions(),
                                        DiskGrid::boundary_graded());
    CHECK(report.passed);
    CHECK(report.sup_value < 1.0);
    CHECK(report.bound == 1.0);
    CHECK(report.margin == doctest::Approx(1.0 - report.sup_value));
    CHECK(report.warnings.empty());
    // max over r of r(1 - r^2)/(2 - r), attained on the negative axis where |2+z| is smallest
    double analytic = 0.0;
    for (int i = 1; i < 200000; ++i) {
        const double r = i / 200000.0;
        analytic = std::max(analytic, r * (1.0 - r * r) / (2.0 - r));
    }
    CHECK(std::abs(report.sup_value - analytic) < 1e-9);
    // the maximum is flat, so the witness is only located to about sqrt(1e-16)
    CHECK(std::abs(report.witness.imag()) < 1e-6);
    CHECK(report.witness.real() < 0.0);
}

TEST_CASE("identity passes thm31 with sup 0") {
    const auto report = criterion_check(Variant::thm31, params(1.0, 1.0, {2.0, 1.0}), identity_functions(),
                                        DiskGrid::boundary_graded());
    CHECK(report.passed);
    CHECK(report.sup_value == 0.0);
    CHECK(report.bound == 1.0);
}

TEST_CASE("Koebe fails cor32 with a witness on the positive real axis") {
    const Functions koebe{catalog_build("koebe", {{"degree", 65536}}), SeriesFunction{}, SeriesFunction{}};
    const auto grid = DiskGrid::boundary_graded();
    const auto report = criterion_check(Variant::cor32, params(1.0, 0.0, 1.0), koebe, grid);
    CHECK_FALSE(report.passed);
    CHECK(report.sup_value > 5.9);
    CHECK(report.sup_value < 6.0);
    CHECK(std::abs(report.witness.imag()) < 1e-12);
    CHECK(report.witness.real() == doctest::Approx(grid.max_radius()).epsilon(1e-12));
    CHECK(report.warnings.empty());

    // the default degree leaves a visible tail at the outer radius
    const Functions short_koebe{catalog_build("koebe", {}), SeriesFunction{}, SeriesFunction{}};
    CHECK_FALSE(criterion_check(Variant::cor32, params(1.0, 0.0, 1.0), short_koebe, grid).warnings.empty());
}

TEST_CASE("hypothesis violations") {
    const auto fns = example31_functions();
    const auto grid = DiskGrid::boundary_graded(6, 64);
    auto expect_hypothesis = [&](Variant v, const ParameterSet& p, const Functions& f) {
        try {
            (void)criterion_check(v, p, f, grid);
            FAIL("expected a hypothesis violation");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::Hypothesis);
        }
    };
    expect_hypothesis(Variant::thm32, params(0.5, 0.5, {-1.0, 1.0}), fns);
    expect_hypothesis(Variant::cor32, params(0.5, 0.5, {0.0, 1.0}), fns);
    expect_hypothesis(Variant::thm32, params(0.5, 0.5, 1.0, 0.5), fns);
    expect_hypothesis(Variant::thm41, params(0.5, 0.5, 1.0), fns);  // k defaults to 1
    // g(z) = z(1 - 2z) vanishes at 1/2
    expect_hypothesis(Variant::thm31, params(0.5, 0.5, 1.0),
                      {fns.f, SeriesFunction({1.0, -2.0}), SeriesFunction{}});

    // thm31 accepts m < 1 and any nonzero gamma
    CHECK_NOTHROW((void)criterion_check(Variant::thm31, params(0.5, 0.5, {-1.0, 1.0}, 0.5), fns, grid));
}

TEST_CASE("vanishing f' is reported as a failure at its witness") {
    // f(z) = z - z^2, so f'(z) = 1 - 2z vanishes on the grid at z = 1/2
    const Functions fns{SeriesFunction({1.0, -1.0}), SeriesFunction{}, SeriesFunction{}};
    DiskGrid grid;
    grid.radii = {0.25, 0.5, 0.75};
    grid.angles_per_radius = 8;
    const auto report = criterion_check(Variant::thm31, params(1.0, 0.0, 1.0), fns, grid);
    CHECK_FALSE(report.passed);
    CHECK(std::isinf(report.sup_value));
    CHECK(std::abs(report.witness - 0.5) < 1e-15);
    CHECK_FALSE(report.warnings.empty());
}
