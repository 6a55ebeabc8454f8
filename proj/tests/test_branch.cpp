#include "doctest.h"

#include <numbers>

#include "branch.hpp"
#include "test_support.hpp"

using namespace ulab;
using ulab_test::rel_err;

TEST_CASE("principal_power special values") {
    for (Complex g : {Complex{1.0, 0.0}, Complex{2.0, 1.0}, Complex{-0.3, 5.0}})
        CHECK(principal_power({1.0, 0.0}, g) == Complex{1.0, 0.0});

    const Complex root = principal_power({-1.0, 0.0}, 0.5);
    CHECK(std::abs(root - Complex{0.0, 1.0}) < 1e-15);
    // negative zero imaginary part still sits on the upper side of the cut
    const Complex root_nz = principal_power({-1.0, -0.0}, 0.5);
    CHECK(std::abs(root_nz - Complex{0.0, 1.0}) < 1e-15);

    // 0.25^{2+i} = 0.0625 * e^{i ln 0.25}
    const Complex expected = std::polar(0.0625, std::log(0.25));
    CHECK(rel_err(principal_power({0.25, 0.0}, {2.0, 1.0}), expected) < 1e-15);
}

TEST_CASE("principal_power at zero") {
    CHECK(principal_power({0.0, 0.0}, {0.5, -3.0}) == Complex{0.0, 0.0});
    try {
        (void)principal_power({0.0, 0.0}, {0.0, 1.0});
        FAIL("expected singular power");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SingularPower);
    }
}

TEST_CASE("principal_power identities on random samples") {
    ulab_test::Sampler rng(3);
    for (int i = 0; i < 200; ++i) {
        const Complex w = rng.on_annulus(0.05, 4.0);
        const Complex c{rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)};
        const double r = rng.uniform(0.01, 10.0);

        CHECK(rel_err(principal_power(w, 1.0), w) < 1e-15);
        CHECK(principal_power(w, 0.0) == Complex{1.0, 0.0});
        CHECK(rel_err(principal_power(r * w, c), principal_power(r, c) * principal_power(w, c)) < 1e-12);

        const double modulus = std::pow(std::abs(w), c.real()) * std::exp(-c.imag() * std::arg(w));
        CHECK(std::abs(std::abs(principal_power(w, c)) - modulus) <= 1e-12 * modulus);
    }
}

TEST_CASE("continuous_power_along_path") {
    SUBCASE("constant path") {
        const BranchedPath path{std::vector<Complex>(10, Complex{1.0, 0.0})};
        const auto out = continuous_power_along_path(path, {0.7, -2.0});
        CHECK_FALSE(out.crossing);
        for (const auto& v : out.values) CHECK(v == Complex{1.0, 0.0});
    }
    SUBCASE("loop around the origin") {
        BranchedPath path;
        for (int i = 0; i <= 64; ++i) path.samples.push_back(std::polar(1.0, 2.0 * std::numbers::pi * i / 64));
        const auto out = continuous_power_along_path(path, 0.5);
        CHECK(out.crossing);
        CHECK(out.winding_offset == 1);
        // the continued square root ends on the other sheet
        CHECK(std::abs(out.values.back() + 1.0) < 1e-12);
    }
    SUBCASE("radial path on the positive axis") {
        BranchedPath path;
        for (int i = 0; i <= 80; ++i) path.samples.push_back(0.1 + 0.01 * i);
        const Complex c{1.0, 1.0};
        const auto out = continuous_power_along_path(path, c);
        CHECK_FALSE(out.crossing);
        for (std::size_t i = 0; i < path.samples.size(); ++i)
            CHECK(rel_err(out.values[i], principal_power(path.samples[i], c)) < 1e-14);
    }
    SUBCASE("error paths") {
        CHECK_THROWS_AS(continuous_power_along_path(BranchedPath{{1.0, 0.0, 1.0}}, 0.5), Error);
        try {
            (void)continuous_power_along_path(BranchedPath{{Complex{1.0, 0.0}, Complex{-1.0, 0.01}}}, 0.5);
            FAIL("expected undersampled path");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::UndersampledPath);
        }
    }
}
