#include "doctest.h"

#include <numbers>

#include "oracle.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace ulab;

namespace {

SampleCloud map_cloud(const std::function<Complex(Complex)>& F, std::size_t nr, std::size_t na, double r_max) {
    SampleCloud cloud;
    cloud.radius = r_max;
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 1; j <= nr; ++j) {
            const Complex z = std::polar(r_max * j / nr, 2.0 * std::numbers::pi * i / na);
            cloud.points.emplace_back(z, F(z));
        }
    return cloud;
}

std::vector<Complex> circle_image(const std::function<Complex(Complex)>& F, double r, std::size_t n) {
    std::vector<Complex> out(n + 1);
    for (std::size_t i = 0; i < n; ++i) out[i] = F(std::polar(r, 2.0 * std::numbers::pi * i / n));
    out[n] = out[0];
    return out;
}

std::optional<std::pair<std::size_t, std::size_t>> brute_force_scan(const SampleCloud& c, double tol) {
    for (std::size_t i = 0; i < c.points.size(); ++i)
        for (std::size_t j = i + 1; j < c.points.size(); ++j)
            if (std::abs(c.points[i].second - c.points[j].second) < tol &&
                std::abs(c.points[i].first - c.points[j].first) > 10.0 * tol)
                return std::pair{i, j};
    return std::nullopt;
}

}  // namespace

TEST_CASE("injectivity scan fixtures") {
    const auto square = map_cloud([](Complex z) { return z * z; }, 10, 16, 0.9);
    const auto hit = injectivity_scan(square, default_collision_tolerance(square));
    REQUIRE(hit);
    CHECK(std::abs(hit->z1 + hit->z2) < 1e-12);  // (z, -z)
    CHECK(hit->i < hit->j);

    const auto identity = map_cloud([](Complex z) { return z; }, 10, 16, 0.9);
    CHECK_FALSE(injectivity_scan(identity, default_collision_tolerance(identity)));
    CHECK_THROWS_AS(injectivity_scan(identity, 0.0), Error);
    CHECK(default_collision_tolerance(identity) == doctest::Approx(1.8e-6));
}

TEST_CASE("hashed scan matches the exhaustive scan") {
    ulab_test::Sampler rng(61);
    for (int trial = 0; trial < 30; ++trial) {
        SampleCloud cloud;
        cloud.radius = 0.9;
        for (int i = 0; i < 300; ++i) {
            const Complex z = rng.in_disk(0.9);
            // coarse rounding plants exact and near collisions between distinct points
            const double scale = trial % 3 == 0 ? 4.0 : 40.0;
            const Complex w{std::round(z.real() * scale) / scale, std::round(z.imag() * scale) / scale};
            cloud.points.emplace_back(z, w + (trial % 2 == 0 ? rng.in_disk(1e-3) : Complex{}));
        }
        for (double tol : {1e-6, 1e-3, 2e-3, 0.01}) {
            const auto fast = injectivity_scan(cloud, tol);
            const auto slow = brute_force_scan(cloud, tol);
            REQUIRE(fast.has_value() == slow.has_value());
            if (fast) {
                CHECK(fast->i == slow->first);
                CHECK(fast->j == slow->second);
            }
        }
    }
}

TEST_CASE("winding numbers") {
    const auto id = circle_image([](Complex z) { return z; }, 0.5, 64);
    const std::vector<Complex> t1 = {0.2};
    CHECK(argument_principle_check(id, t1));
    CHECK(argument_principle_windings(id, t1) == std::vector<int>{1});

    const auto sq = circle_image([](Complex z) { return z * z; }, 0.5, 64);
    const std::vector<Complex> t2 = {0.1};
    CHECK_FALSE(argument_principle_check(sq, t2));
    CHECK(argument_principle_windings(sq, t2) == std::vector<int>{2});

    const std::vector<Complex> outside = {Complex{2.0, 0.0}};
    CHECK(argument_principle_windings(id, outside) == std::vector<int>{0});
}

TEST_CASE("winding numbers agree with the crossing rule") {
    ulab_test::Sampler rng(62);
    for (int trial = 0; trial < 20; ++trial) {
        const int k1 = 1 + trial % 3;
        const double c = rng.uniform(0.1, 0.6);
        auto F = [&](Complex z) { return std::pow(z, k1) + c * std::pow(z, k1 + 2) + 0.3 * std::conj(z); };
        const auto curve = circle_image(F, 1.0, 4096);
        for (int i = 0; i < 20; ++i) {
            const Complex t = rng.in_disk(1.5);
            try {
                CHECK(winding_number(curve, t) == ulab_test::crossing_winding(curve, t));
            } catch (const Error& e) {
                CHECK(e.kind() == ErrorKind::Inconclusive);
            }
        }
    }
}

TEST_CASE("argument principle error paths") {
    const auto id = circle_image([](Complex z) { return z; }, 0.5, 64);
    const std::vector<Complex> on_curve = {Complex{0.5, 0.0}};
    try {
        (void)argument_principle_check(id, on_curve);
        FAIL("expected inconclusive");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Inconclusive);
    }

    std::vector<Complex> open = id;
    open.back() += 1e-6;
    const std::vector<Complex> t = {0.1};
    CHECK_THROWS_AS(argument_principle_check(open, t), Error);

    // four points around a target near a vertex: the increment is ambiguous
    const std::vector<Complex> coarse = {{1.0, 0.0}, {-1.0, 0.01}, {-1.0, -0.01}, {1.0, 0.0}};
    try {
        (void)winding_number(coarse, {0.0, 0.0});
        FAIL("expected undersampled");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::UndersampledPath);
    }
}

TEST_CASE("adaptive curve sampling refines around nearby targets") {
    auto F = [](double theta) { return std::polar(1.0, theta); };
    const std::vector<Complex> far = {Complex{0.0, 0.0}};
    const auto coarse = sample_closed_curve(F, far, 16);
    CHECK(coarse.size() == 17);
    CHECK(coarse.front() == coarse.back());

    // 1e-3 inside the circle and away from the vertices of the 2^k samplings tried
    const std::vector<Complex> near = {std::polar(0.999, 0.0071)};
    const auto fine = sample_closed_curve(F, near, 16);
    CHECK(fine.size() > 1000);
    CHECK(winding_number(fine, near[0]) == 1);
    CHECK(ulab_test::crossing_winding(fine, near[0]) == 1);
}

TEST_CASE("operator cloud and curve for the example configuration") {
    const auto fns = example31_functions();
    ParameterSet p;
    p.alpha = 0.5;
    p.beta = 0.5;
    const auto cloud = operator_cloud(p, fns, {}, 60, 60, 0.99);
    CHECK(cloud.points.size() == 3600);
    CHECK(cloud.skipped == 0);
    CHECK_FALSE(injectivity_scan(cloud, default_collision_tolerance(cloud)));
    for (std::size_t i = 0; i < cloud.points.size(); i += 97)
        CHECK(std::abs(cloud.points[i].second - operator_eval(cloud.points[i].first, p, fns).value) < 1e-12);

    ulab_test::Sampler rng(63);
    std::vector<Complex> targets;
    for (int i = 0; i < 50; ++i) targets.push_back(operator_eval(rng.in_disk(0.85), p, fns).value);
    const auto curve = sample_closed_curve([&](double th) { return operator_eval(std::polar(0.9, th), p, fns).value; },
                                           targets);
    CHECK(argument_principle_check(curve, targets));
}
