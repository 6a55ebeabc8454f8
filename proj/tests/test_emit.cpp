#include "doctest.h"

#include <bit>
#include <cstring>
#include <numbers>
#include <random>
#include <regex>
#include <sstream>

#include "emit.hpp"
#include "json.hpp"
#include "test_support.hpp"

using namespace ulab;

namespace {

std::string csv(const std::vector<GridRow>& rows) {
    std::ostringstream ss;
    write_grid_csv(ss, rows);
    return ss.str();
}

std::vector<GridRow> polar_rows(const std::function<Complex(Complex)>& F, std::size_t nr, std::size_t na,
                                double r_max) {
    std::vector<GridRow> rows;
    for (std::size_t j = 1; j <= nr; ++j)
        for (std::size_t i = 0; i < na; ++i) {
            const Complex z = std::polar(r_max * j / nr, 2.0 * std::numbers::pi * i / na);
            rows.push_back({z, std::nullopt, F(z), std::nullopt, std::nullopt});
        }
    return rows;
}

std::vector<std::vector<std::pair<double, double>>> svg_curves(const std::string& svg, const std::string& tag) {
    std::vector<std::vector<std::pair<double, double>>> out;
    const std::regex curve("<" + tag + R"( [^>]*points="([^"]*)\")");
    for (auto it = std::sregex_iterator(svg.begin(), svg.end(), curve); it != std::sregex_iterator(); ++it) {
        std::istringstream ss((*it)[1].str());
        std::vector<std::pair<double, double>> pts;
        double x, y;
        char comma;
        while (ss >> x >> comma >> y) pts.emplace_back(x, y);
        out.push_back(pts);
    }
    return out;
}

}  // namespace

TEST_CASE("csv format") {
    CHECK(csv({{{0.5, 0.0}, std::nullopt, {0.5625, 0.0}, std::nullopt, std::nullopt}}) ==
          "re_z,im_z,re_w,im_w\n0.5,0,0.5625,0\n");
    CHECK(csv({}) == "re_z,im_z,re_w,im_w\n");
    CHECK(csv({{{0.5, 0.0}, 0.25, {1.0, 0.0}, 1.0, std::nullopt}}) == "re_z,im_z,t,re_w,im_w,abs_w\n0.5,0,0.25,1,0,1\n");
    CHECK(csv({{{2.0, 0.0}, std::nullopt, {4.0, 0.0}, std::nullopt, 0.125}}) ==
          "re_z,im_z,re_w,im_w,abs_mu\n2,0,4,0,0.125\n");
    CHECK(csv({{{0.1, 0.0}, std::nullopt, {0.0, 0.0}, std::nullopt, std::nullopt}}).find("0.10000000000000001") !=
          std::string::npos);

    std::vector<GridRow> mixed = {{{0.5, 0.0}, 0.1, {1.0, 0.0}, std::nullopt, std::nullopt},
                                  {{0.5, 0.0}, std::nullopt, {1.0, 0.0}, std::nullopt, std::nullopt}};
    CHECK_THROWS_AS(csv(mixed), Error);
}

TEST_CASE("csv values re-parse bit-identically") {
    std::mt19937_64 rng(71);
    std::vector<GridRow> rows;
    auto any_double = [&] {
        double x;
        do {
            const std::uint64_t bits = rng();
            std::memcpy(&x, &bits, sizeof x);
        } while (!std::isfinite(x));
        return x;
    };
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int i = 0; i < 2000; ++i) {
        const bool raw = i % 2 == 0;
        auto v = [&] { return raw ? any_double() : u(rng); };
        rows.push_back({{v(), v()}, v(), {v(), v()}, v(), std::nullopt});
    }
    rows.push_back({{-0.0, 5e-324}, 0.0, {1.7976931348623157e308, -2.2250738585072014e-308}, 0.0, std::nullopt});
    std::istringstream in(csv(rows));
    const auto back = read_grid_csv(in);
    REQUIRE(back.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(std::bit_cast<std::uint64_t>(back[i].z.real()) == std::bit_cast<std::uint64_t>(rows[i].z.real()));
        CHECK(std::bit_cast<std::uint64_t>(back[i].z.imag()) == std::bit_cast<std::uint64_t>(rows[i].z.imag()));
        CHECK(std::bit_cast<std::uint64_t>(*back[i].t) == std::bit_cast<std::uint64_t>(*rows[i].t));
        CHECK(std::bit_cast<std::uint64_t>(back[i].w.real()) == std::bit_cast<std::uint64_t>(rows[i].w.real()));
        CHECK(std::bit_cast<std::uint64_t>(back[i].w.imag()) == std::bit_cast<std::uint64_t>(rows[i].w.imag()));
        CHECK(std::bit_cast<std::uint64_t>(*back[i].abs_w) == std::bit_cast<std::uint64_t>(*rows[i].abs_w));
    }
}

TEST_CASE("csv reader errors") {
    std::istringstream bad_header("x,y\n");
    CHECK_THROWS_AS(read_grid_csv(bad_header), Error);
    std::istringstream short_row("re_z,im_z,re_w,im_w\n1,2,3\n");
    CHECK_THROWS_AS(read_grid_csv(short_row), Error);
    std::istringstream junk("re_z,im_z,re_w,im_w\n1,2,3,x\n");
    CHECK_THROWS_AS(read_grid_csv(junk), Error);
    CHECK_THROWS_AS(emit_grid_csv({}, "/nonexistent/dir/out.csv"), Error);
}

TEST_CASE("report and constants JSON") {
    CriterionReport r;
    r.variant = Variant::thm32;
    r.passed = true;
    r.sup_value = 0.25;
    r.bound = 1.0;
    r.margin = 0.75;
    r.witness = {0.5, -0.25};
    r.grid = DiskGrid::boundary_graded(3, 8, 2);
    r.samples_evaluated = 30;
    const auto j = nlohmann::json::parse(report_json(r));
    CHECK(j["variant"] == "thm32");
    CHECK(j["passed"] == true);
    CHECK(j["sup"] == 0.25);
    CHECK(j["witness"][1] == -0.25);
    CHECK(j["grid"]["radii"] == 3);
    CHECK(j["grid"]["samples_evaluated"] == 30);
    CHECK(j["note"] == kPassNote);

    const auto c = nlohmann::json::parse(constants_json(extension_constants(0.5, 1.0)));
    CHECK(c["l"] == 0.5);
    CHECK(c["L2"].is_null());
}

TEST_CASE("svg of the identity grid is concentric circles and rays") {
    const auto rows = polar_rows([](Complex z) { return z; }, 5, 24, 1.0);
    const auto svg = render_svg(rows);
    const auto rings = svg_curves(svg, "polygon");
    const auto rays = svg_curves(svg, "polyline");
    REQUIRE(rings.size() == 5);
    REQUIRE(rays.size() == 24);
    for (std::size_t j = 0; j < rings.size(); ++j) {
        REQUIRE(rings[j].size() == 24);
        for (const auto& [x, y] : rings[j]) CHECK(std::hypot(x - 400.0, y - 400.0) == doctest::Approx(rings[j][0].first - 400.0).epsilon(1e-6));
    }
    for (const auto& ray : rays) {
        REQUIRE(ray.size() == 5);
        const double dir = std::atan2(ray.back().second - 400.0, ray.back().first - 400.0);
        for (const auto& [x, y] : ray) CHECK(std::abs(std::atan2(y - 400.0, x - 400.0) - dir) < 1e-5);
    }
}

TEST_CASE("svg is deterministic and rejects ragged grids") {
    const auto rows = polar_rows([](Complex z) { return z + z * z / 4.0; }, 8, 32, 0.95);
    const auto once = render_svg(rows);
    CHECK(render_svg(rows) == once);
    std::istringstream in(csv(rows));
    CHECK(render_svg(read_grid_csv(in)) == once);

    auto ragged = rows;
    ragged.pop_back();
    CHECK_THROWS_AS(render_svg(ragged), Error);
    CHECK_THROWS_AS(render_svg({}), Error);
}
