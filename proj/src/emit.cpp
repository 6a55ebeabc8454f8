#include "emit.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "json.hpp"

namespace ulab {

using nlohmann::json;

namespace {

json pair_json(Complex z) { return json::array({z.real(), z.imag()}); }

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

std::string number17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

struct Columns {
    bool t = false, abs_w = false, abs_mu = false;
    bool operator==(const Columns&) const = default;
};

Columns columns_of(const GridRow& r) { return {r.t.has_value(), r.abs_w.has_value(), r.abs_mu.has_value()}; }

std::vector<std::string> header_of(Columns c) {
    std::vector<std::string> h = {"re_z", "im_z"};
    if (c.t) h.emplace_back("t");
    h.insert(h.end(), {"re_w", "im_w"});
    if (c.abs_w) h.emplace_back("abs_w");
    if (c.abs_mu) h.emplace_back("abs_mu");
    return h;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double parse_field(const std::string& s, std::size_t line_no) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw Error(ErrorKind::Io, "csv line " + std::to_string(line_no) + ": bad number '" + s + "'");
    return v;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Io, "cannot write '" + path.string() + "'");
    return out;
}

// Keys for grouping radii and angles that were produced by the same formula
// but may differ in the last bits after a CSV round trip.
long long bucket(double x) { return std::llround(x * 1e9); }

}  // namespace

std::string report_json(const CriterionReport& r) {
    json j;
    j["variant"] = to_string(r.variant);
    j["passed"] = r.passed;
    j["sup"] = finite_or_null(r.sup_value);
    j["bound"] = r.bound;
    j["witness"] = pair_json(r.witness);
    j["margin"] = finite_or_null(r.margin);
    j["grid"] = {{"radii", r.grid.radii.size()},
                 {"angles_per_radius", r.grid.angles_per_radius},
                 {"refine_steps", r.grid.refine_steps},
                 {"samples_evaluated", r.samples_evaluated}};
    j["warnings"] = r.warnings;
    j["note"] = kPassNote;
    return j.dump(2) + "\n";
}

std::string constants_json(const ExtensionConstants& c) {
    json j;
    j["k"] = c.k;
    j["a"] = c.a;
    j["L1"] = finite_or_null(c.L1);
    j["L2"] = finite_or_null(c.L2);
    j["curlyL1"] = finite_or_null(c.curlyL1);
    j["curlyL2"] = finite_or_null(c.curlyL2);
    j["l"] = c.l;
    return j.dump(2) + "\n";
}

std::string collision_json(const std::optional<Collision>& hit, const SampleCloud& cloud, double tol,
                           std::optional<bool> argument_principle) {
    json j;
    j["samples"] = cloud.points.size();
    j["skipped"] = cloud.skipped;
    j["radius"] = cloud.radius;
    j["tolerance"] = tol;
    j["collision"] = hit.has_value();
    if (hit) {
        j["z1"] = pair_json(hit->z1);
        j["z2"] = pair_json(hit->z2);
        j["w1"] = pair_json(hit->w1);
        j["w2"] = pair_json(hit->w2);
    }
    j["argument_principle"] = argument_principle ? json(*argument_principle) : json(nullptr);
    return j.dump(2) + "\n";
}

void write_grid_csv(std::ostream& out, const std::vector<GridRow>& rows) {
    const Columns cols = rows.empty() ? Columns{} : columns_of(rows.front());
    const auto header = header_of(cols);
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << '\n';
    for (std::size_t n = 0; n < rows.size(); ++n) {
        const auto& r = rows[n];
        if (!(columns_of(r) == cols))
            throw Error(ErrorKind::InvalidArgument, "csv row " + std::to_string(n) + " has different columns");
        out << number17(r.z.real()) << ',' << number17(r.z.imag());
        if (r.t) out << ',' << number17(*r.t);
        out << ',' << number17(r.w.real()) << ',' << number17(r.w.imag());
        if (r.abs_w) out << ',' << number17(*r.abs_w);
        if (r.abs_mu) out << ',' << number17(*r.abs_mu);
        out << '\n';
    }
}

void emit_grid_csv(const std::vector<GridRow>& rows, const std::filesystem::path& path) {
    std::ostringstream ss;
    write_grid_csv(ss, rows);
    auto out = open_out(path);
    out << ss.str();
    if (!out.flush()) throw Error(ErrorKind::Io, "write failed for '" + path.string() + "'");
}

std::vector<GridRow> read_grid_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw Error(ErrorKind::Io, "csv: missing header");
    const auto header = split(line);
    Columns cols;
    cols.t = std::find(header.begin(), header.end(), "t") != header.end();
    cols.abs_w = std::find(header.begin(), header.end(), "abs_w") != header.end();
    cols.abs_mu = std::find(header.begin(), header.end(), "abs_mu") != header.end();
    if (header != header_of(cols)) throw Error(ErrorKind::Io, "csv: unrecognised header '" + line + "'");

    std::vector<GridRow> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto f = split(line);
        if (f.size() != header.size())
            throw Error(ErrorKind::Io, "csv line " + std::to_string(line_no) + ": expected " +
                                           std::to_string(header.size()) + " fields");
        std::size_t i = 0;
        auto next = [&] { return parse_field(f[i++], line_no); };
        GridRow r;
        const double zr = next(), zi = next();
        r.z = {zr, zi};
        if (cols.t) r.t = next();
        const double wr = next(), wi = next();
        r.w = {wr, wi};
        if (cols.abs_w) r.abs_w = next();
        if (cols.abs_mu) r.abs_mu = next();
        rows.push_back(r);
    }
    return rows;
}

std::vector<GridRow> load_grid_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "'");
    return read_grid_csv(in);
}

std::string render_svg(const std::vector<GridRow>& rows) {
    if (rows.empty()) throw Error(ErrorKind::InvalidArgument, "svg: no rows");

    // one mesh per t value; z = 0 rows are the common start of every ray
    struct Mesh {
        std::map<long long, std::map<long long, Complex>> by_radius;  // radius -> angle -> w
        std::map<long long, std::map<long long, Complex>> by_angle;   // angle -> radius -> w
        std::optional<Complex> center;
        std::size_t count = 0;
    };
    std::map<long long, Mesh> meshes;
    double lo_x = INFINITY, hi_x = -INFINITY, lo_y = INFINITY, hi_y = -INFINITY;
    for (const auto& r : rows) {
        if (!std::isfinite(r.w.real()) || !std::isfinite(r.w.imag()))
            throw Error(ErrorKind::InvalidArgument, "svg: non-finite value at z = " + format_complex(r.z));
        auto& mesh = meshes[r.t ? bucket(*r.t) : 0];
        lo_x = std::min(lo_x, r.w.real());
        hi_x = std::max(hi_x, r.w.real());
        lo_y = std::min(lo_y, r.w.imag());
        hi_y = std::max(hi_y, r.w.imag());
        if (r.z == Complex{}) {
            mesh.center = r.w;
            continue;
        }
        double theta = std::arg(r.z);
        if (theta < 0.0) theta += 2.0 * std::numbers::pi;
        const auto rk = bucket(std::abs(r.z)), ak = bucket(theta);
        if (!mesh.by_radius[rk].emplace(ak, r.w).second)
            throw Error(ErrorKind::InvalidArgument, "svg: duplicate grid point " + format_complex(r.z));
        mesh.by_angle[ak][rk] = r.w;
        ++mesh.count;
    }
    for (const auto& [_, mesh] : meshes) {
        if (mesh.count == 0) throw Error(ErrorKind::InvalidArgument, "svg: grid has no nonzero points");
        if (mesh.by_radius.size() * mesh.by_angle.size() != mesh.count)
            throw Error(ErrorKind::InvalidArgument, "svg: rows do not form a complete polar grid");
    }

    const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-12});
    const double pad = 0.05 * span;
    const double size = 800.0;
    const double scale = size / (span + 2.0 * pad);
    const double cx = 0.5 * (lo_x + hi_x), cy = 0.5 * (lo_y + hi_y);
    auto pt = [&](Complex w) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.6f,%.6f", size / 2 + (w.real() - cx) * scale,
                      size / 2 - (w.imag() - cy) * scale);
        return std::string(buf);
    };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\"0 0 800 800\">\n"
        << "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n"
        << "<g fill=\"none\" stroke-width=\"0.8\">\n";
    for (const auto& [_, mesh] : meshes) {
        for (const auto& [rk, ring] : mesh.by_radius) {
            svg << "<polygon stroke=\"#1f4e9c\" points=\"";
            bool first = true;
            for (const auto& [ak, w] : ring) {
                svg << (first ? "" : " ") << pt(w);
                first = false;
            }
            svg << "\"/>\n";
        }
        for (const auto& [ak, ray] : mesh.by_angle) {
            svg << "<polyline stroke=\"#b03a2e\" points=\"";
            bool first = true;
            if (mesh.center) {
                svg << pt(*mesh.center);
                first = false;
            }
            for (const auto& [rk, w] : ray) {
                svg << (first ? "" : " ") << pt(w);
                first = false;
            }
            svg << "\"/>\n";
        }
    }
    svg << "</g>\n</svg>\n";
    return svg.str();
}

void emit_svg(const std::vector<GridRow>& rows, const std::filesystem::path& path) {
    const auto text = render_svg(rows);
    auto out = open_out(path);
    out << text;
    if (!out.flush()) throw Error(ErrorKind::Io, "write failed for '" + path.string() + "'");
}

}  // namespace ulab
