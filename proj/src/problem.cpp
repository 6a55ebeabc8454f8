#include "problem.hpp"

#include <cmath>

namespace ulab {

const char* to_string(Variant v) noexcept {
    switch (v) {
    case Variant::thm31: return "thm31";
    case Variant::thm32: return "thm32";
    case Variant::cor31: return "cor31";
    case Variant::cor32: return "cor32";
    case Variant::thm41: return "thm41";
    }
    return "?";
}

std::optional<Variant> parse_variant(std::string_view name) noexcept {
    for (Variant v : {Variant::thm31, Variant::thm32, Variant::cor31, Variant::cor32, Variant::thm41})
        if (name == to_string(v)) return v;
    return std::nullopt;
}

void ParameterSet::validate() const {
    auto finite = [](Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); };
    if (!finite(alpha)) throw Error(ErrorKind::Config, "params.alpha: must be finite");
    if (!finite(beta)) throw Error(ErrorKind::Config, "params.beta: must be finite");
    if (!finite(gamma)) throw Error(ErrorKind::Config, "params.gamma: must be finite");
    if (gamma == Complex{0.0, 0.0}) throw Error(ErrorKind::Config, "params.gamma: must be nonzero");
    if (!(m >= 0.0) || !std::isfinite(m)) throw Error(ErrorKind::Config, "params.m: must be a finite real >= 0");
    if (!(a > 0.0) || !std::isfinite(a)) throw Error(ErrorKind::Config, "params.a: must be a finite real > 0");
    if (!(k >= 0.0 && k <= 1.0)) throw Error(ErrorKind::Config, "params.k: must be in [0,1)");
}

}  // namespace ulab
