#include "kentropy/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kentropy/errors.hpp"

namespace kentropy {

namespace {
constexpr double kRangeSlack = 1e-12;
}

std::string_view to_string(VariableKind kind) noexcept {
    return kind == VariableKind::knowledge ? "knowledge" : "ignorance";
}

VariableKind parse_variable_kind(std::string_view text) {
    if (text == "knowledge") return VariableKind::knowledge;
    if (text == "ignorance") return VariableKind::ignorance;
    throw InputError("unknown variable kind '" + std::string(text) + "' (expected knowledge or ignorance)");
}

EvolutionModel EvolutionModel::calibrate(double u_at_var0, double u_at_var1, VariableKind kind) {
    if (!std::isfinite(u_at_var0) || !std::isfinite(u_at_var1) || u_at_var0 <= 0.0 || u_at_var1 <= 0.0) {
        throw DomainError("boundary uncertainties must be finite and positive");
    }
    if (kind == VariableKind::knowledge && !(u_at_var1 < u_at_var0)) {
        throw SignError("knowledge model needs U(K=1) < U(K=0)");
    }
    if (kind == VariableKind::ignorance && !(u_at_var1 > u_at_var0)) {
        throw SignError("ignorance model needs U(I=1) > U(I=0)");
    }
    const double slope = std::log(u_at_var1 / u_at_var0);
    const double intercept = std::log(u_at_var0);
    return EvolutionModel(slope, intercept, kind, std::min(u_at_var0, u_at_var1), std::max(u_at_var0, u_at_var1));
}

double EvolutionModel::predict_uncertainty(double v) const {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw DomainError(std::string(to_string(kind_)) + " level " + std::to_string(v) + " outside [0, 1]");
    }
    return std::exp(slope_ * v + intercept_);
}

double EvolutionModel::infer_variable(double u) const {
    if (!(u >= u_min_ * (1.0 - kRangeSlack) && u <= u_max_ * (1.0 + kRangeSlack))) {
        throw DomainError("uncertainty " + std::to_string(u) + " outside [" + std::to_string(u_min_) + ", " +
                          std::to_string(u_max_) + "]");
    }
    return (std::log(u) - intercept_) / slope_;
}

}  // namespace kentropy
