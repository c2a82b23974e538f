#pragma once

// Continuous knowledge/uncertainty evolution. Both dU/dK = aU and dU/dI = bU
// integrate to ln U = slope * v + intercept, where v is the knowledge or
// ignorance level in [0, 1]. A model is pinned by the uncertainty observed at
// v = 0 and at v = 1.

#include <string_view>

namespace kentropy {

enum class VariableKind { knowledge, ignorance };

std::string_view to_string(VariableKind kind) noexcept;
/// Accepts "knowledge" or "ignorance"; throws InputError otherwise.
VariableKind parse_variable_kind(std::string_view text);

class EvolutionModel {
public:
    /// Fits slope = ln(u1 / u0) and intercept = ln(u0).
    ///
    /// Knowledge models need u1 < u0 (more knowledge, less uncertainty);
    /// ignorance models need u1 > u0. Throws DomainError for non-positive or
    /// non-finite U, SignError when the ordering is wrong or u0 == u1.
    static EvolutionModel calibrate(double u_at_var0, double u_at_var1, VariableKind kind);

    double slope() const noexcept { return slope_; }
    double intercept() const noexcept { return intercept_; }
    VariableKind kind() const noexcept { return kind_; }
    double u_min() const noexcept { return u_min_; }
    double u_max() const noexcept { return u_max_; }

    /// exp(slope * v + intercept). Throws DomainError unless v is in [0, 1].
    double predict_uncertainty(double v) const;

    /// (ln u - intercept) / slope. Throws DomainError unless u is in
    /// [u_min, u_max] (with a relative slack of 1e-12 for rounded inputs).
    double infer_variable(double u) const;

private:
    EvolutionModel(double slope, double intercept, VariableKind kind, double u_min, double u_max)
        : slope_(slope), intercept_(intercept), kind_(kind), u_min_(u_min), u_max_(u_max) {}

    double slope_;
    double intercept_;
    VariableKind kind_;
    double u_min_;
    double u_max_;
};

}  // namespace kentropy
