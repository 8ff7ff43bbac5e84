// Licensed under the Apache License 2.0 (see LICENSE file).

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tvop {

enum class ProfitKind {
    constant,
    linear,
    quadratic,
    logarithmic,
    quadrant_step,
    table,
};

std::string_view to_string(ProfitKind kind);
std::optional<ProfitKind> parse_profit_kind(std::string_view name);

// Plane quadrants, counter-clockwise from the upper right.
enum class Quadrant { I = 1, II = 2, III = 3, IV = 4 };

// One bin of a piecewise-constant profit table. A bin spans from its own
// start to the start of its successor; the last bin is open-ended.
struct ProfitBin {
    double t_start = 0.0;
    double value = 0.0;

    friend bool operator==(const ProfitBin&, const ProfitBin&) = default;
};

// Time-varying profit f(t) of a single vertex.
//
// The parametric families are scaled by a per-vertex weight w and, where the
// family depends on it, by a horizon h (normally the planning budget):
//
//   constant       f(t) = w
//   linear         f(t) = w t / h
//   quadratic      f(t) = w (-t^2 + t h + h^2) / h^2      (1.25 w peak at h/2)
//   logarithmic    f(t) = w ln(t + 1)
//   quadrant_step  I: 5w before h/2, II: 10w before h/2,
//                  III: 5w after h/2, IV: 10w after h/2, zero otherwise
//   table          value of the bin containing t
class ProfitFunction {
public:
    ProfitFunction() = default;

    static ProfitFunction zero();
    static ProfitFunction constant(double weight);
    static ProfitFunction linear(double weight, double horizon);
    static ProfitFunction quadratic(double weight, double horizon);
    static ProfitFunction logarithmic(double weight);
    static ProfitFunction quadrant_step(double weight, double horizon, Quadrant region);
    static ProfitFunction table(std::vector<ProfitBin> bins);

    ProfitKind kind() const noexcept { return kind_; }
    double weight() const noexcept { return weight_; }
    double horizon() const noexcept { return horizon_; }
    Quadrant region() const noexcept { return region_; }
    const std::vector<ProfitBin>& bins() const noexcept { return bins_; }

    double operator()(double t) const;

    // Tight Lipschitz constant over [0, budget]. Empty for the
    // discontinuous kinds (quadrant_step, table).
    std::optional<double> lipschitz(double budget) const;

    // Largest finite-difference slope over a uniform grid. Approximate; only
    // meant for kinds without a closed form.
    double sampled_slope(double budget, int samples) const;

    // Throws Error(validation) when parameters are malformed or the function
    // can go negative on [0, budget].
    void validate(double budget) const;

    friend bool operator==(const ProfitFunction&, const ProfitFunction&) = default;

private:
    ProfitKind kind_ = ProfitKind::constant;
    double weight_ = 0.0;
    double horizon_ = 1.0;
    Quadrant region_ = Quadrant::I;
    std::vector<ProfitBin> bins_;
};

Quadrant quadrant_of(double x, double y, double center_x = 0.0, double center_y = 0.0);

}  // namespace tvop
