// Licensed under the Apache License 2.0 (see LICENSE file).

#include "tvop/profit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tvop/error.hpp"

namespace tvop {

namespace {

constexpr std::pair<ProfitKind, std::string_view> kKindNames[] = {
    {ProfitKind::constant, "constant"},
    {ProfitKind::linear, "linear"},
    {ProfitKind::quadratic, "quadratic"},
    {ProfitKind::logarithmic, "logarithmic"},
    {ProfitKind::quadrant_step, "quadrant-step"},
    {ProfitKind::table, "table"},
};

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) {
        fail(ErrorCode::validation, std::string("profit parameter '") + what + "' is not finite");
    }
}

}  // namespace

std::string_view to_string(ProfitKind kind) {
    for (const auto& [k, name] : kKindNames) {
        if (k == kind) return name;
    }
    return "unknown";
}

std::optional<ProfitKind> parse_profit_kind(std::string_view name) {
    for (const auto& [k, n] : kKindNames) {
        if (n == name) return k;
    }
    if (name == "quadrant_step" || name == "quadrant") return ProfitKind::quadrant_step;
    if (name == "log") return ProfitKind::logarithmic;
    return std::nullopt;
}

Quadrant quadrant_of(double x, double y, double center_x, double center_y) {
    const bool right = x >= center_x;
    const bool upper = y >= center_y;
    if (upper) return right ? Quadrant::I : Quadrant::II;
    return right ? Quadrant::IV : Quadrant::III;
}

ProfitFunction ProfitFunction::zero() { return constant(0.0); }

ProfitFunction ProfitFunction::constant(double weight) {
    ProfitFunction f;
    f.kind_ = ProfitKind::constant;
    f.weight_ = weight;
    return f;
}

ProfitFunction ProfitFunction::linear(double weight, double horizon) {
    ProfitFunction f;
    f.kind_ = ProfitKind::linear;
    f.weight_ = weight;
    f.horizon_ = horizon;
    return f;
}

ProfitFunction ProfitFunction::quadratic(double weight, double horizon) {
    ProfitFunction f;
    f.kind_ = ProfitKind::quadratic;
    f.weight_ = weight;
    f.horizon_ = horizon;
    return f;
}

ProfitFunction ProfitFunction::logarithmic(double weight) {
    ProfitFunction f;
    f.kind_ = ProfitKind::logarithmic;
    f.weight_ = weight;
    return f;
}

ProfitFunction ProfitFunction::quadrant_step(double weight, double horizon, Quadrant region) {
    ProfitFunction f;
    f.kind_ = ProfitKind::quadrant_step;
    f.weight_ = weight;
    f.horizon_ = horizon;
    f.region_ = region;
    return f;
}

ProfitFunction ProfitFunction::table(std::vector<ProfitBin> bins) {
    ProfitFunction f;
    f.kind_ = ProfitKind::table;
    f.bins_ = std::move(bins);
    return f;
}

double ProfitFunction::operator()(double t) const {
    switch (kind_) {
        case ProfitKind::constant:
            return weight_;
        case ProfitKind::linear:
            return weight_ * t / horizon_;
        case ProfitKind::quadratic:
            return weight_ * (-t * t + t * horizon_ + horizon_ * horizon_) / (horizon_ * horizon_);
        case ProfitKind::logarithmic:
            return weight_ * std::log(t + 1.0);
        case ProfitKind::quadrant_step: {
            const bool first_half = t <= horizon_ / 2.0 + 1e-9 * std::max(1.0, horizon_);
            switch (region_) {
                case Quadrant::I: return first_half ? 5.0 * weight_ : 0.0;
                case Quadrant::II: return first_half ? 10.0 * weight_ : 0.0;
                case Quadrant::III: return first_half ? 0.0 : 5.0 * weight_;
                case Quadrant::IV: return first_half ? 0.0 : 10.0 * weight_;
            }
            return 0.0;
        }
        case ProfitKind::table: {
            // Last bin whose start is <= t, forgiving float noise from t = layer * dt.
            const double probe = t + 1e-9 * std::max(1.0, std::abs(t));
            auto it = std::upper_bound(bins_.begin(), bins_.end(), probe,
                                       [](double v, const ProfitBin& b) { return v < b.t_start; });
            if (it == bins_.begin()) return 0.0;
            return std::prev(it)->value;
        }
    }
    return 0.0;
}

std::optional<double> ProfitFunction::lipschitz(double budget) const {
    switch (kind_) {
        case ProfitKind::constant:
            return 0.0;
        case ProfitKind::linear:
            return std::abs(weight_) / horizon_;
        case ProfitKind::quadratic: {
            // f'(t) = w (h - 2t) / h^2 is monotone, so the extremes sit at the ends.
            const double h2 = horizon_ * horizon_;
            const double at_start = std::abs(weight_ * horizon_ / h2);
            const double at_end = std::abs(weight_ * (horizon_ - 2.0 * budget) / h2);
            return std::max(at_start, at_end);
        }
        case ProfitKind::logarithmic:
            return std::abs(weight_);
        case ProfitKind::quadrant_step:
            if (weight_ == 0.0) return 0.0;
            return std::nullopt;
        case ProfitKind::table: {
            const bool flat = std::all_of(bins_.begin(), bins_.end(), [&](const ProfitBin& b) {
                return b.value == bins_.front().value;
            });
            if (flat) return 0.0;
            return std::nullopt;
        }
    }
    return std::nullopt;
}

double ProfitFunction::sampled_slope(double budget, int samples) const {
    if (samples < 1 || budget <= 0.0) return 0.0;
    const double h = budget / samples;
    double best = 0.0;
    double prev = (*this)(0.0);
    for (int k = 1; k <= samples; ++k) {
        const double cur = (*this)(k * h);
        best = std::max(best, std::abs(cur - prev) / h);
        prev = cur;
    }
    return best;
}

void ProfitFunction::validate(double budget) const {
    require_finite(weight_, "weight");
    require_finite(horizon_, "horizon");
    if (weight_ < 0.0) fail(ErrorCode::validation, "profit weight must be non-negative");
    switch (kind_) {
        case ProfitKind::linear:
        case ProfitKind::quadratic:
        case ProfitKind::quadrant_step:
            if (horizon_ <= 0.0) fail(ErrorCode::validation, "profit horizon must be positive");
            break;
        default:
            break;
    }
    if (kind_ == ProfitKind::quadratic) {
        // Non-negative on [0, budget] iff the right root (1+sqrt5)/2 h is beyond the budget.
        const double root = horizon_ * (1.0 + std::sqrt(5.0)) / 2.0;
        if (weight_ > 0.0 && budget > root + 1e-9) {
            fail(ErrorCode::validation, "quadratic profit turns negative before the budget ends");
        }
    }
    if (kind_ == ProfitKind::table) {
        if (bins_.empty()) fail(ErrorCode::validation, "profit table has no bins");
        if (bins_.front().t_start != 0.0) {
            fail(ErrorCode::validation, "profit table must start at t = 0");
        }
        for (std::size_t k = 0; k < bins_.size(); ++k) {
            require_finite(bins_[k].t_start, "t_start");
            require_finite(bins_[k].value, "value");
            if (bins_[k].value < 0.0) {
                std::ostringstream os;
                os << "profit table bin " << k << " has negative value " << bins_[k].value;
                fail(ErrorCode::validation, os.str());
            }
            if (k > 0 && !(bins_[k].t_start > bins_[k - 1].t_start)) {
                fail(ErrorCode::validation, "profit table bins must be strictly increasing");
            }
        }
    }
}

}  // namespace tvop
