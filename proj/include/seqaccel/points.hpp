#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace seqaccel {

enum class PointRule { reciprocal_shift, linear, explicit_list };

// Interpolation points x_n for the Richardson/rho families.
// reciprocal_shift: x_n = 1/(n+beta), strictly decreasing to 0 (extrapolate to 0).
// linear:           x_n = n+1, strictly increasing (extrapolate to infinity).
// explicit_list:    caller-supplied, checked against the direction the method needs.
class InterpolationPoints {
public:
    static InterpolationPoints reciprocal(double beta) {
        if (!(beta > 0.0)) throw DomainError("shift parameter beta must be positive");
        InterpolationPoints p;
        p.rule_ = PointRule::reciprocal_shift;
        p.beta_ = beta;
        return p;
    }
    static InterpolationPoints linear() {
        InterpolationPoints p;
        p.rule_ = PointRule::linear;
        return p;
    }
    static InterpolationPoints explicit_list(std::vector<double> xs) {
        InterpolationPoints p;
        p.rule_ = PointRule::explicit_list;
        p.xs_ = std::move(xs);
        return p;
    }

    double operator()(std::size_t n) const {
        switch (rule_) {
        case PointRule::reciprocal_shift: return 1.0 / (static_cast<double>(n) + beta_);
        case PointRule::linear: return static_cast<double>(n) + 1.0;
        default:
            if (n >= xs_.size()) throw DomainError("explicit point list exhausted");
            return xs_[n];
        }
    }

    PointRule rule() const noexcept { return rule_; }
    double beta() const noexcept { return beta_; }

    // count = how many x_n the transformation will touch
    void require_decreasing(std::size_t count) const {
        if (rule_ == PointRule::linear)
            throw DomainError("points must decrease toward 0 for this method");
        if (rule_ == PointRule::explicit_list) check(count, false);
    }
    void require_increasing(std::size_t count) const {
        if (rule_ == PointRule::reciprocal_shift)
            throw DomainError("points must increase for this method");
        if (rule_ == PointRule::explicit_list) check(count, true);
    }

private:
    void check(std::size_t count, bool increasing) const {
        if (xs_.size() < count)
            throw DomainError("explicit point list too short: need " + std::to_string(count));
        for (std::size_t n = 0; n + 1 < count; ++n) {
            bool ok = increasing ? xs_[n] < xs_[n + 1] : xs_[n] > xs_[n + 1];
            if (!ok) throw DomainError("explicit points not strictly monotone");
        }
        if (!increasing && count > 0 && xs_[count - 1] <= 0.0)
            throw DomainError("points extrapolating to 0 must stay positive");
    }

    PointRule rule_ = PointRule::linear;
    double beta_ = 1.0;
    std::vector<double> xs_;
};

} // namespace seqaccel
