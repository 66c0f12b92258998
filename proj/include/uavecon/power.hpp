#pragma once

#include <stdexcept>

namespace uavecon {

/// Power draw g(v) of a UAV flying at speed v. Either a constant draw or an
/// affine-quadratic profile a + b*v^2.
struct PowerModel {
    enum class Kind { Constant, AffineQuadratic };

    Kind kind = Kind::Constant;
    double constant_term = 1.0;   // p0 for Constant, a for AffineQuadratic
    double quadratic_term = 0.0;  // b for AffineQuadratic

    static PowerModel constant(double p0) {
        if (!(p0 > 0.0)) {
            throw std::invalid_argument("PowerModel: p0 must be positive");
        }
        return PowerModel{Kind::Constant, p0, 0.0};
    }

    static PowerModel affine_quadratic(double a, double b) {
        if (a < 0.0 || b < 0.0 || a + b <= 0.0) {
            throw std::invalid_argument(
                "PowerModel: requires a >= 0, b >= 0, not both zero");
        }
        return PowerModel{Kind::AffineQuadratic, a, b};
    }

    double evaluate(double speed) const {
        return constant_term + quadratic_term * speed * speed;
    }

    double operator()(double speed) const { return evaluate(speed); }
};

}  // namespace uavecon
