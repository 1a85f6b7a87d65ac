#pragma once

#include <vector>

namespace atomforge {

// Natural cubic spline on a uniform grid starting at x0 with spacing h.
// Outside the grid the spline continues linearly with the boundary slope,
// keeping value and first derivative continuous.
class CubicSpline {
public:
    CubicSpline() = default;
    CubicSpline(double x0, double h, std::vector<double> y);

    double value(double x) const;
    double derivative(double x) const;
    void eval(double x, double& v, double& d) const;

    double x_max() const { return x0_ + h_ * static_cast<double>(y_.size() - 1); }
    const std::vector<double>& knots() const { return y_; }

private:
    double x0_ = 0.0;
    double h_ = 1.0;
    std::vector<double> y_;
    std::vector<double> m_;  // second derivatives at knots
};

} // namespace atomforge
