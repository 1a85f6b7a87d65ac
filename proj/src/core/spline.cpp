#include "atomforge/core/spline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace atomforge {

CubicSpline::CubicSpline(double x0, double h, std::vector<double> y)
    : x0_(x0), h_(h), y_(std::move(y)) {
    const std::size_t n = y_.size();
    if (n < 2) throw std::invalid_argument("spline: need at least two knots");
    if (h <= 0.0) throw std::invalid_argument("spline: spacing must be positive");
    m_.assign(n, 0.0);
    if (n == 2) return;

    // Tridiagonal system for natural boundary conditions (m_0 = m_{n-1} = 0).
    std::vector<double> diag(n, 2.0), rhs(n, 0.0), upper(n, 0.5);
    for (std::size_t i = 1; i + 1 < n; ++i)
        rhs[i] = 6.0 * (y_[i + 1] - 2.0 * y_[i] + y_[i - 1]) / (h * h);
    // Forward sweep over interior rows (coefficients 1/2, 2, 1/2 scaled: use
    // the standard  mu=0.5, lambda=0.5 form).
    std::vector<double> c(n, 0.0), d(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        double mlower = (i == 1) ? 0.0 : 0.5;
        double denom = 2.0 - mlower * c[i - 1];
        c[i] = 0.5 / denom;
        d[i] = (rhs[i] - mlower * d[i - 1]) / denom;
    }
    for (std::size_t i = n - 2; i >= 1; --i) {
        m_[i] = d[i] - c[i] * m_[i + 1];
        if (i == 1) break;
    }
}

void CubicSpline::eval(double x, double& v, double& d) const {
    const std::size_t n = y_.size();
    const double xmax = x_max();
    if (x <= x0_) {
        // slope at the left boundary (m_0 = 0)
        double d0 = (y_[1] - y_[0]) / h_ - h_ * (2.0 * m_[0] + m_[1]) / 6.0;
        v = y_[0] + d0 * (x - x0_);
        d = d0;
        return;
    }
    if (x >= xmax) {
        double dn = (y_[n - 1] - y_[n - 2]) / h_ + h_ * (2.0 * m_[n - 1] + m_[n - 2]) / 6.0;
        v = y_[n - 1] + dn * (x - xmax);
        d = dn;
        return;
    }
    std::size_t i = std::min(static_cast<std::size_t>((x - x0_) / h_), n - 2);
    double xl = x0_ + h_ * static_cast<double>(i);
    double A = (xl + h_ - x) / h_;
    double B = 1.0 - A;
    v = A * y_[i] + B * y_[i + 1] +
        ((A * A * A - A) * m_[i] + (B * B * B - B) * m_[i + 1]) * h_ * h_ / 6.0;
    d = (y_[i + 1] - y_[i]) / h_ +
        ((3.0 * B * B - 1.0) * m_[i + 1] - (3.0 * A * A - 1.0) * m_[i]) * h_ / 6.0;
}

double CubicSpline::value(double x) const {
    double v, d;
    eval(x, v, d);
    return v;
}

double CubicSpline::derivative(double x) const {
    double v, d;
    eval(x, v, d);
    return d;
}

} // namespace atomforge
