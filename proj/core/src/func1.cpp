#include "lw/func1.hpp"

#include <algorithm>
#include <cmath>

namespace lw {

CubicSpline::CubicSpline(std::vector<double> t, std::vector<double> y)
    : t_(std::move(t)), y_(std::move(y)) {
  const std::size_t n = t_.size();
  if (n < 2 || y_.size() != n) {
    throw DomainError("spline needs at least two samples of matching length");
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (!(t_[i] > t_[i - 1])) throw DomainError("spline knots must be strictly increasing");
  }
  m_.assign(n, 0.0);
  if (n == 2) return;  // linear interpolant

  auto gap = [&](std::size_t i) { return t_[i + 1] - t_[i]; };
  auto rhs_at = [&](std::size_t i) {
    return 6.0 * ((y_[i + 1] - y_[i]) / gap(i) - (y_[i] - y_[i - 1]) / gap(i - 1));
  };

  if (n == 3) {
    // Single quadratic through the three samples.
    double m = rhs_at(1) / (3.0 * (gap(0) + gap(1)));
    m_[0] = m_[1] = m_[2] = m;
    return;
  }

  // Not-a-knot end conditions: the third derivative is continuous across the
  // first and last interior knots, which reproduces cubics exactly and avoids
  // the O(h^2) boundary bias of natural splines. The end values are
  //   m_0     = (1 + h0/h1) m_1 - (h0/h1) m_2,
  //   m_{n-1} = (1 + he/hd) m_{n-2} - (he/hd) m_{n-3},
  // folded into the first and last rows of the tridiagonal system.
  const std::size_t unknowns = n - 2;  // m_1 .. m_{n-2}
  std::vector<double> lower(unknowns, 0.0), diag(unknowns, 0.0), upper(unknowns, 0.0),
      rhs(unknowns, 0.0);
  for (std::size_t k = 0; k < unknowns; ++k) {
    std::size_t i = k + 1;
    lower[k] = gap(i - 1);
    diag[k] = 2.0 * (gap(i - 1) + gap(i));
    upper[k] = gap(i);
    rhs[k] = rhs_at(i);
  }
  {
    double h0 = gap(0), h1 = gap(1);
    diag[0] += h0 + h0 * h0 / h1;
    upper[0] -= h0 * h0 / h1;
    double he = gap(n - 2), hd = gap(n - 3);
    diag[unknowns - 1] += he + he * he / hd;
    lower[unknowns - 1] -= he * he / hd;
  }

  // Thomas algorithm.
  std::vector<double> c(unknowns, 0.0), d(unknowns, 0.0);
  c[0] = upper[0] / diag[0];
  d[0] = rhs[0] / diag[0];
  for (std::size_t k = 1; k < unknowns; ++k) {
    double denom = diag[k] - lower[k] * c[k - 1];
    c[k] = upper[k] / denom;
    d[k] = (rhs[k] - lower[k] * d[k - 1]) / denom;
  }
  m_[n - 2] = d[unknowns - 1];
  for (std::size_t k = unknowns - 1; k >= 1; --k) {
    m_[k] = d[k - 1] - c[k - 1] * m_[k + 1];
  }
  double h0 = gap(0), h1 = gap(1);
  m_[0] = (1.0 + h0 / h1) * m_[1] - (h0 / h1) * m_[2];
  double he = gap(n - 2), hd = gap(n - 3);
  m_[n - 1] = (1.0 + he / hd) * m_[n - 2] - (he / hd) * m_[n - 3];
}

int CubicSpline::segment(double x) const {
  auto it = std::upper_bound(t_.begin(), t_.end(), x);
  int i = static_cast<int>(it - t_.begin()) - 1;
  int max_seg = static_cast<int>(t_.size()) - 2;
  return std::clamp(i, 0, max_seg);
}

double CubicSpline::eval(double x) const {
  int i = segment(x);
  double h = t_[i + 1] - t_[i];
  double a = (t_[i + 1] - x) / h;
  double b = (x - t_[i]) / h;
  return a * y_[i] + b * y_[i + 1] +
         ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
}

double CubicSpline::derivative(double x) const {
  int i = segment(x);
  double h = t_[i + 1] - t_[i];
  double a = (t_[i + 1] - x) / h;
  double b = (x - t_[i]) / h;
  return (y_[i + 1] - y_[i]) / h +
         ((3.0 * b * b - 1.0) * m_[i + 1] - (3.0 * a * a - 1.0) * m_[i]) * h / 6.0;
}

double CubicSpline::second_derivative(double x) const {
  int i = segment(x);
  double h = t_[i + 1] - t_[i];
  double a = (t_[i + 1] - x) / h;
  double b = (x - t_[i]) / h;
  return a * m_[i] + b * m_[i + 1];
}

double CubicSpline::antiderivative(double x) const {
  // Integral from t_[0] to x, exact on each cubic segment.
  int i = segment(x);
  double acc = 0.0;
  for (int k = 0; k < i; ++k) {
    double h = t_[k + 1] - t_[k];
    acc += 0.5 * h * (y_[k] + y_[k + 1]) - h * h * h * (m_[k] + m_[k + 1]) / 24.0;
  }
  double h = t_[i + 1] - t_[i];
  double b = (x - t_[i]) / h;
  double a = 1.0 - b;
  // Segment antiderivative evaluated at local coordinate b.
  double part = h * (y_[i] * (b - 0.5 * b * b) + y_[i + 1] * 0.5 * b * b) +
                h * h * h / 6.0 *
                    (m_[i] * ((a * a - 1.0) * 0.5 - (a * a * a * a - 1.0) * 0.25) +
                     m_[i + 1] * (b * b * b * b * 0.25 - b * b * 0.5));
  return acc + part;
}

double CubicSpline::integral(double a, double b) const {
  return antiderivative(b) - antiderivative(a);
}

Func1D Func1D::from_expr(Expr e) {
  Func1D f;
  f.expr_has_ = true;
  f.expr_ = std::move(e);
  return f;
}

Func1D Func1D::from_samples(std::vector<double> t, std::vector<double> y) {
  Func1D f;
  f.spline_ = std::make_shared<CubicSpline>(std::move(t), std::move(y));
  return f;
}

double Func1D::operator()(double t) const {
  if (expr_has_) return expr_.eval(t);
  if (!spline_) throw DomainError("empty function");
  switch (spline_deriv_) {
    case 0:
      return spline_->eval(t);
    case 1:
      return spline_->derivative(t);
    default:
      return spline_->second_derivative(t);
  }
}

Func1D Func1D::derivative() const {
  if (expr_has_) return from_expr(expr_.differentiate());
  if (!spline_) throw DomainError("empty function");
  if (spline_deriv_ >= 2) throw DomainError("sampled function: third derivative unavailable");
  Func1D f;
  f.spline_ = spline_;
  f.spline_deriv_ = spline_deriv_ + 1;
  return f;
}

const Expr& Func1D::expr() const {
  if (!expr_has_) throw DomainError("function is not expression-backed");
  return expr_;
}

}  // namespace lw
