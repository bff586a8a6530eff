#pragma once

#include <memory>
#include <vector>

#include "lw/errors.hpp"
#include "lw/expr.hpp"

namespace lw {

/// Natural cubic spline over strictly increasing knots. Evaluation outside
/// the knot range continues the end segments' polynomials.
class CubicSpline {
 public:
  CubicSpline(std::vector<double> t, std::vector<double> y);

  double eval(double x) const;
  double derivative(double x) const;
  double second_derivative(double x) const;

  /// Exact integral of the piecewise cubic over [a, b].
  double integral(double a, double b) const;

  const std::vector<double>& knots() const { return t_; }

 private:
  int segment(double x) const;
  double antiderivative(double x) const;

  std::vector<double> t_;
  std::vector<double> y_;
  std::vector<double> m_;  // second derivatives at knots
};

/// Real function of one variable, backed either by a symbolic expression or
/// by sampled values (cubic spline). Both forms support differentiation so
/// extracted data can feed back into surface construction.
class Func1D {
 public:
  Func1D() = default;

  static Func1D from_expr(Expr e);
  static Func1D from_samples(std::vector<double> t, std::vector<double> y);

  double operator()(double t) const;
  Func1D derivative() const;

  bool symbolic() const { return static_cast<bool>(expr_has_); }
  const Expr& expr() const;
  bool valid() const { return expr_has_ || spline_; }

 private:
  bool expr_has_ = false;
  Expr expr_;
  std::shared_ptr<const CubicSpline> spline_;
  int spline_deriv_ = 0;  // 0: value, 1: first, 2: second derivative
};

}  // namespace lw
