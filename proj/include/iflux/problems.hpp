#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>

namespace iflux {

using Vec2 = Eigen::Vector2d;

// Minus is the inside of the circle in 2D and the interval (0, alpha) in 1D.
enum class Side { Minus, Plus };

const char* to_string(Side side);

struct PiecewiseCoefficient {
  double beta_minus = 1.0;
  double beta_plus = 1.0;

  PiecewiseCoefficient() = default;
  PiecewiseCoefficient(double minus, double plus);

  double beta(Side side) const { return side == Side::Minus ? beta_minus : beta_plus; }
  double rho() const { return beta_minus / beta_plus; }
};

// Radius 0 is the "no interface" convention: every point counts as Plus and
// the tube covers the whole domain.
struct CircleInterface {
  Vec2 center = Vec2::Zero();
  double radius = 0.0;

  bool empty() const { return radius == 0.0; }
  double level_set(const Vec2& p) const { return (p - center).norm() - radius; }
  Side side_of(const Vec2& p) const;
  Vec2 normal_at(const Vec2& p) const;
};

struct SquareDomain {
  double lo = 0.0;
  double hi = 1.0;
  double side_length() const { return hi - lo; }
};

struct Problem1d {
  std::string id;
  PiecewiseCoefficient coeff;
  double alpha = 0.5;
  double q = 0.0;
  std::function<double(double, Side)> u;
  std::function<double(double, Side)> du;
  std::function<double(double, Side)> f;

  Side side_of(double x) const { return x < alpha ? Side::Minus : Side::Plus; }
  double exact(double x) const { return u(x, side_of(x)); }
  // beta_plus u'(alpha+) - beta_minus u'(alpha-)
  double flux_jump() const;
};

struct Problem2d {
  std::string id;
  PiecewiseCoefficient coeff;
  CircleInterface circle;
  SquareDomain domain;
  double q = 0.0;
  std::function<double(const Vec2&, Side)> u;
  std::function<Vec2(const Vec2&, Side)> grad;
  std::function<double(const Vec2&, Side)> f;

  Side side_of(const Vec2& p) const { return circle.side_of(p); }
  double exact(const Vec2& p) const { return u(p, side_of(p)); }
  // [beta du/dn] = beta_plus grad u+ . n - beta_minus grad u- . n, n radial.
  double flux_jump(const Vec2& p) const;
};

// u = x^4/beta- left of alpha, x^4/beta+ + (1/beta- - 1/beta+) alpha^4 right
// of it. The source is f = -12x^2 + q u so the same u solves the reaction
// variant.
Problem1d model_problem_1d(double alpha, double beta_minus, double beta_plus);
Problem1d quartic_problem_1d(double alpha, double beta_minus, double beta_plus, double q);

// u = sin x cos y on [-1.1, 1.1]^2 with a circular interface of radius r_gamma.
Problem2d model_problem_2d_trig(double beta_minus, double beta_plus, double q_const, double r_gamma);

// u = r^2 inside the unit circle and r^4 outside, on [-1.5, 1.5]^2.
Problem2d model_problem_2d_r2r4(double beta_minus, double beta_plus);

struct ProblemParams {
  double alpha = 1.0 / 3.0;
  double beta_minus = 2.0;
  double beta_plus = 10.0;
  double q = 0.0;
  double r_gamma = 0.9;
};

int problem_dimension(const std::string& id);
Problem1d make_problem_1d(const std::string& id, const ProblemParams& params);
Problem2d make_problem_2d(const std::string& id, const ProblemParams& params);

}  // namespace iflux
