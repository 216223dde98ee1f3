#include "iflux/problems.hpp"

#include <cmath>
#include <sstream>

#include "iflux/error.hpp"

namespace iflux {

const char* to_string(Side side) { return side == Side::Minus ? "minus" : "plus"; }

PiecewiseCoefficient::PiecewiseCoefficient(double minus, double plus) : beta_minus(minus), beta_plus(plus) {
  if (!(minus > 0.0) || !(plus > 0.0) || !std::isfinite(minus) || !std::isfinite(plus)) {
    std::ostringstream msg;
    msg << "coefficients must be finite and positive, got beta- = " << minus << ", beta+ = " << plus;
    throw ParameterError(msg.str());
  }
}

Side CircleInterface::side_of(const Vec2& p) const {
  if (empty()) return Side::Plus;
  return level_set(p) < 0.0 ? Side::Minus : Side::Plus;
}

Vec2 CircleInterface::normal_at(const Vec2& p) const {
  const Vec2 d = p - center;
  const double r = d.norm();
  if (r == 0.0) throw GeometryError("normal requested at the circle center");
  return d / r;
}

double Problem1d::flux_jump() const {
  return coeff.beta_plus * du(alpha, Side::Plus) - coeff.beta_minus * du(alpha, Side::Minus);
}

double Problem2d::flux_jump(const Vec2& p) const {
  const Vec2 n = circle.normal_at(p);
  return coeff.beta_plus * grad(p, Side::Plus).dot(n) - coeff.beta_minus * grad(p, Side::Minus).dot(n);
}

Problem1d quartic_problem_1d(double alpha, double beta_minus, double beta_plus, double q) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ParameterError("interface point alpha must lie in (0, 1), got " + std::to_string(alpha));
  }
  if (!(q >= 0.0)) throw ParameterError("reaction coefficient q must be nonnegative");
  Problem1d p;
  p.id = "paper-1d";
  p.coeff = PiecewiseCoefficient(beta_minus, beta_plus);
  p.alpha = alpha;
  p.q = q;
  const double shift = (1.0 / beta_minus - 1.0 / beta_plus) * std::pow(alpha, 4);
  p.u = [=](double x, Side s) {
    const double x4 = x * x * x * x;
    return s == Side::Minus ? x4 / beta_minus : x4 / beta_plus + shift;
  };
  p.du = [=](double x, Side s) { return 4.0 * x * x * x / (s == Side::Minus ? beta_minus : beta_plus); };
  auto u = p.u;
  p.f = [=](double x, Side s) { return -12.0 * x * x + q * u(x, s); };
  return p;
}

Problem1d model_problem_1d(double alpha, double beta_minus, double beta_plus) {
  return quartic_problem_1d(alpha, beta_minus, beta_plus, 0.0);
}

Problem2d model_problem_2d_trig(double beta_minus, double beta_plus, double q_const, double r_gamma) {
  if (!(q_const >= 0.0)) throw ParameterError("reaction coefficient q must be nonnegative");
  Problem2d p;
  p.id = "trig-2d";
  p.coeff = PiecewiseCoefficient(beta_minus, beta_plus);
  p.domain = {-1.1, 1.1};
  if (!(r_gamma >= 0.0 && r_gamma < 1.1)) {
    throw ParameterError("interface radius must lie in [0, 1.1) for the trig problem, got " +
                         std::to_string(r_gamma));
  }
  p.circle = {Vec2::Zero(), r_gamma};
  p.q = q_const;
  p.u = [](const Vec2& x, Side) { return std::sin(x.x()) * std::cos(x.y()); };
  p.grad = [](const Vec2& x, Side) {
    return Vec2(std::cos(x.x()) * std::cos(x.y()), -std::sin(x.x()) * std::sin(x.y()));
  };
  const PiecewiseCoefficient c = p.coeff;
  p.f = [=](const Vec2& x, Side s) { return (2.0 * c.beta(s) + q_const) * std::sin(x.x()) * std::cos(x.y()); };
  return p;
}

Problem2d model_problem_2d_r2r4(double beta_minus, double beta_plus) {
  Problem2d p;
  p.id = "r2r4-2d";
  p.coeff = PiecewiseCoefficient(beta_minus, beta_plus);
  p.domain = {-1.5, 1.5};
  p.circle = {Vec2::Zero(), 1.0};
  p.q = 0.0;
  p.u = [](const Vec2& x, Side s) {
    const double r2 = x.squaredNorm();
    return s == Side::Minus ? r2 : r2 * r2;
  };
  p.grad = [](const Vec2& x, Side s) -> Vec2 {
    return s == Side::Minus ? Vec2(2.0 * x) : Vec2(4.0 * x.squaredNorm() * x);
  };
  const PiecewiseCoefficient c = p.coeff;
  p.f = [=](const Vec2& x, Side s) {
    return s == Side::Minus ? -4.0 * c.beta_minus : -16.0 * c.beta_plus * x.squaredNorm();
  };
  return p;
}

int problem_dimension(const std::string& id) {
  if (id == "paper-1d") return 1;
  if (id == "trig-2d" || id == "r2r4-2d") return 2;
  throw ParameterError("unknown problem '" + id + "' (expected paper-1d, trig-2d or r2r4-2d)");
}

Problem1d make_problem_1d(const std::string& id, const ProblemParams& params) {
  if (problem_dimension(id) != 1) throw ParameterError("problem '" + id + "' is not one-dimensional");
  return quartic_problem_1d(params.alpha, params.beta_minus, params.beta_plus, params.q);
}

Problem2d make_problem_2d(const std::string& id, const ProblemParams& params) {
  if (problem_dimension(id) != 2) throw ParameterError("problem '" + id + "' is not two-dimensional");
  if (id == "trig-2d") return model_problem_2d_trig(params.beta_minus, params.beta_plus, params.q, params.r_gamma);
  if (params.q != 0.0) throw ParameterError("r2r4-2d has no reaction term; q must be 0");
  return model_problem_2d_r2r4(params.beta_minus, params.beta_plus);
}

}  // namespace iflux
