#include "avocado/opinion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace avocado {
namespace {

void check(bool ok, const char* field, const char* rule) {
  if (!ok) throw std::invalid_argument(std::string(field) + ": " + rule);
}

double sech_sq(double x) {
  const double ch = std::cosh(x);
  return 1.0 / (ch * ch);
}

}  // namespace

void OpinionParams::validate() const {
  const std::pair<const char*, double> fields[] = {{"a", a},         {"b", b},         {"c", c},
                                                   {"d", d},         {"delta", delta}, {"kappa", kappa},
                                                   {"epsilon", epsilon}, {"sigma", sigma}, {"dt", dt}};
  for (const auto& [name, v] : fields) check(std::isfinite(v), name, "must be finite");
  check(a >= 0.0, "a", "must be >= 0");
  check(b >= -1.0 && b <= 1.0, "b", "must lie in [-1, 1]");
  check(c >= 0.0, "c", "must be >= 0");
  check(d > 0.0, "d", "must be > 0");
  check(delta >= 0.0 && delta < 1.0, "delta", "must lie in [0, 1)");
  check(kappa > 0.0, "kappa", "must be > 0");
  check(epsilon > 0.0, "epsilon", "must be > 0");
  check(sigma >= 0.0, "sigma", "must be >= 0");
  check(dt > 0.0, "dt", "must be > 0");
  check(dt * d < 1.0, "d", "dt*d must be < 1 for a stable Euler step");
}

double OpinionParams::opinion_bound() const { return std::abs(b) / d + 1.0; }

OpinionState OpinionState::initial(const OpinionParams& params) {
  OpinionState s;
  s.o = params.b / params.d;
  return s;
}

double shift(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::out_of_range("alpha outside [0, 1]");
  return 2.0 * alpha - 1.0;
}

double unshift(double o) {
  if (!(o >= -1.0 && o <= 1.0)) throw std::out_of_range("o outside [-1, 1]");
  return (o + 1.0) / 2.0;
}

double cooperation_from_opinion(double o) { return std::clamp((o + 1.0) / 2.0, 0.0, 1.0); }

OpinionState update_attention(OpinionState state, const TimeToCollision& tau,
                              const OpinionParams& params) {
  double drive = 0.0;
  switch (tau.kind) {
    case TimeToCollision::Kind::Finite:
      drive = std::tanh(params.kappa / tau.value);
      break;
    case TimeToCollision::Kind::AlreadyColliding:
      drive = 1.0;
      break;
    case TimeToCollision::Kind::NoCollision:
      break;
  }
  const double A = state.attention;
  double next = 0.0;
  if (params.attention_mode == AttentionMode::Smoothing) {
    next = params.delta * A + (1.0 - params.delta) * drive;
  } else {
    next = A + params.dt * (-params.delta * A + (1.0 - params.delta) * drive);
  }
  state.attention = std::clamp(next, 0.0, 1.0);
  return state;
}

double estimate_e(const Vec2& delta_v, const Vec2& u, const OpinionParams& params) {
  if (norm(u) <= kDegenerateEps) return 0.0;
  double s = scalar_projection(delta_v, u);
  if (params.projection_mode == ProjectionMode::Unsigned) s = std::abs(s);
  return std::tanh(params.epsilon * (s - 0.5));
}

OpinionState update_opinion(OpinionState state, double e, const OpinionParams& params) {
  const double o = state.o;
  const double rate = -params.d * o +
                      params.d * state.attention * std::tanh(params.a * o + params.c * e) +
                      params.b;
  const double bound = params.opinion_bound();
  state.o = std::clamp(o + params.dt * rate, -bound, bound);
  return state;
}

Vec2 perturb_velocity(const Vec2& v, double attention, const OpinionParams& params,
                      RandomStream& rng) {
  if (params.sigma == 0.0) return v;
  const double mx = rng.uniform(-params.sigma, params.sigma);
  const double my = rng.uniform(-params.sigma, params.sigma);
  return v + (1.0 - attention) * Vec2{mx, my};
}

std::vector<double> equilibrium_solve(double e, double attention, const OpinionParams& params) {
  const double bias = params.b / params.d;
  auto residual = [&](double o) {
    return attention * std::tanh(params.a * o + params.c * e) + bias - o;
  };

  const double half_width = params.opinion_bound() + 0.5;
  constexpr int kCells = 4096;
  const double step = 2.0 * half_width / kCells;

  std::vector<double> roots;
  double lo = -half_width;
  double f_lo = residual(lo);
  for (int i = 1; i <= kCells; ++i) {
    const double hi = -half_width + i * step;
    const double f_hi = residual(hi);
    if (f_lo == 0.0) {
      roots.push_back(lo);
    } else if ((f_lo < 0.0) != (f_hi < 0.0) && f_hi != 0.0) {
      double a = lo;
      double b = hi;
      double fa = f_lo;
      while (b - a > 1e-12) {
        const double mid = 0.5 * (a + b);
        const double fm = residual(mid);
        if (fm == 0.0) {
          a = b = mid;
          break;
        }
        if ((fm < 0.0) == (fa < 0.0)) {
          a = mid;
          fa = fm;
        } else {
          b = mid;
        }
      }
      roots.push_back(0.5 * (a + b));
    }
    lo = hi;
    f_lo = f_hi;
  }
  if (f_lo == 0.0) roots.push_back(lo);
  return roots;
}

double linearization_eigenvalue(double attention, const OpinionParams& params) {
  return -params.d + params.d * attention * params.a * sech_sq(params.a * params.b / params.d);
}

double bifurcation_threshold(const OpinionParams& params) {
  return 1.0 / (params.a * sech_sq(params.a * params.b / params.d));
}

}  // namespace avocado
