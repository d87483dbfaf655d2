#include "abring/thermo.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "abring/error.hpp"
#include "abring/partition.hpp"

namespace abring {
namespace {

void require_beta(double beta) { detail::require_positive_beta(beta); }

void require_particles(std::int64_t n) {
  if (n < 1) {
    throw Error(ErrorCode::InvalidParams, "particle count must be >= 1, got " + std::to_string(n));
  }
}

void require_field(const SpectrumCoefficients& c) {
  if (!(c.B > 0.0)) {
    throw Error(ErrorCode::DegenerateField,
                "linear coefficient B must be > 0 for the closed-form thermodynamics");
  }
}

struct Stencil {
  double first;   // d f / d beta
  double second;  // d^2 f / d beta^2
};

// Five-point central differences from f(beta + k h), k = -2..2.
Stencil five_point(const std::array<double, 5>& f, double h) {
  return {
      (f[0] - 8.0 * f[1] + 8.0 * f[3] - f[4]) / (12.0 * h),
      (-f[0] + 16.0 * f[1] - 30.0 * f[2] + 16.0 * f[3] - f[4]) / (12.0 * h * h),
  };
}

bool agrees(double a, double b, double noise) {
  return std::abs(a - b) <= kRichardsonTolerance * std::max(std::abs(a), std::abs(b)) + noise;
}

}  // namespace

double ThermoPoint::legendre_residual() const {
  const double ts = tau * s_per_nk;
  const double scale = std::max({std::abs(f_per_n), std::abs(u_per_n), std::abs(ts)});
  if (scale == 0.0) return 0.0;
  return std::abs(f_per_n - (u_per_n - ts)) / scale;
}

ThermoPoint thermo_rel_closed(double beta, const SpectrumCoefficients& coeffs,
                              std::int64_t n_particles) {
  require_beta(beta);
  require_particles(n_particles);
  if (coeffs.variant != Regime::Relativistic) {
    throw Error(ErrorCode::MethodNotApplicable, "thermo_rel_closed needs relativistic coefficients");
  }
  require_field(coeffs);
  const double x = beta * std::sqrt(coeffs.C);
  const double log_z = log_z1_high_t(beta, coeffs);

  ThermoPoint p;
  p.tau = 1.0 / beta;
  p.regime = Regime::Relativistic;
  p.source = ThermoSource::ClosedForm;
  p.f_per_n = -log_z / beta;
  p.u_per_n = (2.0 + x) / (beta + beta * x);
  p.s_per_nk = log_z + (2.0 + x) / (1.0 + x);
  p.cv_per_nk = (2.0 + 4.0 * x + x * x) / ((1.0 + x) * (1.0 + x));
  return p;
}

ThermoPoint thermo_nonrel_closed(double beta, const SpectrumCoefficients& coeffs,
                                 std::int64_t n_particles, Fidelity fidelity) {
  require_beta(beta);
  require_particles(n_particles);
  if (coeffs.variant != Regime::NonRelativistic) {
    throw Error(ErrorCode::MethodNotApplicable,
                "thermo_nonrel_closed needs non-relativistic coefficients");
  }
  require_field(coeffs);
  const double b = coeffs.B;
  const double c = coeffs.C;
  const double xb = beta * b;
  // 1 - exp(-beta B), and the Bose-like occupation 1 / (exp(beta B) - 1).
  const double one_minus = -std::expm1(-xb);
  const double occupation = 1.0 / std::expm1(xb);
  const double log_z = -beta * c - std::log(one_minus);

  ThermoPoint p;
  p.tau = 1.0 / beta;
  p.regime = Regime::NonRelativistic;
  p.source = ThermoSource::ClosedForm;
  if (fidelity == Fidelity::PaperLiteral) {
    p.f_per_n = -(-beta * c - std::log(-std::expm1(-beta * c))) / beta;
  } else {
    p.f_per_n = -log_z / beta;
  }
  p.u_per_n = b * occupation + c;
  // beta (C + B/(e^{beta B} - 1)) + ln(e^{beta (B - C)} / (e^{beta B} - 1)); the log term is ln Z_1.
  p.s_per_nk = beta * (c + b * occupation) + log_z;
  // beta^2 B^2 e^{beta B} / (1 - e^{beta B})^2, written in terms of e^{-beta B} to avoid overflow.
  p.cv_per_nk = xb * xb * std::exp(-xb) / (one_minus * one_minus);
  return p;
}

ThermoPoint thermo_numeric(const std::function<double(double)>& log_zn, double beta,
                           const NumericDerivativeOptions& options) {
  require_beta(beta);
  require_particles(options.n_particles);
  const double h = options.step.value_or(kDefaultRelativeStep * beta);
  if (!(h > 0.0) || !(beta - 4.0 * h > 0.0)) {
    throw Error(ErrorCode::StepTooLarge,
                "derivative step " + std::to_string(h) + " must satisfy 0 < 4 h < beta = " +
                    std::to_string(beta));
  }

  const double f0 = log_zn(beta);
  const std::array<double, 5> near = {log_zn(beta - 2.0 * h), log_zn(beta - h), f0,
                                      log_zn(beta + h), log_zn(beta + 2.0 * h)};
  const std::array<double, 5> wide = {log_zn(beta - 4.0 * h), near[0], f0, near[4],
                                      log_zn(beta + 4.0 * h)};
  double magnitude = 0.0;
  for (double v : near) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::StepTooLarge, "ln Z is not finite inside the derivative stencil");
    }
    magnitude = std::max(magnitude, std::abs(v));
  }
  for (double v : wide) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::StepTooLarge, "ln Z is not finite inside the derivative stencil");
    }
    magnitude = std::max(magnitude, std::abs(v));
  }

  const Stencil fine = five_point(near, h);
  const Stencil coarse = five_point(wide, 2.0 * h);

  // Differences below this are rounding in ln Z, not disagreement between stencils.
  const double eps = std::numeric_limits<double>::epsilon();
  const double first_noise = 64.0 * eps * magnitude / h;
  const double second_noise = 64.0 * eps * magnitude / (h * h);
  if (!agrees(fine.first, coarse.first, first_noise) ||
      !agrees(fine.second, coarse.second, second_noise)) {
    throw Error(ErrorCode::StepTooLarge,
                "h and 2h stencils disagree at beta = " + std::to_string(beta) +
                    "; reduce the derivative step");
  }

  const double n = static_cast<double>(options.n_particles);
  ThermoPoint p;
  p.tau = 1.0 / beta;
  p.regime = options.regime;
  p.source = ThermoSource::NumericDerivative;
  p.f_per_n = -f0 / (beta * n);
  p.u_per_n = -fine.first / n;
  p.s_per_nk = beta * (p.u_per_n - p.f_per_n);
  p.cv_per_nk = beta * beta * fine.second / n;
  return p;
}

double asymptote_check(Regime regime) noexcept {
  return regime == Regime::Relativistic ? 2.0 : 1.0;
}

std::string_view to_string(ThermoSource source) noexcept {
  return source == ThermoSource::ClosedForm ? "closed" : "numeric";
}

}  // namespace abring
