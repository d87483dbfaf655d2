#include "abring/spectrum.hpp"

#include <cmath>
#include <string>

#include "abring/error.hpp"

namespace abring {
namespace {

double sign_value(ChargeSign s) { return static_cast<double>(static_cast<int>(s)); }

// (n - s phi) / a
double reduced_momentum(const RingParams& p, std::int64_t n) {
  return (static_cast<double>(n) - sign_value(p.charge_sign) * p.flux_ratio) / p.radius;
}

void require_ensemble_sign(const RingParams& p) {
  if (p.charge_sign != ChargeSign::Negative) {
    throw Error(ErrorCode::InvalidParams,
                "charge_sign must be -1: only negatively charged fermions populate the ensemble");
  }
}

void require_finite_positive(double v, const char* name) {
  if (!(std::isfinite(v) && v > 0.0)) {
    throw Error(ErrorCode::InvalidParams,
                std::string(name) + " must be finite and > 0, got " + std::to_string(v));
  }
}

}  // namespace

void RingParams::validate() const {
  require_finite_positive(mass, "mass");
  require_finite_positive(radius, "radius");
  if (!(std::isfinite(flux_ratio) && flux_ratio >= 0.0)) {
    throw Error(ErrorCode::InvalidParams,
                "flux_ratio must be finite and >= 0, got " + std::to_string(flux_ratio));
  }
  if (charge_sign != ChargeSign::Positive && charge_sign != ChargeSign::Negative) {
    throw Error(ErrorCode::InvalidParams, "charge_sign must be +1 or -1");
  }
  if (particle_count < 1) {
    throw Error(ErrorCode::InvalidParams,
                "particle_count must be >= 1, got " + std::to_string(particle_count));
  }
}

double relativistic_energy(const RingParams& params, std::int64_t n) {
  return std::hypot(params.mass, reduced_momentum(params, n));
}

double relativistic_excitation(const RingParams& params, std::int64_t n) {
  const double k = reduced_momentum(params, n);
  return k * k / (std::hypot(params.mass, k) + params.mass);
}

double nonrelativistic_energy(const RingParams& params, std::int64_t n) {
  const double k = reduced_momentum(params, n);
  return k * k / (2.0 * params.mass);
}

SpectrumCoefficients relativistic_coefficients(const RingParams& params, Fidelity fidelity) {
  params.validate();
  require_ensemble_sign(params);
  const double a2 = params.radius * params.radius;
  const double phi_over_a = params.flux_ratio / params.radius;
  SpectrumCoefficients c;
  c.variant = Regime::Relativistic;
  c.fidelity = fidelity;
  c.flux_ratio = params.flux_ratio;
  c.A = 1.0 / a2;
  if (fidelity == Fidelity::PaperLiteral) {
    c.B = params.flux_ratio / a2;
    c.C = 1.0 + phi_over_a * phi_over_a;
  } else {
    c.B = 2.0 * params.flux_ratio / a2;
    c.C = params.mass * params.mass + phi_over_a * phi_over_a;
  }
  return c;
}

SpectrumCoefficients nonrelativistic_coefficients(const RingParams& params) {
  params.validate();
  require_ensemble_sign(params);
  const double ma2 = params.mass * params.radius * params.radius;
  SpectrumCoefficients c;
  c.variant = Regime::NonRelativistic;
  c.fidelity = Fidelity::DerivedConsistent;
  c.flux_ratio = params.flux_ratio;
  c.A = 1.0 / (2.0 * ma2);
  c.B = params.flux_ratio / ma2;
  c.C = params.flux_ratio * params.flux_ratio / (2.0 * ma2);
  return c;
}

bool strong_field_valid(double flux_ratio) noexcept {
  return flux_ratio >= kStrongFieldFluxRatio;
}

std::string_view to_string(Regime regime) noexcept {
  return regime == Regime::Relativistic ? "relativistic" : "nonrelativistic";
}

std::string_view to_string(Fidelity fidelity) noexcept {
  return fidelity == Fidelity::PaperLiteral ? "paper" : "derived";
}

}  // namespace abring
