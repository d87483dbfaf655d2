#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>

#include "abring/spectrum.hpp"

namespace abring {

enum class ThermoSource { ClosedForm, NumericDerivative };

/// Per-particle canonical thermodynamics at one temperature (k_B = 1).
struct ThermoPoint {
  double tau = 0.0;        // k_B T
  double f_per_n = 0.0;    // F / N
  double u_per_n = 0.0;    // U / N
  double s_per_nk = 0.0;   // S / (N k_B)
  double cv_per_nk = 0.0;  // C_V / (N k_B)
  Regime regime = Regime::Relativistic;
  ThermoSource source = ThermoSource::ClosedForm;

  /// |F - (U - tau S)| relative to max(|F|, |U|, |tau S|).
  double legendre_residual() const;
};

inline constexpr double kClosedFormIdentityTolerance = 1e-8;
inline constexpr double kNumericIdentityTolerance = 1e-4;

/// High-temperature relativistic closed forms, consistent with ln Z_1 = ln[(2/(B beta^2))(1 + beta sqrt C)].
ThermoPoint thermo_rel_closed(double beta, const SpectrumCoefficients& coeffs,
                              std::int64_t n_particles = 1);

/// Geometric-series non-relativistic closed forms. Only F depends on the fidelity:
/// PaperLiteral puts C (not B) in the 1 - exp(-beta .) denominator, which breaks
/// F = U - T S unless B == C.
ThermoPoint thermo_nonrel_closed(double beta, const SpectrumCoefficients& coeffs,
                                 std::int64_t n_particles = 1,
                                 Fidelity fidelity = Fidelity::DerivedConsistent);

/// Relative stencil width used when no explicit step is given. Near eps^(1/6), the
/// balance point between truncation and rounding for the five-point second derivative.
inline constexpr double kDefaultRelativeStep = 2e-3;

/// Disagreement allowed between the h and 2h five-point stencils before StepTooLarge.
inline constexpr double kRichardsonTolerance = 1e-3;

struct NumericDerivativeOptions {
  std::optional<double> step;  // absolute; defaults to kDefaultRelativeStep * beta
  std::int64_t n_particles = 1;
  Regime regime = Regime::Relativistic;
};

/// Thermodynamics from ln Z_N(beta) by five-point central differences:
/// U = -d lnZ/d beta, C_V = beta^2 d^2 lnZ/d beta^2, F = -lnZ/beta, S = beta (U - F).
/// Evaluates log_zn at beta, beta +- h, beta +- 2h and beta +- 4h.
ThermoPoint thermo_numeric(const std::function<double(double)>& log_zn, double beta,
                           const NumericDerivativeOptions& options = {});

/// beta -> 0 limit of C_V / (N k_B): 2 (relativistic), 1 (non-relativistic).
double asymptote_check(Regime regime) noexcept;

std::string_view to_string(ThermoSource source) noexcept;

}  // namespace abring
