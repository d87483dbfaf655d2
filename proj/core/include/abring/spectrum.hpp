#pragma once

#include <cstdint>
#include <string_view>

namespace abring {

// Natural units throughout: hbar = c = k_B = 1.

enum class ChargeSign : int { Positive = +1, Negative = -1 };

enum class Regime { Relativistic, NonRelativistic };

/// PaperLiteral keeps the literal strong-field coefficients (B = phi/a^2, C = 1 + (phi/a)^2);
/// DerivedConsistent expands m^2 + (n + phi)^2/a^2 exactly (B = 2 phi/a^2, C = m^2 + (phi/a)^2).
enum class Fidelity { PaperLiteral, DerivedConsistent };

/// Smallest flux ratio for which the strong-field (phi >> 1) engines are considered valid.
inline constexpr double kStrongFieldFluxRatio = 50.0;

struct RingParams {
  double mass = 1.0;
  double radius = 1.0;
  double flux_ratio = 0.0;  // Phi / Phi_0
  ChargeSign charge_sign = ChargeSign::Negative;
  std::int64_t particle_count = 1;

  /// Throws Error{InvalidParams} naming the offending field.
  void validate() const;
};

/// Reduction of the spectrum to sqrt(A n^2 + B n + C) (relativistic) or
/// A n^2 + B n + C (non-relativistic, where the strong-field engines drop A).
struct SpectrumCoefficients {
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;
  Regime variant = Regime::Relativistic;
  Fidelity fidelity = Fidelity::DerivedConsistent;
  double flux_ratio = 0.0;  // carried for strong-field validity checks
};

/// Positive branch E = sqrt(m^2 + ((n - s phi)/a)^2), valid for every integer n.
double relativistic_energy(const RingParams& params, std::int64_t n);

/// E - m evaluated as k^2 / (E + m), free of the cancellation in the naive difference.
double relativistic_excitation(const RingParams& params, std::int64_t n);

/// epsilon = (n - s phi)^2 / (2 m a^2).
double nonrelativistic_energy(const RingParams& params, std::int64_t n);

/// Requires charge_sign == Negative (only s = -1 fermions populate the ensemble).
SpectrumCoefficients relativistic_coefficients(const RingParams& params,
                                               Fidelity fidelity = Fidelity::DerivedConsistent);

/// B = phi/(m a^2), C = phi^2/(2 m a^2); A holds the dropped quadratic term 1/(2 m a^2).
SpectrumCoefficients nonrelativistic_coefficients(const RingParams& params);

bool strong_field_valid(double flux_ratio) noexcept;

std::string_view to_string(Regime regime) noexcept;
std::string_view to_string(Fidelity fidelity) noexcept;

}  // namespace abring
