#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <limits>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "abring/error.hpp"
#include "abring/spectrum.hpp"

namespace abring {

enum class PartitionMethod { DirectSum, EulerMaclaurin, HighTClosed, GeometricClosed };

/// When the direct sum may stop. Both rules also require the last two terms to be decreasing.
///   TermBelowTolerance: current term < tail_tolerance * running sum.
///   TailBelowTolerance: geometric-majorant tail estimate < tail_tolerance * running sum.
/// The second is stricter and much more expensive for sub-geometric series such as
/// exp(-beta sqrt(B n + C)); use it when the dropped remainder itself must be bounded.
enum class Truncation { TermBelowTolerance, TailBelowTolerance };

/// What the direct sum does when max_terms is reached before the stopping rule.
enum class MaxTermsPolicy { Throw, Truncate };

/// Which level energies the direct sum runs over.
enum class SpectrumModel {
  Linearized,  // sqrt(B n + C) or B n + C: the series the strong-field engines approximate
  Full,        // the exact spectrum, n >= 0
};

struct SummationConfig {
  PartitionMethod method = PartitionMethod::DirectSum;
  double tail_tolerance = 1e-14;
  std::int64_t max_terms = 10'000'000;
  int em_beta_order = 2;
  Truncation truncation = Truncation::TermBelowTolerance;
  MaxTermsPolicy on_max_terms = MaxTermsPolicy::Throw;

  void validate() const;
};

/// One Z_1 evaluation, carried in log space; value() materializes it.
struct PartitionResult {
  double log_value = 0.0;
  PartitionMethod method = PartitionMethod::DirectSum;
  std::int64_t terms_used = 0;   // DirectSum only
  double tail_estimate = 0.0;    // DirectSum only; dropped remainder relative to the sum
  bool validity_flag = true;     // strong-field preconditions held
  std::optional<std::string> warning;

  double value() const { return std::exp(log_value); }
};

namespace detail {

// Compensated running sum of exp(-beta (E_n - E_ref)), rescaled whenever a lower level
// appears so the largest weight seen is always 1.
class DirectSumAccumulator {
 public:
  DirectSumAccumulator(double beta, double first_energy, double tolerance, Truncation rule)
      : beta_(beta), e_ref_(first_energy), tolerance_(tolerance), rule_(rule) {}

  /// Adds one level. Returns true once the stopping rule is met.
  bool add(double energy) {
    if (energy < e_ref_) rebase(energy);
    const double t = std::exp(-beta_ * (energy - e_ref_));
    const double y = sum_ + t;
    comp_ += std::abs(sum_) >= t ? (sum_ - y) + t : (t - y) + sum_;
    sum_ = y;
    ++count_;
    const bool decreasing = count_ >= 2 && (t < prev_ || t == 0.0);
    const double older = prev_;
    const double oldest = prev2_;
    prev2_ = prev_;
    prev_ = t;
    if (!decreasing) return false;
    const double total = sum_ + comp_;
    if (!(t < tolerance_ * total)) return false;
    const double r1 = older > 0.0 ? t / older : 0.0;
    const double r0 = oldest > 0.0 ? older / oldest : 0.0;
    tail_ = relative_tail(t, std::max(r0, r1), total);
    return rule_ == Truncation::TermBelowTolerance || tail_ < tolerance_;
  }

  /// Tail estimate for a sum cut short by the term cap (infinite if not decreasing).
  double forced_tail() const {
    const double r = prev2_ > 0.0 ? prev_ / prev2_ : 1.0;
    return relative_tail(prev_, r, sum_ + comp_);
  }

  std::int64_t count() const noexcept { return count_; }
  double log_sum() const { return -beta_ * e_ref_ + std::log(sum_ + comp_); }
  double tail_estimate() const noexcept { return tail_; }

 private:
  void rebase(double energy) {
    const double scale = std::exp(-beta_ * (e_ref_ - energy));
    sum_ *= scale;
    comp_ *= scale;
    prev_ *= scale;
    prev2_ *= scale;
    e_ref_ = energy;
  }

  // Tail of a geometric series with ratio max(r0, r1) that starts after term t.
  static double relative_tail(double t, double r, double total) {
    if (t == 0.0) return 0.0;
    if (r >= 1.0) return std::numeric_limits<double>::infinity();
    return t * r / (1.0 - r) / total;
  }

  double beta_;
  double e_ref_;
  double tolerance_;
  Truncation rule_;
  double sum_ = 0.0;
  double comp_ = 0.0;
  double prev_ = 0.0;
  double prev2_ = 0.0;
  double tail_ = 0.0;
  std::int64_t count_ = 0;
};

[[noreturn]] void throw_non_convergence(std::int64_t max_terms, double beta);
void require_positive_beta(double beta);

}  // namespace detail

/// Truncated sum over n = 0, 1, 2, ... of exp(-beta E_n).
/// Throws InvalidBeta for beta <= 0, and NonConvergence when max_terms is reached first
/// unless config.on_max_terms is Truncate.
template <typename LevelEnergy>
  requires std::invocable<LevelEnergy&, std::int64_t>
PartitionResult z1_direct(LevelEnergy&& level_energy, double beta, const SummationConfig& config) {
  detail::require_positive_beta(beta);
  config.validate();
  detail::DirectSumAccumulator acc(beta, static_cast<double>(level_energy(std::int64_t{0})),
                                   config.tail_tolerance, config.truncation);
  const auto finish = [&](double tail) {
    PartitionResult r;
    r.log_value = acc.log_sum();
    r.method = PartitionMethod::DirectSum;
    r.terms_used = acc.count();
    r.tail_estimate = tail;
    return r;
  };
  for (std::int64_t n = 0; n < config.max_terms; ++n) {
    if (acc.add(static_cast<double>(level_energy(n)))) return finish(acc.tail_estimate());
  }
  if (config.on_max_terms == MaxTermsPolicy::Truncate) return finish(acc.forced_tail());
  detail::throw_non_convergence(config.max_terms, beta);
}

/// Closed form of the integral of exp(-beta sqrt(B x + C)) over [0, inf).
double z1_integral(double beta, const SpectrumCoefficients& coeffs);

/// Euler-Maclaurin strong-field expansion
///   exp(-beta sqrt C) [2/(B beta^2)(1 + beta sqrt C) + 1/2 + c1 beta + c2 beta^2],
///   c1 = B/(24 sqrt C) - B^3/(720 C^(5/2)),  c2 = (A/(2C) - B^2/(8C^2))/90,
/// truncated after beta^em_beta_order.
PartitionResult z1_euler_maclaurin(double beta, const SpectrumCoefficients& coeffs,
                                   const SummationConfig& config = {});

/// High-temperature closed form (2/(B beta^2))(1 + beta sqrt(C)), without exp(-beta sqrt C).
double z1_high_t(double beta, const SpectrumCoefficients& coeffs);
double log_z1_high_t(double beta, const SpectrumCoefficients& coeffs);

/// exp(-beta C) / (1 - exp(-beta B)): the exact sum of the linear non-relativistic series.
double z1_geometric_closed(double beta, const SpectrumCoefficients& coeffs);
double log_z1_geometric_closed(double beta, const SpectrumCoefficients& coeffs);

/// ln Z_N = N ln Z_1 (no Gibbs factor).
double zN_log(const PartitionResult& z1, std::int64_t n_particles);

/// Euler-Maclaurin derivative weights -B_{2p}/(2p)! for p = 1..order: {-1/12, 1/720}.
/// Order 0 yields no weights; orders above 2 throw UnsupportedOrder.
std::vector<double> bernoulli_weights(int order);

/// sum_p w_p f^(2p-1)(0) for f(x) = exp(-beta sqrt(B x + C)), from analytic derivatives.
/// This is what the Euler-Maclaurin formula prescribes for the linearized series; the
/// literal beta and beta^2 coefficients only agree with it in the leading B/(24 sqrt C) term.
double em_derivative_corrections(double beta, const SpectrumCoefficients& coeffs, int order);

/// Level energies of the series summed by the direct engine for the given coefficients/params.
double linearized_level(const SpectrumCoefficients& coeffs, std::int64_t n);

/// Dispatches to the engine named by config.method for a physical ring.
/// A zero flux sends strong-field methods to the full-spectrum direct sum and sets warning.
PartitionResult evaluate_z1(const RingParams& params, Regime regime, Fidelity fidelity,
                            SpectrumModel model, double beta, const SummationConfig& config);

bool method_applicable(PartitionMethod method, Regime regime) noexcept;

std::string_view to_string(PartitionMethod method) noexcept;
std::optional<PartitionMethod> parse_partition_method(std::string_view name) noexcept;

}  // namespace abring
