#include "abring/partition.hpp"

#include <array>
#include <string>

#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/special_functions/factorials.hpp>

namespace abring {
namespace {

constexpr int kMaxEmOrder = 2;

void require_variant(const SpectrumCoefficients& c, Regime expected, std::string_view engine) {
  if (c.variant != expected) {
    throw Error(ErrorCode::MethodNotApplicable,
                std::string(engine) + " needs " + std::string(to_string(expected)) +
                    " coefficients");
  }
}

void require_field(const SpectrumCoefficients& c) {
  if (!(c.B > 0.0)) {
    throw Error(ErrorCode::DegenerateField,
                "linear coefficient B = " + std::to_string(c.B) +
                    " must be > 0; the strong-field closed forms diverge at zero flux");
  }
}

void check_relativistic(double beta, const SpectrumCoefficients& c, std::string_view engine) {
  detail::require_positive_beta(beta);
  require_variant(c, Regime::Relativistic, engine);
  require_field(c);
  if (!(c.C > 0.0)) {
    throw Error(ErrorCode::InvalidParams, "constant coefficient C must be > 0");
  }
}

PartitionResult closed_result(double log_value, PartitionMethod method, double flux_ratio) {
  PartitionResult r;
  r.log_value = log_value;
  r.method = method;
  r.validity_flag = strong_field_valid(flux_ratio);
  return r;
}

}  // namespace

namespace detail {

void throw_non_convergence(std::int64_t max_terms, double beta) {
  throw Error(ErrorCode::NonConvergence,
              "direct sum did not reach tolerance within max_terms = " + std::to_string(max_terms) +
                  " at beta = " + std::to_string(beta));
}

void require_positive_beta(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw Error(ErrorCode::InvalidBeta, "beta must be finite and > 0, got " + std::to_string(beta));
  }
}

}  // namespace detail

void SummationConfig::validate() const {
  if (!(tail_tolerance > 0.0 && tail_tolerance < 1.0)) {
    throw Error(ErrorCode::Config,
                "tail_tolerance must lie in (0, 1), got " + std::to_string(tail_tolerance));
  }
  if (max_terms < 1) {
    throw Error(ErrorCode::Config, "max_terms must be >= 1, got " + std::to_string(max_terms));
  }
  if (em_beta_order < 0 || em_beta_order > kMaxEmOrder) {
    throw Error(ErrorCode::UnsupportedOrder,
                "em_beta_order must be 0, 1 or 2, got " + std::to_string(em_beta_order));
  }
}

double z1_integral(double beta, const SpectrumCoefficients& coeffs) {
  check_relativistic(beta, coeffs, "z1_integral");
  const double x = beta * std::sqrt(coeffs.C);
  return 2.0 / (coeffs.B * beta * beta) * (1.0 + x) * std::exp(-x);
}

PartitionResult z1_euler_maclaurin(double beta, const SpectrumCoefficients& coeffs,
                                   const SummationConfig& config) {
  check_relativistic(beta, coeffs, "z1_euler_maclaurin");
  config.validate();
  const double A = coeffs.A;
  const double B = coeffs.B;
  const double C = coeffs.C;
  const double sqrt_c = std::sqrt(C);

  double bracket = 2.0 / (B * beta * beta) * (1.0 + beta * sqrt_c) + 0.5;
  if (config.em_beta_order >= 1) {
    const double sqrt_c5 = C * C * sqrt_c;
    bracket += (B / (24.0 * sqrt_c) - B * B * B / (720.0 * sqrt_c5)) * beta;
  }
  if (config.em_beta_order >= 2) {
    bracket += (A / (2.0 * C) - B * B / (8.0 * C * C)) * beta * beta / 90.0;
  }
  if (!(bracket > 0.0)) {
    throw Error(ErrorCode::NonPositivePartition,
                "Euler-Maclaurin bracket is not positive at beta = " + std::to_string(beta));
  }
  return closed_result(-beta * sqrt_c + std::log(bracket), PartitionMethod::EulerMaclaurin,
                       coeffs.flux_ratio);
}

double log_z1_high_t(double beta, const SpectrumCoefficients& coeffs) {
  check_relativistic(beta, coeffs, "z1_high_t");
  return std::log(2.0 / coeffs.B) - 2.0 * std::log(beta) + std::log1p(beta * std::sqrt(coeffs.C));
}

double z1_high_t(double beta, const SpectrumCoefficients& coeffs) {
  check_relativistic(beta, coeffs, "z1_high_t");
  return 2.0 / (coeffs.B * beta * beta) * (1.0 + beta * std::sqrt(coeffs.C));
}

double log_z1_geometric_closed(double beta, const SpectrumCoefficients& coeffs) {
  detail::require_positive_beta(beta);
  require_variant(coeffs, Regime::NonRelativistic, "z1_geometric_closed");
  require_field(coeffs);
  return -beta * coeffs.C - std::log(-std::expm1(-beta * coeffs.B));
}

double z1_geometric_closed(double beta, const SpectrumCoefficients& coeffs) {
  detail::require_positive_beta(beta);
  require_variant(coeffs, Regime::NonRelativistic, "z1_geometric_closed");
  require_field(coeffs);
  return std::exp(-beta * coeffs.C) / -std::expm1(-beta * coeffs.B);
}

double zN_log(const PartitionResult& z1, std::int64_t n_particles) {
  if (n_particles < 1) {
    throw Error(ErrorCode::InvalidParams,
                "particle count must be >= 1, got " + std::to_string(n_particles));
  }
  return static_cast<double>(n_particles) * z1.log_value;
}

std::vector<double> bernoulli_weights(int order) {
  if (order < 0 || order > kMaxEmOrder) {
    throw Error(ErrorCode::UnsupportedOrder,
                "Euler-Maclaurin order must be 0, 1 or 2, got " + std::to_string(order));
  }
  std::vector<double> weights;
  for (int p = 1; p <= order; ++p) {
    weights.push_back(-boost::math::bernoulli_b2n<double>(p) /
                      boost::math::factorial<double>(static_cast<unsigned>(2 * p)));
  }
  return weights;
}

double em_derivative_corrections(double beta, const SpectrumCoefficients& coeffs, int order) {
  check_relativistic(beta, coeffs, "em_derivative_corrections");
  const std::vector<double> w = bernoulli_weights(order);
  const double B = coeffs.B;
  const double u = std::sqrt(coeffs.C);
  // Derivatives of u(x) = sqrt(B x + C) at x = 0.
  const double u1 = B / (2.0 * u);
  const double u2 = -B * B / (4.0 * u * u * u);
  const double u3 = 3.0 * B * B * B / (8.0 * u * u * u * u * u);
  const double f0 = std::exp(-beta * u);
  const std::array<double, kMaxEmOrder> odd_derivatives = {
      -beta * u1 * f0,
      (-beta * u3 + 3.0 * beta * beta * u1 * u2 - beta * beta * beta * u1 * u1 * u1) * f0,
  };
  double sum = 0.0;
  for (std::size_t p = 0; p < w.size(); ++p) sum += w[p] * odd_derivatives[p];
  return sum;
}

double linearized_level(const SpectrumCoefficients& coeffs, std::int64_t n) {
  const double linear = coeffs.B * static_cast<double>(n) + coeffs.C;
  return coeffs.variant == Regime::Relativistic ? std::sqrt(linear) : linear;
}

bool method_applicable(PartitionMethod method, Regime regime) noexcept {
  switch (method) {
    case PartitionMethod::DirectSum: return true;
    case PartitionMethod::EulerMaclaurin:
    case PartitionMethod::HighTClosed: return regime == Regime::Relativistic;
    case PartitionMethod::GeometricClosed: return regime == Regime::NonRelativistic;
  }
  return false;
}

PartitionResult evaluate_z1(const RingParams& params, Regime regime, Fidelity fidelity,
                            SpectrumModel model, double beta, const SummationConfig& config) {
  params.validate();
  config.validate();
  detail::require_positive_beta(beta);
  PartitionMethod method = config.method;
  if (!method_applicable(method, regime)) {
    throw Error(ErrorCode::MethodNotApplicable,
                std::string(to_string(method)) + " is not available for the " +
                    std::string(to_string(regime)) + " regime");
  }

  std::optional<std::string> warning;
  const bool strong_field_path = method != PartitionMethod::DirectSum ||
                                 model == SpectrumModel::Linearized;
  if (strong_field_path && params.flux_ratio == 0.0) {
    warning = std::string(to_string(method)) +
              " needs a nonzero flux; using the full-spectrum direct sum instead";
    method = PartitionMethod::DirectSum;
    model = SpectrumModel::Full;
  }

  PartitionResult result;
  switch (method) {
    case PartitionMethod::DirectSum:
      if (model == SpectrumModel::Full) {
        if (regime == Regime::Relativistic) {
          result = z1_direct([&](std::int64_t n) { return relativistic_energy(params, n); },
                             beta, config);
        } else {
          result = z1_direct([&](std::int64_t n) { return nonrelativistic_energy(params, n); },
                             beta, config);
        }
        // The full spectrum needs no strong-field approximation.
        result.validity_flag = true;
      } else {
        const SpectrumCoefficients coeffs = regime == Regime::Relativistic
                                                ? relativistic_coefficients(params, fidelity)
                                                : nonrelativistic_coefficients(params);
        result = z1_direct([&](std::int64_t n) { return linearized_level(coeffs, n); }, beta,
                           config);
        result.validity_flag = strong_field_valid(params.flux_ratio);
      }
      break;
    case PartitionMethod::EulerMaclaurin:
      result = z1_euler_maclaurin(beta, relativistic_coefficients(params, fidelity), config);
      break;
    case PartitionMethod::HighTClosed:
      result = closed_result(log_z1_high_t(beta, relativistic_coefficients(params, fidelity)),
                             PartitionMethod::HighTClosed, params.flux_ratio);
      break;
    case PartitionMethod::GeometricClosed:
      result = closed_result(log_z1_geometric_closed(beta, nonrelativistic_coefficients(params)),
                             PartitionMethod::GeometricClosed, params.flux_ratio);
      break;
  }
  result.warning = std::move(warning);
  return result;
}

std::string_view to_string(PartitionMethod method) noexcept {
  switch (method) {
    case PartitionMethod::DirectSum: return "direct";
    case PartitionMethod::EulerMaclaurin: return "em";
    case PartitionMethod::HighTClosed: return "high-t";
    case PartitionMethod::GeometricClosed: return "geometric";
  }
  return "unknown";
}

std::optional<PartitionMethod> parse_partition_method(std::string_view name) noexcept {
  if (name == "direct") return PartitionMethod::DirectSum;
  if (name == "em") return PartitionMethod::EulerMaclaurin;
  if (name == "high-t") return PartitionMethod::HighTClosed;
  if (name == "geometric") return PartitionMethod::GeometricClosed;
  return std::nullopt;
}

}  // namespace abring
