#include "abring/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "abring/csv.hpp"
#include "abring/error.hpp"

namespace abring {
namespace {

[[noreturn]] void config_error(const std::string& message) {
  throw Error(ErrorCode::Config, message);
}

std::string describe(const Error& e) {
  return std::string(to_string(e.code())) + ": " + e.what();
}

RingParams ring_for(const SweepConfig& config, double phi) {
  RingParams ring = config.ring;
  ring.flux_ratio = phi;
  return ring;
}

bool closed_form_thermo(Regime regime, PartitionMethod method) {
  return (regime == Regime::Relativistic && method == PartitionMethod::HighTClosed) ||
         (regime == Regime::NonRelativistic && method == PartitionMethod::GeometricClosed);
}

}  // namespace

void SweepConfig::validate() const {
  if (flux_ratios.empty()) config_error("flux_ratio: at least one value is required");
  const bool strong_field_only = method != PartitionMethod::DirectSum;
  for (double phi : flux_ratios) {
    if (!std::isfinite(phi) || phi < 0.0) {
      config_error("flux_ratio: " + format_number(phi) + " is out of range (accepted: >= 0)");
    }
    if (strong_field_only && phi == 0.0) {
      config_error("flux_ratio: 0 is out of range for method " +
                   std::string(to_string(method)) + " (accepted: > 0)");
    }
  }
  if (!(std::isfinite(tau_min) && tau_min > 0.0)) {
    config_error("tau_min: " + format_number(tau_min) + " is out of range (accepted: > 0)");
  }
  if (!(std::isfinite(tau_max) && tau_max > tau_min)) {
    config_error("tau_max: " + format_number(tau_max) +
                 " is out of range (accepted: > tau_min = " + format_number(tau_min) + ")");
  }
  if (tau_steps < 2) {
    config_error("tau_steps: " + std::to_string(tau_steps) + " is out of range (accepted: >= 2)");
  }
  if (!method_applicable(method, regime)) {
    config_error("method: " + std::string(to_string(method)) + " is not available for regime " +
                 std::string(to_string(regime)) +
                 (regime == Regime::Relativistic ? " (accepted: direct, em, high-t)"
                                                 : " (accepted: direct, geometric)"));
  }
  if (!(std::isfinite(ring.mass) && ring.mass > 0.0)) {
    config_error("mass: " + format_number(ring.mass) + " is out of range (accepted: > 0)");
  }
  if (!(std::isfinite(ring.radius) && ring.radius > 0.0)) {
    config_error("radius: " + format_number(ring.radius) + " is out of range (accepted: > 0)");
  }
  if (ring.particle_count < 1) {
    config_error("n_fermions: " + std::to_string(ring.particle_count) +
                 " is out of range (accepted: >= 1)");
  }
  if (ring.charge_sign != ChargeSign::Negative) {
    config_error("charge_sign: only -1 populates the ensemble");
  }
  if (em_order < 0 || em_order > 2) {
    config_error("em_order: " + std::to_string(em_order) + " is out of range (accepted: 0, 1, 2)");
  }
  if (!(tail_tolerance > 0.0 && tail_tolerance < 1.0)) {
    config_error("tail_tolerance: " + format_number(tail_tolerance) +
                 " is out of range (accepted: 0 < value < 1)");
  }
  if (max_terms < 1) {
    config_error("max_terms: " + std::to_string(max_terms) + " is out of range (accepted: >= 1)");
  }
}

std::vector<double> SweepConfig::tau_grid() const {
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(tau_steps));
  const double last = static_cast<double>(tau_steps - 1);
  if (grid_scale == GridScale::Linear) {
    for (std::int64_t i = 0; i < tau_steps; ++i) {
      grid.push_back(tau_min + (tau_max - tau_min) * (static_cast<double>(i) / last));
    }
  } else {
    const double lo = std::log(tau_min);
    const double hi = std::log(tau_max);
    for (std::int64_t i = 0; i < tau_steps; ++i) {
      grid.push_back(std::exp(lo + (hi - lo) * (static_cast<double>(i) / last)));
    }
  }
  grid.front() = tau_min;
  grid.back() = tau_max;
  return grid;
}

SummationConfig SweepConfig::summation() const {
  SummationConfig s;
  s.method = method;
  s.tail_tolerance = tail_tolerance;
  s.max_terms = max_terms;
  s.em_beta_order = em_order;
  return s;
}

PointEvaluation evaluate_point(const SweepConfig& config, double phi, double tau) {
  if (!(tau > 0.0)) {
    throw Error(ErrorCode::InvalidBeta, "tau must be > 0, got " + format_number(tau));
  }
  const RingParams ring = ring_for(config, phi);
  ring.validate();
  const double beta = 1.0 / tau;
  const std::int64_t n = ring.particle_count;

  PointEvaluation out;
  if (phi > 0.0 && closed_form_thermo(config.regime, config.method)) {
    out.point = config.regime == Regime::Relativistic
                    ? thermo_rel_closed(beta, relativistic_coefficients(ring, config.fidelity), n)
                    : thermo_nonrel_closed(beta, nonrelativistic_coefficients(ring), n,
                                           config.fidelity);
    out.validity = strong_field_valid(phi);
    return out;
  }

  const SummationConfig summation = config.summation();
  const auto log_zn = [&](double b) {
    return zN_log(evaluate_z1(ring, config.regime, config.fidelity, config.spectrum, b, summation),
                  n);
  };
  const PartitionResult centre =
      evaluate_z1(ring, config.regime, config.fidelity, config.spectrum, beta, summation);
  NumericDerivativeOptions options;
  options.n_particles = n;
  options.regime = config.regime;
  out.point = thermo_numeric(log_zn, beta, options);
  out.validity = centre.validity_flag;
  out.warning = centre.warning;
  return out;
}

SweepTable run_sweep(const SweepConfig& config) {
  config.validate();
  const std::vector<double> taus = config.tau_grid();
  SweepTable table;
  table.reserve(config.flux_ratios.size() * taus.size());
  for (double phi : config.flux_ratios) {
    for (double tau : taus) {
      SweepRow row;
      row.regime = config.regime;
      row.method = config.method;
      row.fidelity = config.fidelity;
      row.phi = phi;
      row.tau = tau;
      try {
        PointEvaluation eval = evaluate_point(config, phi, tau);
        row.point = eval.point;
        row.validity = eval.validity;
        row.warning = std::move(eval.warning);
      } catch (const Error& e) {
        row.error = describe(e);
      }
      table.push_back(std::move(row));
    }
  }
  return table;
}

ComparisonTable compare_methods(const SweepConfig& config,
                                const std::vector<PartitionMethod>& methods) {
  if (methods.size() < 2) config_error("compare: at least two methods are required");
  for (PartitionMethod m : methods) {
    if (!method_applicable(m, config.regime)) {
      config_error("compare: method " + std::string(to_string(m)) +
                   " is not available for regime " + std::string(to_string(config.regime)));
    }
    if (std::count(methods.begin(), methods.end(), m) > 1) {
      config_error("compare: method " + std::string(to_string(m)) + " is listed twice");
    }
  }
  SweepConfig base = config;
  base.method = PartitionMethod::DirectSum;  // the zero-flux check in validate() is per method
  base.validate();

  ComparisonTable table;
  table.regime = config.regime;
  table.fidelity = config.fidelity;
  table.methods = methods;
  for (std::size_t i = 0; i < methods.size(); ++i) {
    for (std::size_t j = i + 1; j < methods.size(); ++j) {
      if (methods[i] == PartitionMethod::DirectSum) {
        table.pairs.emplace_back(j, i);
      } else {
        table.pairs.emplace_back(i, j);
      }
    }
  }

  const std::vector<double> taus = config.tau_grid();
  for (double phi : config.flux_ratios) {
    const RingParams ring = ring_for(config, phi);
    for (double tau : taus) {
      ComparisonRow row;
      row.phi = phi;
      row.tau = tau;
      for (PartitionMethod m : methods) {
        SummationConfig summation = config.summation();
        summation.method = m;
        try {
          row.log_z1.emplace_back(
              evaluate_z1(ring, config.regime, config.fidelity, config.spectrum, 1.0 / tau,
                          summation)
                  .log_value);
        } catch (const Error& e) {
          row.log_z1.emplace_back(std::nullopt);
          if (!row.error.empty()) row.error += "; ";
          row.error += std::string(to_string(m)) + " " + describe(e);
        }
      }
      for (std::size_t k = 0; k < table.pairs.size(); ++k) {
        const auto [i, ref] = table.pairs[k];
        if (!row.log_z1[i] || !row.log_z1[ref]) {
          row.deviations.emplace_back(std::nullopt);
          continue;
        }
        const double dev = std::abs(std::expm1(*row.log_z1[i] - *row.log_z1[ref]));
        row.deviations.emplace_back(dev);
        if (!row.max_deviation || dev > *row.max_deviation) {
          row.max_deviation = dev;
          row.max_pair = k;
        }
      }
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

std::string_view to_string(GridScale scale) noexcept {
  return scale == GridScale::Linear ? "linear" : "log";
}

}  // namespace abring
