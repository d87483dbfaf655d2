#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "abring/partition.hpp"
#include "abring/spectrum.hpp"
#include "abring/thermo.hpp"

namespace abring {

enum class GridScale { Linear, Log };

/// A full temperature sweep: one row per (flux ratio, tau) pair.
struct SweepConfig {
  Regime regime = Regime::Relativistic;
  std::vector<double> flux_ratios;
  double tau_min = 0.1;
  double tau_max = 20.0;
  std::int64_t tau_steps = 200;
  GridScale grid_scale = GridScale::Linear;
  PartitionMethod method = PartitionMethod::HighTClosed;
  Fidelity fidelity = Fidelity::DerivedConsistent;
  RingParams ring;  // flux_ratio is replaced per row
  int em_order = 2;
  SpectrumModel spectrum = SpectrumModel::Linearized;
  double tail_tolerance = 1e-14;
  std::int64_t max_terms = 10'000'000;
  std::string output_path;  // empty: standard output

  /// Throws Error{Config} naming the offending key and its accepted range.
  void validate() const;
  std::vector<double> tau_grid() const;
  SummationConfig summation() const;
};

struct SweepRow {
  Regime regime = Regime::Relativistic;
  PartitionMethod method = PartitionMethod::HighTClosed;
  Fidelity fidelity = Fidelity::DerivedConsistent;
  double phi = 0.0;
  double tau = 0.0;
  std::optional<ThermoPoint> point;  // empty when the row failed
  bool validity = false;
  std::string error;
  std::optional<std::string> warning;

  bool failed() const noexcept { return !point.has_value(); }
};

using SweepTable = std::vector<SweepRow>;

struct PointEvaluation {
  ThermoPoint point;
  bool validity = false;
  std::optional<std::string> warning;
};

/// One thermodynamic point. Closed forms are used for (relativistic, high-t) and
/// (non-relativistic, geometric); every other method goes through thermo_numeric.
PointEvaluation evaluate_point(const SweepConfig& config, double phi, double tau);

/// Rows ordered by phi (as listed) then tau. Per-row failures are recorded, not thrown.
SweepTable run_sweep(const SweepConfig& config);

struct ComparisonRow {
  double phi = 0.0;
  double tau = 0.0;
  std::vector<std::optional<double>> log_z1;       // per method
  std::vector<std::optional<double>> deviations;  // per pair, see ComparisonTable::pairs
  std::optional<double> max_deviation;
  std::optional<std::size_t> max_pair;
  std::string error;
};

struct ComparisonTable {
  Regime regime = Regime::Relativistic;
  Fidelity fidelity = Fidelity::DerivedConsistent;
  std::vector<PartitionMethod> methods;
  /// (index, reference index): deviation is |Z_index / Z_reference - 1|.
  /// DirectSum is always the reference of any pair it belongs to.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<ComparisonRow> rows;
};

/// ln Z_1 from each method on the config's grid, with pairwise relative deviations.
/// Throws Error{Config} for fewer than two methods or a method invalid for the regime.
ComparisonTable compare_methods(const SweepConfig& config,
                                const std::vector<PartitionMethod>& methods);

std::string_view to_string(GridScale scale) noexcept;

}  // namespace abring
