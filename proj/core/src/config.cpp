#include "abring/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "abring/csv.hpp"
#include "abring/error.hpp"

namespace abring {
namespace {

[[noreturn]] void config_error(const std::string& message) {
  throw Error(ErrorCode::Config, message);
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view key, std::string_view text) {
  text = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    config_error(std::string(key) + ": '" + std::string(text) + "' is not a number");
  }
  return value;
}

std::int64_t parse_integer(std::string_view key, std::string_view text) {
  text = trim(text);
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    config_error(std::string(key) + ": '" + std::string(text) + "' is not an integer");
  }
  return value;
}

std::vector<double> parse_list(std::string_view key, std::string_view text) {
  std::vector<double> values;
  while (true) {
    const auto comma = text.find(',');
    values.push_back(parse_double(key, text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return values;
}

[[noreturn]] void bad_choice(std::string_view key, std::string_view value,
                             std::string_view accepted) {
  config_error(std::string(key) + ": '" + std::string(value) + "' is not accepted (accepted: " +
               std::string(accepted) + ")");
}

std::string join(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += format_number(values[i]);
  }
  return out;
}

std::string accepted_keys() {
  std::string out;
  for (std::string_view k : config_keys()) {
    if (!out.empty()) out += ", ";
    out += k;
  }
  return out;
}

bool known_key(std::string_view key) {
  const auto& keys = config_keys();
  return std::find(keys.begin(), keys.end(), key) != keys.end();
}

}  // namespace

const std::vector<std::string_view>& config_keys() {
  static const std::vector<std::string_view> keys = {
      "preset",  "regime",   "flux_ratio", "mass",           "radius",    "n_fermions",
      "tau_min", "tau_max",  "tau_steps",  "grid",           "method",    "fidelity",
      "em_order", "spectrum", "tail_tolerance", "max_terms", "out",
  };
  return keys;
}

SweepConfig preset_config(std::string_view name) {
  SweepConfig c;
  c.flux_ratios = {50.0, 100.0, 150.0, 200.0};
  c.tau_steps = 200;
  c.grid_scale = GridScale::Linear;
  c.fidelity = Fidelity::DerivedConsistent;
  if (name == "fig1") {
    c.regime = Regime::Relativistic;
    c.method = PartitionMethod::HighTClosed;
    c.tau_min = 0.1;
    c.tau_max = 20.0;
  } else if (name == "fig2") {
    c.regime = Regime::NonRelativistic;
    c.method = PartitionMethod::GeometricClosed;
    c.tau_min = 50.0;
    c.tau_max = 10000.0;
  } else {
    bad_choice("preset", name, "fig1, fig2");
  }
  return c;
}

KeyValues parse_key_values(std::string_view text, std::string_view origin) {
  KeyValues values;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = std::string(origin) + ":" + std::to_string(line_no) + ": ";
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      config_error(where + "expected 'key = value', got '" + std::string(line) + "'");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (!known_key(key)) {
      config_error(where + "unknown key '" + key + "' (accepted: " + accepted_keys() + ")");
    }
    values.emplace_back(key, value);
  }
  return values;
}

KeyValues read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_key_values(text.str(), path.string());
}

void apply_key_value(SweepConfig& c, std::string_view key, std::string_view value) {
  value = trim(value);
  if (key == "preset") {
    return;  // consumed by resolve_config
  } else if (key == "regime") {
    if (value == "relativistic") {
      c.regime = Regime::Relativistic;
    } else if (value == "nonrelativistic") {
      c.regime = Regime::NonRelativistic;
    } else {
      bad_choice(key, value, "relativistic, nonrelativistic");
    }
  } else if (key == "flux_ratio") {
    c.flux_ratios = parse_list(key, value);
  } else if (key == "mass") {
    c.ring.mass = parse_double(key, value);
  } else if (key == "radius") {
    c.ring.radius = parse_double(key, value);
  } else if (key == "n_fermions") {
    c.ring.particle_count = parse_integer(key, value);
  } else if (key == "tau_min") {
    c.tau_min = parse_double(key, value);
  } else if (key == "tau_max") {
    c.tau_max = parse_double(key, value);
  } else if (key == "tau_steps") {
    c.tau_steps = parse_integer(key, value);
  } else if (key == "grid") {
    if (value == "linear") {
      c.grid_scale = GridScale::Linear;
    } else if (value == "log") {
      c.grid_scale = GridScale::Log;
    } else {
      bad_choice(key, value, "linear, log");
    }
  } else if (key == "method") {
    const auto m = parse_partition_method(value);
    if (!m) bad_choice(key, value, "direct, em, high-t, geometric");
    c.method = *m;
  } else if (key == "fidelity") {
    if (value == "paper") {
      c.fidelity = Fidelity::PaperLiteral;
    } else if (value == "derived") {
      c.fidelity = Fidelity::DerivedConsistent;
    } else {
      bad_choice(key, value, "paper, derived");
    }
  } else if (key == "em_order") {
    const std::int64_t order = parse_integer(key, value);
    if (order < 0 || order > 2) bad_choice(key, value, "0, 1, 2");
    c.em_order = static_cast<int>(order);
  } else if (key == "spectrum") {
    if (value == "linearized") {
      c.spectrum = SpectrumModel::Linearized;
    } else if (value == "full") {
      c.spectrum = SpectrumModel::Full;
    } else {
      bad_choice(key, value, "linearized, full");
    }
  } else if (key == "tail_tolerance") {
    c.tail_tolerance = parse_double(key, value);
  } else if (key == "max_terms") {
    c.max_terms = parse_integer(key, value);
  } else if (key == "out") {
    c.output_path = std::string(value);
  } else {
    config_error("unknown key '" + std::string(key) + "' (accepted: " + accepted_keys() + ")");
  }
}

SweepConfig resolve_config(const KeyValues& file_values, const KeyValues& cli_values) {
  std::string preset = "fig1";
  for (const KeyValues* layer : {&file_values, &cli_values}) {
    for (const auto& [k, v] : *layer) {
      if (k == "preset") preset = v;
    }
  }
  SweepConfig config = preset_config(preset);
  for (const KeyValues* layer : {&file_values, &cli_values}) {
    for (const auto& [k, v] : *layer) apply_key_value(config, k, v);
  }
  config.validate();
  return config;
}

SweepConfig parse_config(const KeyValues& cli_values,
                         const std::optional<std::filesystem::path>& file) {
  const KeyValues file_values = file ? read_config_file(*file) : KeyValues{};
  return resolve_config(file_values, cli_values);
}

std::string format_config(const SweepConfig& c) {
  std::ostringstream out;
  out << "regime = " << to_string(c.regime) << '\n'
      << "flux_ratio = " << join(c.flux_ratios) << '\n'
      << "mass = " << format_number(c.ring.mass) << '\n'
      << "radius = " << format_number(c.ring.radius) << '\n'
      << "n_fermions = " << c.ring.particle_count << '\n'
      << "tau_min = " << format_number(c.tau_min) << '\n'
      << "tau_max = " << format_number(c.tau_max) << '\n'
      << "tau_steps = " << c.tau_steps << '\n'
      << "grid = " << to_string(c.grid_scale) << '\n'
      << "method = " << to_string(c.method) << '\n'
      << "fidelity = " << to_string(c.fidelity) << '\n'
      << "em_order = " << c.em_order << '\n'
      << "spectrum = " << (c.spectrum == SpectrumModel::Linearized ? "linearized" : "full") << '\n'
      << "tail_tolerance = " << format_number(c.tail_tolerance) << '\n'
      << "max_terms = " << c.max_terms << '\n'
      << "out = " << c.output_path << '\n';
  return out.str();
}

}  // namespace abring
