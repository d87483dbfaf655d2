#include "abring/csv.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

#include "abring/error.hpp"

namespace abring {
namespace {

void write_row(std::ostream& out, const SweepRow& row) {
  out << to_string(row.regime) << ',' << to_string(row.method) << ',' << to_string(row.fidelity)
      << ',' << format_number(row.phi) << ',' << format_number(row.tau) << ',';
  if (row.point) {
    const ThermoPoint& p = *row.point;
    out << format_number(p.f_per_n) << ',' << format_number(p.u_per_n) << ','
        << format_number(p.s_per_nk) << ',' << format_number(p.cv_per_nk) << ','
        << (row.validity ? "true" : "false") << ',';
  } else {
    out << ",,,,,";
  }
  out << csv_field(row.error) << '\n';
}

template <typename Table>
void emit(const Table& table, bool empty, const std::filesystem::path& path) {
  if (empty) throw Error(ErrorCode::Config, "refusing to write an empty table to " + path.string());
  // Build in memory so a failed run never leaves a truncated file behind.
  std::ostringstream buffer;
  write_csv(table, buffer);
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorCode::Io, "cannot open " + path.string() + " for writing");
  file << buffer.str();
  file.flush();
  if (!file) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

}  // namespace

std::string format_number(double value) {
  std::array<char, 64> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) return "nan";
  return std::string(buf.data(), end);
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(text);
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

void write_csv(const SweepTable& table, std::ostream& out) {
  out << kSweepCsvHeader << '\n';
  for (const SweepRow& row : table) write_row(out, row);
}

void write_csv(const ComparisonTable& table, std::ostream& out) {
  const auto name = [&](std::size_t i) { return std::string(to_string(table.methods[i])); };
  out << "regime,fidelity,phi,tau,beta";
  for (std::size_t i = 0; i < table.methods.size(); ++i) out << ",lnZ1_" << name(i);
  for (const auto& [i, ref] : table.pairs) out << ",reldev_" << name(i) << "_vs_" << name(ref);
  out << ",max_reldev,max_pair,error\n";

  for (const ComparisonRow& row : table.rows) {
    out << to_string(table.regime) << ',' << to_string(table.fidelity) << ','
        << format_number(row.phi) << ',' << format_number(row.tau) << ','
        << format_number(1.0 / row.tau);
    for (const auto& v : row.log_z1) out << ',' << (v ? format_number(*v) : "");
    for (const auto& d : row.deviations) out << ',' << (d ? format_number(*d) : "");
    out << ',' << (row.max_deviation ? format_number(*row.max_deviation) : "") << ',';
    if (row.max_pair) {
      const auto [i, ref] = table.pairs[*row.max_pair];
      out << name(i) << "_vs_" << name(ref);
    }
    out << ',' << csv_field(row.error) << '\n';
  }
}

void emit_csv(const SweepTable& table, const std::filesystem::path& path) {
  emit(table, table.empty(), path);
}

void emit_csv(const ComparisonTable& table, const std::filesystem::path& path) {
  emit(table, table.rows.empty(), path);
}

}  // namespace abring
