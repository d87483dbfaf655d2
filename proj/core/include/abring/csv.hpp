#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <string_view>

#include "abring/sweep.hpp"

namespace abring {

inline constexpr std::string_view kSweepCsvHeader =
    "regime,method,fidelity,phi,tau,F_per_N,U_per_N,S_per_NkB,Cv_per_NkB,validity,error";

/// Shortest decimal that round-trips to the same double.
std::string format_number(double value);

/// RFC 4180 quoting when the field contains a comma, quote or newline.
std::string csv_field(std::string_view text);

void write_csv(const SweepTable& table, std::ostream& out);
void write_csv(const ComparisonTable& table, std::ostream& out);

/// Writes the table to path. Throws Error{Io} with the path on failure and
/// Error{Config} for an empty table.
void emit_csv(const SweepTable& table, const std::filesystem::path& path);
void emit_csv(const ComparisonTable& table, const std::filesystem::path& path);

}  // namespace abring
