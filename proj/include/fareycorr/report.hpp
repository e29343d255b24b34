#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fareycorr::report {

inline constexpr std::string_view kCsvHeader = "lambda,empirical_G,theory_G,pair_count,abs_err";

/// One output row. `lambda` is kept as the exact decimal text it was given as.
struct ReportRow {
  std::string lambda;
  std::optional<double> empirical_G;
  std::optional<double> theory_G;
  std::optional<std::uint64_t> pair_count;
  std::optional<double> abs_err;

  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

/// Fills abs_err when both values are present.
ReportRow make_row(std::string lambda, std::optional<double> empirical,
                   std::optional<double> theory, std::optional<std::uint64_t> pairs);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

void write_csv(std::ostream& out, std::span<const ReportRow> rows);
void write_json(std::ostream& out, std::span<const ReportRow> rows);

/// Throws std::runtime_error on a malformed document.
std::vector<ReportRow> parse_csv(std::istream& in);
std::vector<ReportRow> parse_json(std::istream& in);

}  // namespace fareycorr::report
