#include "fareycorr/report.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace fareycorr::report {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields(1);
  for (char c : line) {
    if (c == ',') {
      fields.emplace_back();
    } else if (c != '\r') {
      fields.back().push_back(c);
    }
  }
  return fields;
}

std::optional<double> parse_double_field(const std::string& s) {
  if (s.empty()) {
    return std::nullopt;
  }
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::runtime_error("malformed number '" + s + "'");
  }
  return v;
}

std::optional<std::uint64_t> parse_count_field(const std::string& s) {
  if (s.empty()) {
    return std::nullopt;
  }
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::runtime_error("malformed count '" + s + "'");
  }
  return v;
}

template <typename T>
std::string field(const std::optional<T>& v) {
  if (!v) {
    return {};
  }
  if constexpr (std::is_same_v<T, double>) {
    return format_double(*v);
  } else {
    return std::to_string(*v);
  }
}

}  // namespace

ReportRow make_row(std::string lambda, std::optional<double> empirical,
                   std::optional<double> theory, std::optional<std::uint64_t> pairs) {
  ReportRow row{std::move(lambda), empirical, theory, pairs, std::nullopt};
  if (empirical && theory) {
    row.abs_err = std::abs(*empirical - *theory);
  }
  return row;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) {
    throw std::runtime_error("cannot format double");
  }
  return std::string(buf, ptr);
}

void write_csv(std::ostream& out, std::span<const ReportRow> rows) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.lambda << ',' << field(r.empirical_G) << ',' << field(r.theory_G) << ','
        << field(r.pair_count) << ',' << field(r.abs_err) << '\n';
  }
}

void write_json(std::ostream& out, std::span<const ReportRow> rows) {
  auto j = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json obj = nlohmann::json::object();
    obj["lambda"] = r.lambda;
    obj["empirical_G"] = r.empirical_G ? nlohmann::json(*r.empirical_G) : nlohmann::json(nullptr);
    obj["theory_G"] = r.theory_G ? nlohmann::json(*r.theory_G) : nlohmann::json(nullptr);
    obj["pair_count"] = r.pair_count ? nlohmann::json(*r.pair_count) : nlohmann::json(nullptr);
    obj["abs_err"] = r.abs_err ? nlohmann::json(*r.abs_err) : nlohmann::json(nullptr);
    j.push_back(std::move(obj));
  }
  out << j.dump(2) << '\n';
}

std::vector<ReportRow> parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("empty CSV");
  }
  if (!line.empty() && line.back() == '\r') {
    line.pop_back();
  }
  if (line != kCsvHeader) {
    throw std::runtime_error("unexpected CSV header '" + line + "'");
  }
  std::vector<ReportRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) {
      continue;
    }
    auto f = split_fields(line);
    if (f.size() != 5) {
      throw std::runtime_error("expected 5 CSV fields, got " + std::to_string(f.size()));
    }
    rows.push_back({f[0], parse_double_field(f[1]), parse_double_field(f[2]),
                    parse_count_field(f[3]), parse_double_field(f[4])});
  }
  return rows;
}

std::vector<ReportRow> parse_json(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_array()) {
    throw std::runtime_error("JSON report must be an array");
  }
  auto opt_double = [](const nlohmann::json& v) -> std::optional<double> {
    if (v.is_null()) {
      return std::nullopt;
    }
    return v.get<double>();
  };
  std::vector<ReportRow> rows;
  for (const auto& obj : j) {
    ReportRow r;
    r.lambda = obj.at("lambda").get<std::string>();
    r.empirical_G = opt_double(obj.at("empirical_G"));
    r.theory_G = opt_double(obj.at("theory_G"));
    if (!obj.at("pair_count").is_null()) {
      r.pair_count = obj.at("pair_count").get<std::uint64_t>();
    }
    r.abs_err = opt_double(obj.at("abs_err"));
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace fareycorr::report
