#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace fareycorr::verify {

struct VerifyOptions {
  std::int64_t dirichlet_x = 10'000;
  std::int64_t proposition_qmax = 500;
};

/// One named check: passes when worst <= limit.
struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = false;
  double worst = 0.0;
  double limit = 0.0;
  std::string detail;
};

/// "kfn", "theorem2", "identities", "dirichlet", "proposition", "support",
/// "limit", "antiderivative", "counting".
const std::vector<std::string>& suite_names();

/// Runs one suite, or every suite for "all". Throws std::invalid_argument
/// for an unknown name.
std::vector<CheckResult> run(std::string_view suite, const VerifyOptions& options);

}  // namespace fareycorr::verify
