#pragma once

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace dhl {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  nlohmann::json metrics;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  bool quick = false;  // reduced sample sizes
  std::uint64_t seed = 20240611;
  std::vector<int> only;  // empty = all
};

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt);
nlohmann::json to_json(const std::vector<CriterionResult>& r);

}  // namespace dhl
