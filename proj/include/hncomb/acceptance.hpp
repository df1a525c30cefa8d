#pragma once

#include <string>
#include <vector>

namespace hncomb {

struct CriterionResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

std::vector<std::string> acceptance_criterion_names();

/// Runs one acceptance criterion. data_dir points at the repository data/
/// directory (for golden files).
CriterionResult run_acceptance_criterion(const std::string& name, const std::string& data_dir,
                                         int jobs);

/// Runs all criteria (or one, when filter is nonempty).
std::vector<CriterionResult> run_acceptance(const std::string& filter, const std::string& data_dir,
                                            int jobs);

}  // namespace hncomb
