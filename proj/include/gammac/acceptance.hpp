#pragma once

#include <string>
#include <vector>

namespace gammac {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

int acceptance_criterion_count();
/// Runs criterion `id` (1-based); exceptions become a failing result.
CriterionResult run_acceptance_criterion(int id);
std::vector<CriterionResult> run_acceptance();

}  // namespace gammac
