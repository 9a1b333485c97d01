#pragma once

// The acceptance suite: one result per criterion, shared by the test binary and `verify`.

#include <cstdint>
#include <string>
#include <vector>

namespace tlab {

inline constexpr int kCriterionCount = 11;

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  std::vector<int> selection;  // criterion ids to run
  std::uint64_t seed = 20240601;
  double quadrature_tol = 1e-8;
};

std::string criterion_name(int id);
CriterionResult run_criterion(int id, const AcceptanceOptions& opt);
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt);

}  // namespace tlab
