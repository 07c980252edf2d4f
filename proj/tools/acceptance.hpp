#pragma once

// The acceptance suite: one result per criterion, shared by the CLI `check`
// subcommand and the ctest driver.

#include <string>
#include <vector>

namespace ktypes::acceptance {

struct Result {
  int id = 0;
  bool pass = false;
  std::string title;
  std::string detail;
  std::size_t mismatches = 0;  // oracle mismatches seen (criterion 4)
  bool solver_error = false;   // SolverInconsistency or a failed reconstruction
};

struct Options {
  unsigned workers = 0;
  long oracle_box = 10;
};

std::vector<Result> run_all(const Options& opt);

// 0 all pass, 4 oracle mismatch, 3 solver failure, 1 any other failure.
int exit_code(const std::vector<Result>& rs);

std::string format_line(const Result& r);

}  // namespace ktypes::acceptance
