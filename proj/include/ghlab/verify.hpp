#pragma once

// Acceptance and identity checks, shared by `ghlab verify` and the
// acceptance test binary. Every row carries its measured value and the
// tolerance it is held to.

#include <cstdint>
#include <string>
#include <vector>

namespace ghlab::verify {

struct CheckRow {
  std::string name;
  bool passed = false;
  double value = 0;
  double tolerance = 0;
  std::string detail;
  /// How value is compared with tolerance: "<=", ">" or "in".
  std::string relation = "<=";
};

struct Criterion {
  int id = 0;
  std::string title;
  std::vector<CheckRow> rows;
  double seconds = 0;
  /// Wall-clock budget; 0 = none.
  double budget_seconds = 0;

  bool passed() const;
};

struct Options {
  std::uint64_t seed = 0;
  int threads = 0;
};

Criterion identity_criterion(const Options& opt);        // 1
Criterion harmonicity_criterion(const Options& opt);     // 2
Criterion wp_criterion(const Options& opt);              // 3
Criterion base_point_criterion(const Options& opt);      // 4
Criterion entropy_criterion(const Options& opt);         // 5
Criterion degeneracy_criterion(const Options& opt);      // 6
Criterion nondegeneracy_criterion(const Options& opt);   // 7
Criterion expansion_criterion(const Options& opt);       // 8
Criterion thermo_criterion(const Options& opt);          // 9
Criterion q_isometry_criterion(const Options& opt);      // 10
Criterion trace_criterion(const Options& opt);           // 11

/// Runs criterion `id` (1..11) and times it.
Criterion run_criterion(int id, const Options& opt);

/// "identities" = 1, 3, 10; "harmonicity" = 2; "thermo" = 9;
/// "acceptance" = 1..11. Throws InvalidArgument for other names.
std::vector<int> suite_ids(const std::string& suite);

/// "name  PASS|FAIL  value <= tol  detail" lines.
std::string format_rows(const Criterion& c);

}  // namespace ghlab::verify
