#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cpmarg/json_io.hpp"

namespace cpmarg {

enum ExitCode : int {
  kExitPass = 0,
  kExitAssertionFailure = 1,
  kExitUsageError = 2,
  kExitBorderline = 3,
};

class UsageError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

struct GlobalOptions {
  std::optional<RankMode> mode;
  std::optional<double> tol;
  std::uint64_t seed = 1;
  std::size_t max_dim = 1024;  // largest Gram side a command may build
};

struct Report {
  json doc;
  int exit_code = kExitPass;
};

/// A constructor from the CLI registry together with what it is expected to satisfy.
struct NamedFamily {
  std::string name;
  KrausFamily family;
  std::optional<MarginalPair> targets;
  std::optional<std::size_t> expected_choi_rank;
  std::optional<Conclusion> expected_conclusion;
  json notes = json::object();
};

/// Names: paper (d m), sigma2, ohno4, ohno-d (d), rank8-66, rank8k (k).
/// Throws UsageError for unknown names or bad parameters.
NamedFamily make_named_family(const std::string& name, const std::vector<int>& params);

Report cmd_verify(const std::string& family_name, const std::vector<int>& params,
                  const GlobalOptions& options);

/// Verifies a family loaded from JSON; only extremality is asserted.
Report cmd_verify_family(const KrausFamily& family, const GlobalOptions& options);

struct TableRange {
  int d_min = 2;
  int d_max = 5;
  int m_min = 1;
  int m_max = 5;
  bool allow_large = false;  // lifts the d <= 6, d + m <= 12 guard
  bool fixed_rows = true;    // append the (6,6) and (18,18) rows
};

Report cmd_table(const TableRange& range, const GlobalOptions& options);

Report cmd_oracle(int d, int m, const GlobalOptions& options);

/// Seeded reduction properties over `count` random families.
Report cmd_proptest(std::size_t count, const GlobalOptions& options);

/// Report for a command that could not run.
Report usage_error_report(const std::string& command, const std::string& message);

}  // namespace cpmarg
