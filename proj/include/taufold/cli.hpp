#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "taufold/subcat.hpp"

namespace taufold {

enum class OutputFormat { Text, Json, Dot };

struct RunConfig {
  std::string algebra_path;
  /// indecs, tau-rigid, stautilt, tors, cok, star, bijection, pair, closure, table1
  std::string command;
  int fold = 1;
  SideKind side = SideKind::Tors;
  int mu = 2;
  OutputFormat format = OutputFormat::Text;
  /// Label lists such as "P1+P2"; "0" is the zero module.
  std::string u;
  std::string subcat;
  int n = 1;
  std::string which = "main";
  /// ke, ce, tf or ts.
  std::string kind;
  /// Recorded in the output; every routine is deterministic.
  std::uint64_t seed = 0;
  /// Largest number of bitsets a single subset search may visit.
  std::uint64_t subset_budget = std::uint64_t{1} << 22;
};

namespace exit_code {
constexpr int ok = 0;
constexpr int internal = 1;
constexpr int parse = 2;
constexpr int guard = 3;
constexpr int verification = 4;
}  // namespace exit_code

/// Runs one command; results go to out, diagnostics to err.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Smallest K^nE-closed (torf) or C^nE-closed (tors) subcategory containing c. bounded is set when a positive
/// closedness answer relied on the multiplicity bound.
Mask cne_closure(const Context& ctx, Mask c, int n, SideKind side, std::uint64_t budget, bool* bounded);

}  // namespace taufold
