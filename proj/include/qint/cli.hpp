#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qint {

/// Exit-code contract: 0 pass, 1 config/parse error, 2 law violation,
/// 3 refinement reached u_max unconverged.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitViolation = 2;
inline constexpr int kExitUnconverged = 3;

struct RunConfig {
  std::string fixture;
  std::string input_path;
  std::string out_path;   // report JSON; stdout when empty
  std::string csv_path;   // optional CSV twin
  double tol = -1.0;      // negative: fixture/suite default
  int u = -1;             // refinement cap override
  std::string rule = "midpoint";
  std::uint64_t seed = 0;
  int trials = -1;        // negative: suite default
  std::uint64_t cell_budget;  // from QINT_CELL_BUDGET or the default

  RunConfig();
};

int cmd_algebra(const std::string& action, const RunConfig& cfg);  // build | check
int cmd_hom_check(const RunConfig& cfg);
int cmd_integrate(const RunConfig& cfg);
int cmd_laws(const std::string& suite, const RunConfig& cfg);
int cmd_approx(const std::string& kind, const std::string& fixture,
               const std::vector<int>& orders, const RunConfig& cfg);

/// Full argv entry point used by the qint binary.
int qint_main(int argc, char** argv);

}  // namespace qint
