#pragma once

// The verify-paper harness: a static table of expected values with their citation
// strings, evaluated at three levels and reported in a fixed order.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "cbdp/exact_linear.hpp"
#include "cbdp/lattice.hpp"

namespace cbdp {

enum class Level { Quick, Full, Stretch };
enum class Outcome { Pass, Fail, Inconclusive };

Level parse_level(const std::string& text);
std::string level_name(Level level);
std::string outcome_name(Outcome outcome);

/// Replaceable pieces of the pipeline, so the harness can be run against a broken build.
struct HarnessHooks {
  std::function<ExactMatrix(const GridShape&)> build_A = [](const GridShape& s) { return cbdp::build_A(s); };
  /// Worker threads for independent checks (0: hardware concurrency).
  unsigned threads = 0;
  /// S-pair cap for the Groebner computations of stretch checks.
  std::uint64_t budget = 5'000'000;
  std::uint64_t seed = 12345;
};

struct CheckResult {
  std::string id;
  std::string citation;
  std::string expected;
  std::string computed;
  Outcome outcome = Outcome::Fail;
  double seconds = 0.0;
};

struct VerificationReport {
  Level level = Level::Quick;
  std::vector<CheckResult> checks;

  std::size_t count(Outcome o) const;
  /// No check failed (inconclusive stretch checks do not count as failures).
  bool passed() const { return count(Outcome::Fail) == 0; }
};

/// Shared state of one harness run: the hooks plus Graver bases computed once per shape.
class CheckContext {
 public:
  explicit CheckContext(HarnessHooks hooks) : hooks_(std::move(hooks)) {}
  const HarnessHooks& hooks() const { return hooks_; }
  ExactMatrix A(const GridShape& shape) const { return hooks_.build_A(shape); }
  const std::vector<LatticeElement>& graver(const GridShape& shape);

 private:
  struct Slot {
    std::once_flag once;
    std::vector<LatticeElement> value;
    std::exception_ptr error;
  };
  HarnessHooks hooks_;
  std::mutex mutex_;
  std::map<std::vector<int>, std::shared_ptr<Slot>> graver_;
};

struct CheckSpec {
  std::string id;
  Level level;
  std::string citation;
  std::string expected;
  /// Returns the computed value in the same textual form as `expected`.
  std::function<std::string(CheckContext&)> compute;
};

/// Every check, ordered by id.
const std::vector<CheckSpec>& check_table();

/// Runs all checks at or below `level`. A check passes iff computed == expected;
/// exceptions count as failures, except BudgetExceeded which yields Inconclusive.
/// Failed stretch checks are reported as Inconclusive.
VerificationReport verify_paper(Level level, const HarnessHooks& hooks = {});

std::string format_report(const VerificationReport& report);
std::string format_report_json(const VerificationReport& report);

}  // namespace cbdp
