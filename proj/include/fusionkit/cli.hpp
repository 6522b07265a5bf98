#pragma once

#include "fusionkit/labels.hpp"
#include "fusionkit/numerics.hpp"

#include "json.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace fk::cli {

enum class Status { Pass, Fail, Skip };

const char* status_name(Status s);

// One report entry. `data` carries the numeric schema {check, params, lhs, rhs, abs_err,
// rel_err, pass} for analytic checks and free-form detail otherwise.
struct Check {
  std::string name;
  Status status = Status::Pass;
  std::string detail;
  nlohmann::json data = nlohmann::json::object();
};

struct Report {
  std::vector<Check> checks;

  // Skipped checks do not fail the report.
  bool ok() const;
  void add(Check c) { checks.push_back(std::move(c)); }
  void append(const Report& o);
  // Stable order by check name.
  void sort();
  nlohmann::json to_json() const;
  std::string table() const;
};

// The first n classes among (7i+3)/97, i = 0, 1, ..., that are generic for every (r,s) at the level.
std::vector<WeightClass> sample_weights(const Level& level, int n);

enum class Suite { Beta, Selberg, Bpz, Constants };

Suite parse_suite(const std::string& name);

Report verify_suite(Suite suite, const Level& level, const num::QuadratureConfig& cfg = {});

// Levels used when verify-all is run without --levels.
std::vector<Level> default_levels();

// Level-independent checks run once when `levels` is nonempty, then per-level checks.
Report run_verify_all(const std::vector<Level>& levels, const num::QuadratureConfig& cfg = {});

// Exit code: 0 success, 1 check failure or evaluation error, 2 usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fk::cli
