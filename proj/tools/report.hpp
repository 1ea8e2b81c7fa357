#pragma once

// JSON reports for the command-line front end. Rationals and Laurent
// polynomials are written as strings ("p/q", "3*t^-2 + 5"), so reports are
// exact and byte-stable.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "loopalg/rootdata.hpp"

namespace loopalg::report {

using nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

struct RunConfig {
  std::string type;
  std::vector<int> kac;
  int n = 2;
  int samples = 100;
  std::uint64_t seed = 1;
  int jobs = 1;
};

/// Parahoric coordinates default to the Iwahori when `kac` is empty.
std::vector<int> resolve_kac(const RootDatum& rd, const std::vector<int>& kac);

ordered_json degrees(const std::string& type);
ordered_json kac(const std::string& type, const std::vector<int>& kac);
ordered_json grading(const std::string& type, const std::vector<int>& kac);
ordered_json hitchin_image(const std::string& type, const std::vector<int>& kac, int n);
ordered_json fg(const std::string& type, const std::string& a);
ordered_json oper_space(const std::string& type, int degree_bound);
ordered_json hitchin_base(const std::string& type);

/// Propositions accepted by `verify`.
const std::vector<std::string>& propositions();
/// Report with a "status" field of "pass" or "fail".
ordered_json verify(const std::string& proposition, const RunConfig& cfg);

/// One "key: value" line per top-level field.
std::string as_table(const ordered_json& j);

}  // namespace loopalg::report
