#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "zslab/engine.hpp"
#include "zslab/search.hpp"
#include "zslab/structure.hpp"

namespace zslab {

/// Outcome of one pipeline claim: status is "verified", "refuted" or
/// "skipped_budget"; evidence carries the witnesses or values checked.
struct ClaimResult {
  std::string id;
  std::string status;
  nlohmann::ordered_json evidence = nlohmann::ordered_json::object();
};

struct VerificationVerdict {
  GroupSpec spec;
  int k = 0;
  std::vector<ClaimResult> claims;
  bool overall = false;
};

/// End-to-end pipeline for the main theorem at (p, k), k in [2, p-2]:
/// exhaustive extremal enumeration, the three per-witness count congruence
/// checks, main-form matching, the rank-3 lift minimality check, and the
/// congruence-system cross-check.
VerificationVerdict verify_theorem(long p, int k, const SearchBudget& budget,
                                   int workers = 1, bool symmetry = true);

/// Fills per-orbit certification flags on a report produced by
/// enumerate_extremal; the count congruence and lift checks apply only when
/// the group is C_p^2 with p prime and k in the theorem range.
void certify_orbits(ExtremalReport& report, int k);

nlohmann::ordered_json to_json(const ZeroSumProfile& profile);
nlohmann::ordered_json to_json(const FormMatch& fm);
nlohmann::ordered_json to_json(const ExtremalReport& report, int k);
nlohmann::ordered_json to_json(const VerificationVerdict& verdict);

}  // namespace zslab
