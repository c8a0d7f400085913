#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "zslab/sequence.hpp"

namespace zslab {

struct SearchBudget {
  std::uint64_t max_nodes = 100'000'000;
  std::chrono::milliseconds max_time{15 * 60 * 1000};

  /// Default budget, with ZSLAB_BUDGET_NODES honored when set.
  static SearchBudget from_env();
};

class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct SearchTask {
  GroupSpec spec;
  int target_length = 0;
  int forbidden_zero_sum_max_len = 0;
  SearchBudget budget = SearchBudget::from_env();
  bool symmetry = true;
  int workers = 1;
};

struct OrbitChecks {
  std::optional<bool> lemma32a, lemma32b, lemma32c, main_form, claim_a;
};

struct ExtremalOrbit {
  Sequence canonical;
  std::uint64_t orbit_size = 0;
  OrbitChecks checks;
};

struct ExtremalReport {
  GroupSpec spec;
  int target_length = 0;
  int forbidden = 0;
  std::vector<ExtremalOrbit> orbits;
  std::uint64_t nodes = 0;
  bool exhaustive = true;
  double elapsed_ms = 0;
};

/// All Aut(G)-orbit representatives of sequences of target_length with no
/// nonempty zero-sum subsequence of length <= forbidden. Depth-first over
/// multisets in nondecreasing element order; a partial multiset is pruned as
/// soon as 0 becomes reachable within the forbidden window, and (with
/// symmetry on) unless it is the minimum of its Aut(G)-orbit. Exceeding the
/// budget yields a partial report flagged non-exhaustive.
ExtremalReport enumerate_extremal(const SearchTask& task);

struct MaxAvoidingResult {
  int max_length = 0;
  std::optional<Sequence> witness;
  std::uint64_t nodes = 0;
  bool exhaustive = true;
  double elapsed_ms = 0;
};

/// Largest length admitting a sequence with 0 not in Sigma_{<= forbidden}.
/// Requires forbidden >= exp(G); below the exponent the quantity diverges.
MaxAvoidingResult max_avoiding_length(const GroupSpec& spec, int forbidden_len,
                                      const SearchBudget& budget = SearchBudget::from_env(),
                                      int workers = 1, bool symmetry = true);

/// Largest length of a zero-sum-free sequence, with a witness.
MaxAvoidingResult max_zero_sum_free_length(const GroupSpec& spec,
                                           const SearchBudget& budget = SearchBudget::from_env(),
                                           int workers = 1, bool symmetry = true);

/// Smallest length at which no zero-sum-free sequence exists.
int compute_davenport_by_search(const GroupSpec& spec,
                                const SearchBudget& budget = SearchBudget::from_env(),
                                int workers = 1);

/// max_avoiding_length(spec, exp(G)) + 1.
int compute_eta_by_search(const GroupSpec& spec,
                          const SearchBudget& budget = SearchBudget::from_env(),
                          int workers = 1);

/// All orbit representatives of minimal zero-sum sequences of the given
/// length, each verified by is_minimal_zero_sum.
std::vector<Sequence> enumerate_minimal_zero_sums(const GroupSpec& spec, int length,
                                                  const SearchBudget& budget = SearchBudget::from_env(),
                                                  int workers = 1);

}  // namespace zslab
