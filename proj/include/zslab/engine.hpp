#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <vector>

#include "zslab/sequence.hpp"

namespace zslab {

using BigInt = boost::multiprecision::cpp_int;

/// Exact zero-sum subsequence counts: counts[i] = N^i(S), the number of
/// index sets I of size i whose terms sum to zero. counts[0] = 1 (the empty
/// index set). Counting is positional: an element of multiplicity m
/// contributes through binomial weights C(m, j).
struct ZeroSumProfile {
  std::vector<BigInt> counts;

  std::vector<long> mod_view(long p) const;  // counts reduced mod p
};

/// reach(len, g) is true iff some subsequence of S with exactly len terms
/// sums to g. Row 0 contains exactly the zero element.
class ReachTable {
 public:
  int max_len() const { return static_cast<int>(rows_.size()) - 1; }
  const GroupSpec& spec() const { return spec_; }

  bool reachable(int len, const GroupElement& g) const;
  bool reachable_index(int len, int dense_idx) const { return rows_[len][dense_idx] != 0; }

 private:
  friend ReachTable reach_table(const Sequence& s, int k);
  GroupSpec spec_;
  std::vector<std::vector<char>> rows_;
};

/// Exact table by per-term DP over distinct elements in the fixed element
/// order; cost O(|S| * k * |G|). Requires 0 <= k <= |S|.
ReachTable reach_table(const Sequence& s, int k);

/// Membership of 0 in Sigma_{<= k}(S); k below 1 gives false, k above |S|
/// is clamped.
bool has_short_zero_sum(const Sequence& s, int k);

/// Least len >= 1 with a zero-sum subsequence of that length, if any.
std::optional<int> shortest_nonempty_zero_sum(const Sequence& s);

ZeroSumProfile count_zero_sums(const Sequence& s);

/// Mod-p fast path for the congruence checks; same DP over residues.
std::vector<long> count_zero_sums_mod(const Sequence& s, long p);

/// Alternating sum  sum_i (-1)^i N^i(S)  mod p. Requires the sequence's
/// group to be a p-group for this p; callers assert 0 when |S| >= D(G).
long olson_alternating_check(const Sequence& s, long p);

/// sigma(S) = 0, |S| >= 1, and N^i(S) = 0 for all i in [1, |S|-1].
bool is_minimal_zero_sum(const Sequence& s);

/// |Sigma(S)| over nonempty index sets.
long subsum_set_size(const Sequence& s);

/// A concrete zero-sum subsequence of length exactly len, reconstructed by
/// DP back-tracing, or nullopt. len = 0 yields the empty sequence.
std::optional<Sequence> extract_witness(const Sequence& s, int len);

}  // namespace zslab
