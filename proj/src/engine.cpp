#include "zslab/engine.hpp"

#include <algorithm>
#include <stdexcept>

#include "zslab/dense.hpp"
#include "zslab/modmath.hpp"

namespace zslab {

namespace {

constexpr int kCountingOrderLimit = 512;

DenseGroup dense_for_counting(const GroupSpec& spec) {
  return DenseGroup(spec, kCountingOrderLimit);
}

// Expanded term list (one entry per copy), ascending element order.
std::vector<int> term_indices(const DenseGroup& dg, const Sequence& s) {
  std::vector<int> out;
  out.reserve(s.length());
  for (auto& [g, m] : s.terms()) {
    int idx = dg.index_of(g);
    for (int i = 0; i < m; ++i) out.push_back(idx);
  }
  return out;
}

}  // namespace

std::vector<long> ZeroSumProfile::mod_view(long p) const {
  std::vector<long> out;
  out.reserve(counts.size());
  for (const BigInt& c : counts) out.push_back(static_cast<long>(c % p));
  return out;
}

bool ReachTable::reachable(int len, const GroupElement& g) const {
  require_element(spec_, g);
  if (len < 0 || len > max_len()) throw std::invalid_argument("ReachTable: length out of range");
  int idx = 0;
  for (int j = 0; j < spec_.rank(); ++j) idx = idx * spec_.factors()[j] + g.c[j];
  return rows_[len][idx] != 0;
}

ReachTable reach_table(const Sequence& s, int k) {
  if (k < 0 || k > s.length())
    throw std::invalid_argument("reach_table: k must be in [0, |S|]");
  DenseGroup dg = dense_for_counting(s.spec());
  ReachTable rt;
  rt.spec_ = s.spec();
  rt.rows_.assign(k + 1, std::vector<char>(dg.order(), 0));
  rt.rows_[0][0] = 1;
  int seen = 0;
  for (int g : term_indices(dg, s)) {
    ++seen;
    int top = std::min(seen, k);
    for (int len = top; len >= 1; --len) {
      const auto& prev = rt.rows_[len - 1];
      auto& cur = rt.rows_[len];
      for (int sidx = 0; sidx < dg.order(); ++sidx)
        if (prev[sidx]) cur[dg.add(sidx, g)] = 1;
    }
  }
  return rt;
}

bool has_short_zero_sum(const Sequence& s, int k) {
  int top = std::min(k, s.length());
  if (top < 1) return false;
  ReachTable rt = reach_table(s, top);
  for (int len = 1; len <= top; ++len)
    if (rt.reachable_index(len, 0)) return true;
  return false;
}

std::optional<int> shortest_nonempty_zero_sum(const Sequence& s) {
  ReachTable rt = reach_table(s, s.length());
  for (int len = 1; len <= s.length(); ++len)
    if (rt.reachable_index(len, 0)) return len;
  return std::nullopt;
}

namespace {

// Shared index-set counting DP. For each distinct element g of multiplicity
// m, taking j of its positions contributes C(m, j) index sets, so the table
// update is dp[len + j][s + j*g] += dp[len][s] * C(m, j).
template <typename Int>
std::vector<std::vector<Int>> profile_dp(const DenseGroup& dg, const Sequence& s,
                                         const std::optional<long>& mod) {
  int total = s.length();
  std::vector<std::vector<Int>> dp(total + 1, std::vector<Int>(dg.order(), Int(0)));
  dp[0][0] = 1;
  int cur = 0;
  for (auto& [g, m] : s.terms()) {
    int gi = dg.index_of(g);
    // binomial row C(m, j), j in [0, m]; computed exactly, reduced after
    std::vector<BigInt> exact(m + 1, BigInt(1));
    for (int j = 1; j <= m; ++j) exact[j] = exact[j - 1] * (m - j + 1) / j;
    std::vector<Int> binom(m + 1);
    for (int j = 0; j <= m; ++j)
      binom[j] = mod ? static_cast<Int>(exact[j] % *mod) : static_cast<Int>(exact[j]);
    // index of j*g and the corresponding shifted destination
    std::vector<int> jg(m + 1, 0);
    for (int j = 1; j <= m; ++j) jg[j] = dg.add(jg[j - 1], gi);
    for (int len = cur; len >= 0; --len) {
      for (int sidx = 0; sidx < dg.order(); ++sidx) {
        if (dp[len][sidx] == 0) continue;
        Int base = dp[len][sidx];
        for (int j = 1; j <= m; ++j) {
          Int& cell = dp[len + j][dg.add(sidx, jg[j])];
          cell += base * binom[j];
          if (mod) cell = cell % *mod;
        }
      }
    }
    cur += m;
  }
  return dp;
}

}  // namespace

ZeroSumProfile count_zero_sums(const Sequence& s) {
  DenseGroup dg = dense_for_counting(s.spec());
  auto dp = profile_dp<BigInt>(dg, s, std::nullopt);
  ZeroSumProfile profile;
  profile.counts.reserve(s.length() + 1);
  for (int len = 0; len <= s.length(); ++len) profile.counts.push_back(dp[len][0]);
  return profile;
}

std::vector<long> count_zero_sums_mod(const Sequence& s, long p) {
  if (p < 2) throw std::invalid_argument("count_zero_sums_mod: modulus must be >= 2");
  DenseGroup dg = dense_for_counting(s.spec());
  auto dp = profile_dp<long>(dg, s, p);
  std::vector<long> out;
  out.reserve(s.length() + 1);
  for (int len = 0; len <= s.length(); ++len) out.push_back(dp[len][0]);
  return out;
}

long olson_alternating_check(const Sequence& s, long p) {
  auto prime = s.spec().p_group_prime();
  if (!prime || *prime != p)
    throw std::invalid_argument("olson_alternating_check: " + s.spec().name() +
                                " is not a p-group for p=" + std::to_string(p));
  std::vector<long> counts = count_zero_sums_mod(s, p);
  long acc = 0;
  for (std::size_t i = 0; i < counts.size(); ++i)
    acc = floormod(acc + (i % 2 == 0 ? counts[i] : -counts[i]), p);
  return acc;
}

bool is_minimal_zero_sum(const Sequence& s) {
  if (s.length() < 1) return false;
  if (!(s.sigma() == zero_element(s.spec()))) return false;
  ZeroSumProfile profile = count_zero_sums(s);
  for (int i = 1; i < s.length(); ++i)
    if (profile.counts[i] != 0) return false;
  return true;
}

long subsum_set_size(const Sequence& s) {
  DenseGroup dg = dense_for_counting(s.spec());
  std::vector<char> sums(dg.order(), 0);
  for (int g : term_indices(dg, s)) {
    std::vector<char> prev = sums;
    for (int sidx = 0; sidx < dg.order(); ++sidx)
      if (prev[sidx]) sums[dg.add(sidx, g)] = 1;
    sums[g] = 1;
  }
  long c = 0;
  for (char b : sums) c += b != 0;
  return c;
}

std::optional<Sequence> extract_witness(const Sequence& s, int len) {
  if (len == 0) return Sequence(s.spec());
  if (len < 0 || len > s.length()) return std::nullopt;
  DenseGroup dg = dense_for_counting(s.spec());
  std::vector<int> terms = term_indices(dg, s);
  int total = static_cast<int>(terms.size());

  // history[t] = reach table after the first t terms, lengths 0..len
  std::vector<std::vector<std::vector<char>>> history(total + 1);
  history[0].assign(len + 1, std::vector<char>(dg.order(), 0));
  history[0][0][0] = 1;
  for (int t = 1; t <= total; ++t) {
    history[t] = history[t - 1];
    int g = terms[t - 1];
    int top = std::min(t, len);
    for (int l = top; l >= 1; --l) {
      const auto& prev = history[t - 1][l - 1];
      auto& cur = history[t][l];
      for (int sidx = 0; sidx < dg.order(); ++sidx)
        if (prev[sidx]) cur[dg.add(sidx, g)] = 1;
    }
  }
  if (!history[total][len][0]) return std::nullopt;

  // walk back; prefer skipping a term so the witness is deterministic
  Sequence witness(s.spec());
  int l = len, sidx = 0;
  for (int t = total; t >= 1; --t) {
    if (history[t - 1][l][sidx]) continue;
    int g = terms[t - 1];
    witness.add_term(dg.element(g));
    sidx = dg.add(sidx, dg.negi(g));
    --l;
  }
  return witness;
}

}  // namespace zslab
