#include "zslab/search.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdlib>
#include <map>
#include <string>
#include <thread>

#include "zslab/dense.hpp"
#include "zslab/engine.hpp"
#include "zslab/structure.hpp"

namespace zslab {

SearchBudget SearchBudget::from_env() {
  SearchBudget b;
  if (const char* env = std::getenv("ZSLAB_BUDGET_NODES")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) b.max_nodes = v;
  }
  return b;
}

namespace {

constexpr int kSearchOrderLimit = 128;
// Above this many automorphisms the prefix test costs more than it saves;
// leaf-level canonical filtering alone stays correct.
constexpr std::uint64_t kSymmetryAutLimit = 50'000;

struct BudgetState {
  std::atomic<std::uint64_t> nodes{0};
  std::uint64_t max_nodes = 0;
  std::chrono::steady_clock::time_point deadline;
  std::atomic<bool> exceeded{false};

  bool tick() {
    std::uint64_t n = ++nodes;
    if (n > max_nodes) {
      exceeded.store(true, std::memory_order_relaxed);
      return false;
    }
    if ((n & 0x3ff) == 0 && std::chrono::steady_clock::now() > deadline) {
      exceeded.store(true, std::memory_order_relaxed);
      return false;
    }
    return !exceeded.load(std::memory_order_relaxed);
  }
};

// Depth-first enumeration of multisets in nondecreasing element order.
//
// Two pruning modes share the machinery:
//  - avoid mode (forbidden >= 1): an incremental reach table rows[0..F]
//    over bit-packed group masks; a candidate c is cut when -c is already
//    reachable at some length < F, i.e. appending c would create a zero-sum
//    of length <= F.
//  - zero-sum-free mode (forbidden < 0): a single mask of nonempty subsums.
//
// Row snapshots are pushed per extension and restored on backtrack.
//
// Symmetry breaking: a node survives only if its multiset is minimal in its
// Aut(G)-orbit (compared in the fixed multiset order via count vectors).
// Every orbit-canonical complete multiset has orbit-minimal prefixes, so the
// cut is exhaustive; completed leaves are canonically filtered as a safety
// net by the drivers.
class MultisetDfs {
 public:
  MultisetDfs(const DenseGroup& dg, int forbidden, int target, bool symmetry,
              const std::vector<std::vector<int>>* inv_perms, BudgetState& budget)
      : dg_(dg),
        order_(dg.order()),
        nw_((dg.order() + 63) / 64),
        forbidden_(forbidden),
        target_(target),
        symmetry_(symmetry),
        inv_perms_(inv_perms),
        budget_(budget) {
    counts_.assign(order_, 0);
    sum_idx_ = 0;
    if (avoid_mode()) {
      rows_.assign(static_cast<std::size_t>(forbidden_ + 1) * nw_, 0);
      rows_[0] |= 1ull;  // row 0 reaches exactly 0
    } else {
      rows_.assign(nw_, 0);  // nonempty subsums
    }
  }

  bool avoid_mode() const { return forbidden_ >= 0; }
  int depth() const { return static_cast<int>(path_.size()); }
  const std::vector<int>& path() const { return path_; }
  const std::vector<int>& counts() const { return counts_; }
  int sum_index() const { return sum_idx_; }

  std::function<void(MultisetDfs&)> on_leaf;       // target mode, depth == target
  int max_depth = 0;
  std::vector<int> best_path;

  bool candidate_rejected(int c) const {
    int nc = dg_.negi(c);
    if (avoid_mode()) {
      // rows 0..F-1: appending c would complete a zero-sum of length <= F
      for (int l = 0; l < forbidden_; ++l)
        if (bit(row(l), nc)) return true;
      return false;
    }
    if (c == 0) return true;
    return bit(rows_.data(), nc);
  }

  void push(int c) {
    if (avoid_mode()) {
      int hi = std::min(depth() + 1, forbidden_);
      snapshots_.insert(snapshots_.end(), rows_.begin() + nw_, rows_.begin() + (hi + 1) * nw_);
      snap_rows_.push_back(hi);
      for (int l = hi; l >= 1; --l) or_shifted(row_mut(l), row(l - 1), c);
    } else {
      snapshots_.insert(snapshots_.end(), rows_.begin(), rows_.end());
      snap_rows_.push_back(1);
      std::uint64_t* sums = rows_.data();
      const std::uint64_t* prev = snapshots_.data() + (snapshots_.size() - nw_);
      or_shifted(sums, prev, c);
      sums[c >> 6] |= 1ull << (c & 63);
    }
    path_.push_back(c);
    ++counts_[c];
    sum_idx_ = dg_.add(sum_idx_, c);
  }

  void pop() {
    int c = path_.back();
    path_.pop_back();
    --counts_[c];
    sum_idx_ = dg_.add(sum_idx_, dg_.negi(c));
    if (avoid_mode()) {
      int hi = snap_rows_.back();
      std::copy(snapshots_.end() - hi * nw_, snapshots_.end(), rows_.begin() + nw_);
      snapshots_.resize(snapshots_.size() - static_cast<std::size_t>(hi) * nw_);
    } else {
      std::copy(snapshots_.end() - nw_, snapshots_.end(), rows_.begin());
      snapshots_.resize(snapshots_.size() - nw_);
    }
    snap_rows_.pop_back();
  }

  // Orbit-minimality of the current multiset: false iff some automorphism
  // image is strictly smaller. First differing element ascending; the image
  // with the larger count there is the smaller multiset.
  bool orbit_minimal() const {
    for (const auto& inv : *inv_perms_) {
      for (int e = 0; e < order_; ++e) {
        int a = counts_[inv[e]];
        int b = counts_[e];
        if (a != b) {
          if (a > b) return false;
          break;
        }
      }
    }
    return true;
  }

  void run(int min_next) {
    int d = depth();
    if (target_ >= 0 && d >= target_) {
      if (d == target_ && on_leaf) on_leaf(*this);
      return;
    }
    if (target_ < 0 && d > max_depth) {
      max_depth = d;
      best_path = path_;
    }
    for (int c = min_next; c < order_; ++c) {
      if (candidate_rejected(c)) continue;
      if (!budget_.tick()) return;
      push(c);
      if (!symmetry_ || orbit_minimal()) run(c);
      pop();
      if (budget_.exceeded.load(std::memory_order_relaxed)) return;
    }
  }

  // Truncated DFS that collects surviving nodes at split depth.
  void collect_prefixes(int min_next, int split_depth, std::vector<std::vector<int>>& out) {
    if (depth() == split_depth) {
      out.push_back(path_);
      return;
    }
    if (target_ >= 0 && depth() >= target_) {
      if (depth() == target_ && on_leaf) on_leaf(*this);
      return;
    }
    if (target_ < 0 && depth() > max_depth) {
      max_depth = depth();
      best_path = path_;
    }
    for (int c = min_next; c < order_; ++c) {
      if (candidate_rejected(c)) continue;
      if (!budget_.tick()) return;
      push(c);
      if (!symmetry_ || orbit_minimal()) {
        if (target_ >= 0 && depth() == target_) {
          if (on_leaf) on_leaf(*this);
        } else {
          collect_prefixes(c, split_depth, out);
        }
      }
      pop();
      if (budget_.exceeded.load(std::memory_order_relaxed)) return;
    }
  }

  void replay(const std::vector<int>& prefix) {
    for (int c : prefix) push(c);
  }

 private:
  const std::uint64_t* row(int l) const { return rows_.data() + static_cast<std::size_t>(l) * nw_; }
  std::uint64_t* row_mut(int l) { return rows_.data() + static_cast<std::size_t>(l) * nw_; }

  static bool bit(const std::uint64_t* w, int i) { return (w[i >> 6] >> (i & 63)) & 1; }

  void or_shifted(std::uint64_t* dst, const std::uint64_t* src, int c) const {
    for (int wi = 0; wi < nw_; ++wi) {
      std::uint64_t w = src[wi];
      while (w != 0) {
        int s = (wi << 6) + std::countr_zero(w);
        w &= w - 1;
        int t = dg_.add(s, c);
        dst[t >> 6] |= 1ull << (t & 63);
      }
    }
  }

  const DenseGroup& dg_;
  int order_, nw_, forbidden_, target_;
  bool symmetry_;
  const std::vector<std::vector<int>>* inv_perms_;
  BudgetState& budget_;

  std::vector<int> path_;
  std::vector<int> counts_;
  int sum_idx_ = 0;
  std::vector<std::uint64_t> rows_;
  std::vector<std::uint64_t> snapshots_;
  std::vector<int> snap_rows_;
};

struct SearchSetup {
  DenseGroup dg;
  std::vector<std::vector<int>> inv_perms;  // identity omitted
  bool symmetry = false;

  SearchSetup(const GroupSpec& spec, bool want_symmetry) : dg(spec, kSearchOrderLimit) {
    if (!want_symmetry || !spec.homocyclic()) return;
    if (automorphism_count(spec) > kSymmetryAutLimit) return;
    for (const Automorphism& a : all_automorphisms(spec)) {
      std::vector<int> perm = dg.permutation(a);
      bool identity = true;
      for (int i = 0; i < dg.order() && identity; ++i) identity = perm[i] == i;
      if (identity) continue;
      std::vector<int> inv(perm.size());
      for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = static_cast<int>(i);
      inv_perms.push_back(std::move(inv));
    }
    symmetry = true;
  }
};

struct DfsOutcome {
  std::vector<std::vector<int>> leaf_counts;  // dense count vectors of leaves
  int max_depth = 0;
  std::vector<int> best_path;
  std::uint64_t nodes = 0;
  bool exhaustive = true;
};

// Runs the DFS, optionally splitting subtrees at a fixed depth across
// workers. Results are merged in task order, so the outcome is identical
// for every worker count.
DfsOutcome run_dfs(const SearchSetup& setup, int forbidden, int target, const SearchBudget& budget,
                   int workers) {
  BudgetState bs;
  bs.max_nodes = budget.max_nodes;
  bs.deadline = std::chrono::steady_clock::now() + budget.max_time;

  DfsOutcome out;
  auto leaf_to_counts = [](MultisetDfs& dfs) { return dfs.counts(); };

  if (workers <= 1) {
    MultisetDfs dfs(setup.dg, forbidden, target, setup.symmetry, &setup.inv_perms, bs);
    dfs.on_leaf = [&](MultisetDfs& d) { out.leaf_counts.push_back(leaf_to_counts(d)); };
    dfs.run(0);
    out.max_depth = dfs.max_depth;
    out.best_path = dfs.best_path;
  } else {
    int split_depth = 2;
    if (target >= 0) split_depth = std::min(split_depth, target);
    std::vector<std::vector<int>> prefixes;
    MultisetDfs seed(setup.dg, forbidden, target, setup.symmetry, &setup.inv_perms, bs);
    seed.on_leaf = [&](MultisetDfs& d) { out.leaf_counts.push_back(leaf_to_counts(d)); };
    seed.collect_prefixes(0, split_depth, prefixes);
    out.max_depth = seed.max_depth;
    out.best_path = seed.best_path;

    struct TaskResult {
      std::vector<std::vector<int>> leaves;
      int max_depth = 0;
      std::vector<int> best_path;
    };
    std::vector<TaskResult> results(prefixes.size());
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
      while (true) {
        std::size_t i = next.fetch_add(1);
        if (i >= prefixes.size()) break;
        MultisetDfs dfs(setup.dg, forbidden, target, setup.symmetry, &setup.inv_perms, bs);
        dfs.on_leaf = [&, i](MultisetDfs& d) { results[i].leaves.push_back(d.counts()); };
        dfs.replay(prefixes[i]);
        dfs.max_depth = dfs.depth();
        dfs.best_path = dfs.path();
        dfs.run(prefixes[i].empty() ? 0 : prefixes[i].back());
        results[i].max_depth = dfs.max_depth;
        results[i].best_path = dfs.best_path;
      }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
    for (auto& r : results) {
      for (auto& l : r.leaves) out.leaf_counts.push_back(std::move(l));
      if (r.max_depth > out.max_depth) {
        out.max_depth = r.max_depth;
        out.best_path = r.best_path;
      }
    }
  }
  out.nodes = bs.nodes.load();
  out.exhaustive = !bs.exceeded.load();
  return out;
}

Sequence sequence_from_path(const DenseGroup& dg, const std::vector<int>& path) {
  Sequence s(dg.spec());
  for (int c : path) s.add_term(dg.element(c));
  return s;
}

}  // namespace

ExtremalReport enumerate_extremal(const SearchTask& task) {
  if (task.spec.order() > kSearchOrderLimit)
    throw std::invalid_argument("enumerate_extremal: group order exceeds search limit");
  if (task.target_length < 0 || task.target_length > 40)
    throw std::invalid_argument("enumerate_extremal: target length out of range [0, 40]");
  if (task.forbidden_zero_sum_max_len < 1)
    throw std::invalid_argument("enumerate_extremal: forbidden length must be >= 1");

  auto t0 = std::chrono::steady_clock::now();
  SearchSetup setup(task.spec, task.symmetry);
  DfsOutcome out = run_dfs(setup, task.forbidden_zero_sum_max_len, task.target_length,
                           task.budget, task.workers);

  ExtremalReport report;
  report.spec = task.spec;
  report.target_length = task.target_length;
  report.forbidden = task.forbidden_zero_sum_max_len;
  report.nodes = out.nodes;
  report.exhaustive = out.exhaustive;

  // Canonical filtering as a safety net (leaves are already canonical when
  // the in-search symmetry test ran), then independent re-verification of
  // the avoiding property through the engine's own DP.
  std::map<std::string, ExtremalOrbit> orbits;
  for (const auto& counts : out.leaf_counts) {
    Sequence leaf = setup.dg.to_sequence(counts);
    Sequence canon = task.spec.homocyclic() ? canonicalize(leaf) : leaf;
    std::string key = canon.render_terms();
    if (orbits.contains(key)) continue;
    if (has_short_zero_sum(canon, task.forbidden_zero_sum_max_len))
      throw std::logic_error("enumerate_extremal: re-verification failed for " + canon.render());
    ExtremalOrbit orbit;
    orbit.canonical = canon;
    orbit.orbit_size = task.spec.homocyclic() ? orbit_size(canon) : 0;
    orbits.emplace(std::move(key), std::move(orbit));
  }
  report.orbits.reserve(orbits.size());
  std::vector<ExtremalOrbit> sorted;
  for (auto& [key, orbit] : orbits) sorted.push_back(std::move(orbit));
  std::sort(sorted.begin(), sorted.end(), [](const ExtremalOrbit& a, const ExtremalOrbit& b) {
    return multiset_less(a.canonical, b.canonical);
  });
  report.orbits = std::move(sorted);
  report.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

MaxAvoidingResult max_avoiding_length(const GroupSpec& spec, int forbidden_len,
                                      const SearchBudget& budget, int workers, bool symmetry) {
  if (spec.order() > kSearchOrderLimit)
    throw std::invalid_argument("max_avoiding_length: group order exceeds search limit");
  if (forbidden_len < spec.exponent())
    throw std::invalid_argument(
        "max_avoiding_length: forbidden length below exp(G) admits arbitrarily long sequences");

  auto t0 = std::chrono::steady_clock::now();
  SearchSetup setup(spec, symmetry);
  DfsOutcome out = run_dfs(setup, forbidden_len, -1, budget, workers);

  MaxAvoidingResult res;
  res.max_length = out.max_depth;
  if (!out.best_path.empty() || out.max_depth == 0)
    res.witness = sequence_from_path(setup.dg, out.best_path);
  res.nodes = out.nodes;
  res.exhaustive = out.exhaustive;
  res.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

MaxAvoidingResult max_zero_sum_free_length(const GroupSpec& spec, const SearchBudget& budget,
                                           int workers, bool symmetry) {
  if (spec.order() > kSearchOrderLimit)
    throw std::invalid_argument("max_zero_sum_free_length: group order exceeds search limit");
  auto t0 = std::chrono::steady_clock::now();
  SearchSetup setup(spec, symmetry);
  DfsOutcome out = run_dfs(setup, -1, -1, budget, workers);
  MaxAvoidingResult res;
  res.max_length = out.max_depth;
  res.witness = sequence_from_path(setup.dg, out.best_path);
  res.nodes = out.nodes;
  res.exhaustive = out.exhaustive;
  res.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

int compute_davenport_by_search(const GroupSpec& spec, const SearchBudget& budget, int workers) {
  MaxAvoidingResult out = max_zero_sum_free_length(spec, budget, workers);
  if (!out.exhaustive)
    throw BudgetExceeded("compute_davenport_by_search: budget exceeded for " + spec.name());
  return out.max_length + 1;
}

int compute_eta_by_search(const GroupSpec& spec, const SearchBudget& budget, int workers) {
  MaxAvoidingResult res = max_avoiding_length(spec, spec.exponent(), budget, workers);
  if (!res.exhaustive)
    throw BudgetExceeded("compute_eta_by_search: budget exceeded for " + spec.name());
  return res.max_length + 1;
}

std::vector<Sequence> enumerate_minimal_zero_sums(const GroupSpec& spec, int length,
                                                  const SearchBudget& budget, int workers) {
  if (spec.order() > 49)
    throw std::invalid_argument("enumerate_minimal_zero_sums: exhaustive mode requires |G| <= 49");
  if (length < 1) throw std::invalid_argument("enumerate_minimal_zero_sums: length must be >= 1");

  // DFS over zero-sum-free prefixes of length L-1; the last term is forced
  // to -sigma(prefix), and S minus that term being zero-sum-free makes S
  // minimal by construction.
  SearchSetup setup(spec, true);
  BudgetState bs;
  bs.max_nodes = budget.max_nodes;
  bs.deadline = std::chrono::steady_clock::now() + budget.max_time;

  std::map<std::string, Sequence> reps;
  MultisetDfs dfs(setup.dg, -1, length - 1, setup.symmetry, &setup.inv_perms, bs);
  dfs.on_leaf = [&](MultisetDfs& d) {
    int forced = setup.dg.negi(d.sum_index());
    if (!d.path().empty() && forced < d.path().back()) return;
    Sequence leaf = setup.dg.to_sequence(d.counts());
    leaf.add_term(setup.dg.element(forced));
    Sequence canon = spec.homocyclic() ? canonicalize(leaf) : leaf;
    reps.try_emplace(canon.render_terms(), canon);
  };
  dfs.run(0);
  if (bs.exceeded.load())
    throw BudgetExceeded("enumerate_minimal_zero_sums: budget exceeded for " + spec.name());
  (void)workers;

  std::vector<Sequence> out;
  out.reserve(reps.size());
  for (auto& [key, s] : reps) out.push_back(s);
  std::sort(out.begin(), out.end(),
            [](const Sequence& a, const Sequence& b) { return multiset_less(a, b); });
  return out;
}

}  // namespace zslab
