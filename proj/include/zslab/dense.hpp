#pragma once

#include <cstdint>
#include <vector>

#include "zslab/group.hpp"
#include "zslab/sequence.hpp"

namespace zslab {

/// Dense index tables for a small group. Element indices follow the fixed
/// lexicographic element order (first coordinate most significant), so index
/// comparisons agree with GroupElement comparisons.
class DenseGroup {
 public:
  explicit DenseGroup(const GroupSpec& spec, int max_order = 4096);

  const GroupSpec& spec() const { return spec_; }
  int order() const { return order_; }

  const GroupElement& element(int idx) const { return elems_[idx]; }
  int index_of(const GroupElement& g) const;

  int add(int a, int b) const { return add_[static_cast<std::size_t>(a) * order_ + b]; }
  int negi(int a) const { return neg_[a]; }
  int order_of(int a) const { return ord_[a]; }

  /// Index permutation of an automorphism (perm[i] = index of alpha(element i)).
  std::vector<int> permutation(const Automorphism& alpha) const;

  std::vector<int> counts_of(const Sequence& s) const;  // size order()
  Sequence to_sequence(const std::vector<int>& counts) const;

 private:
  GroupSpec spec_;
  int order_ = 0;
  std::vector<GroupElement> elems_;
  std::vector<std::uint16_t> add_;
  std::vector<int> neg_;
  std::vector<int> ord_;
};

}  // namespace zslab
