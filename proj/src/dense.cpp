#include "zslab/dense.hpp"

#include <stdexcept>

namespace zslab {

DenseGroup::DenseGroup(const GroupSpec& spec, int max_order) : spec_(spec) {
  order_ = spec.order();
  if (order_ > max_order)
    throw std::invalid_argument("DenseGroup: group order " + std::to_string(order_) +
                                " exceeds supported limit " + std::to_string(max_order));
  elems_.reserve(order_);
  GroupElement cur = zero_element(spec);
  for (int i = 0; i < order_; ++i) {
    elems_.push_back(cur);
    // increment mixed-radix counter, last coordinate fastest (lex order)
    for (int j = spec.rank() - 1; j >= 0; --j) {
      if (++cur.c[j] < spec.factors()[j]) break;
      cur.c[j] = 0;
    }
  }
  add_.resize(static_cast<std::size_t>(order_) * order_);
  neg_.resize(order_);
  ord_.resize(order_);
  for (int a = 0; a < order_; ++a) {
    neg_[a] = index_of(zslab::neg(spec, elems_[a]));
    ord_[a] = element_order(spec, elems_[a]);
    for (int b = 0; b < order_; ++b)
      add_[static_cast<std::size_t>(a) * order_ + b] =
          static_cast<std::uint16_t>(index_of(zslab::add(spec, elems_[a], elems_[b])));
  }
}

int DenseGroup::index_of(const GroupElement& g) const {
  int idx = 0;
  for (int j = 0; j < spec_.rank(); ++j) idx = idx * spec_.factors()[j] + g.c[j];
  return idx;
}

std::vector<int> DenseGroup::permutation(const Automorphism& alpha) const {
  std::vector<int> perm(order_);
  for (int i = 0; i < order_; ++i) perm[i] = index_of(alpha.apply(elems_[i]));
  return perm;
}

std::vector<int> DenseGroup::counts_of(const Sequence& s) const {
  if (!(s.spec() == spec_)) throw std::invalid_argument("counts_of: group spec mismatch");
  std::vector<int> counts(order_, 0);
  for (auto& [g, m] : s.terms()) counts[index_of(g)] = m;
  return counts;
}

Sequence DenseGroup::to_sequence(const std::vector<int>& counts) const {
  Sequence out(spec_);
  for (int i = 0; i < order_; ++i)
    if (counts[i] > 0) out.add_term(elems_[i], counts[i]);
  return out;
}

}  // namespace zslab
