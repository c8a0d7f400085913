#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "zslab/group.hpp"

namespace zslab {

/// Finite unordered multiset of group elements. Immutable value semantics:
/// every operation returns a new sequence. Terms are kept as a map from
/// element to positive multiplicity, in the fixed element order.
class Sequence {
 public:
  Sequence() = default;
  explicit Sequence(GroupSpec spec) : spec_(std::move(spec)) {}

  /// Text format: "<group> | <term>*" with term "(c1,...,cr)" optionally "^m".
  /// Strict mode rejects unreduced residues; reduce mode folds them mod n_i.
  enum class ParseMode { strict, reduce };
  static Sequence parse(std::string_view text, ParseMode mode = ParseMode::strict);

  const GroupSpec& spec() const { return spec_; }
  const std::map<GroupElement, int>& terms() const { return mult_; }

  int length() const;
  int multiplicity(const GroupElement& g) const;
  std::vector<GroupElement> support() const;
  int height() const;       // max multiplicity; 0 for the empty sequence
  GroupElement sigma() const;

  bool empty() const { return mult_.empty(); }

  Sequence& add_term(const GroupElement& g, int mult = 1);  // builder; validates

  /// True iff v_g(other) <= v_g(*this) for all g.
  bool contains_subsequence(const Sequence& other) const;

  std::string render() const;        // "C5xC5 | (0,1)^4 (1,0)"
  std::string render_terms() const;  // terms only

  bool operator==(const Sequence&) const = default;

 private:
  GroupSpec spec_;
  std::map<GroupElement, int> mult_;
};

Sequence concat(const Sequence& s, const Sequence& t);

/// Multiplicity-wise difference; throws std::invalid_argument naming a
/// violating element when t is not a subsequence of s.
Sequence remove(const Sequence& s, const Sequence& t);

/// Image multiset under phi; phi must produce valid elements of target.
Sequence map_hom(const Sequence& s, const GroupSpec& target,
                 const std::function<GroupElement(const GroupElement&)>& phi);

/// Fixed multiset order: lexicographic comparison of the nondecreasing term
/// lists. Requires equal specs.
int multiset_compare(const Sequence& a, const Sequence& b);
inline bool multiset_less(const Sequence& a, const Sequence& b) {
  return multiset_compare(a, b) < 0;
}

}  // namespace zslab
