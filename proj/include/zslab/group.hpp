#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace zslab {

/// Finite abelian group in invariant-factor form, G = C_{n1} + ... + C_{nr}
/// with n1 | n2 | ... | nr, each factor >= 2 and rank r in [1,3].
class GroupSpec {
 public:
  GroupSpec() = default;
  explicit GroupSpec(std::vector<int> factors);

  /// Parses literals like "C5xC5" or "c4Xc4" (case-insensitive, 'x' separator).
  static GroupSpec parse(std::string_view text);

  const std::vector<int>& factors() const { return factors_; }
  int rank() const { return static_cast<int>(factors_.size()); }
  int order() const;
  int exponent() const { return factors_.back(); }
  bool homocyclic() const;

  /// The prime p when every invariant factor is a power of p.
  std::optional<long> p_group_prime() const;

  std::string name() const;  // canonical literal, e.g. "C5xC5"

  bool operator==(const GroupSpec&) const = default;

 private:
  std::vector<int> factors_;
};

/// Element of a GroupSpec: reduced residue vector, coeffs[i] in [0, n_i).
/// Ordered lexicographically; this is the fixed total order used everywhere
/// (canonical forms, search expansion, rendering).
struct GroupElement {
  std::vector<int> c;

  GroupElement() = default;
  explicit GroupElement(std::vector<int> coeffs) : c(std::move(coeffs)) {}

  auto operator<=>(const GroupElement&) const = default;
};

bool element_in(const GroupSpec& g, const GroupElement& a);
void require_element(const GroupSpec& g, const GroupElement& a);  // throws std::invalid_argument

GroupElement zero_element(const GroupSpec& g);
GroupElement add(const GroupSpec& g, const GroupElement& a, const GroupElement& b);
GroupElement neg(const GroupSpec& g, const GroupElement& a);
GroupElement sub(const GroupSpec& g, const GroupElement& a, const GroupElement& b);
GroupElement scalar_mul(const GroupSpec& g, long c, const GroupElement& a);

/// Least t >= 1 with t*a = 0.
int element_order(const GroupSpec& g, const GroupElement& a);

/// Automorphism of a homocyclic group C_n^r, given as an r x r matrix mod n;
/// column j is the image of the j-th standard generator.
struct Automorphism {
  int n = 0;
  int r = 0;
  std::array<std::array<int, 3>, 3> m{};  // active r x r block, row-major

  GroupElement apply(const GroupElement& a) const;
  Automorphism inverse() const;
  long det_mod() const;

  bool operator==(const Automorphism&) const = default;
};

/// True iff the tuple's coefficient columns form an invertible matrix mod n.
/// Requires a homocyclic spec and tuple length equal to the rank.
bool is_basis(const GroupSpec& g, const std::vector<GroupElement>& tuple);

/// Matrix whose column j is tuple[j]; throws unless is_basis holds.
Automorphism basis_matrix(const GroupSpec& g, const std::vector<GroupElement>& tuple);

/// Streams every invertible r x r matrix mod n exactly once, in a fixed
/// order (mixed-radix index over all candidate matrices, invertibles kept).
/// Restartable; a [begin,end) candidate range supports splitting by index.
class AutomorphismStream {
 public:
  explicit AutomorphismStream(const GroupSpec& g);
  AutomorphismStream(const GroupSpec& g, std::uint64_t begin, std::uint64_t end);

  std::optional<Automorphism> next();
  void reset() { cursor_ = begin_; }

  std::uint64_t candidate_count() const { return total_; }

 private:
  int n_ = 0;
  int r_ = 0;
  std::uint64_t begin_ = 0, end_ = 0, cursor_ = 0, total_ = 0;
};

/// |Aut(G)| for homocyclic G, by enumeration.
std::uint64_t automorphism_count(const GroupSpec& g);

/// Materializes the full automorphism list; intended for small groups.
std::vector<Automorphism> all_automorphisms(const GroupSpec& g);

}  // namespace zslab
