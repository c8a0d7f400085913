#include "zslab/group.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <limits>
#include <stdexcept>

#include "zslab/modmath.hpp"

namespace zslab {

GroupSpec::GroupSpec(std::vector<int> factors) : factors_(std::move(factors)) {
  if (factors_.empty() || factors_.size() > 3)
    throw std::invalid_argument("GroupSpec: rank must be in [1,3]");
  for (int n : factors_) {
    if (n < 2) throw std::invalid_argument("GroupSpec: invariant factors must be >= 2");
    if (n > 65535) throw std::invalid_argument("GroupSpec: invariant factor too large");
  }
  for (std::size_t i = 1; i < factors_.size(); ++i)
    if (factors_[i] % factors_[i - 1] != 0)
      throw std::invalid_argument("GroupSpec: invariant factor chain n1 | n2 | ... violated");
}

GroupSpec GroupSpec::parse(std::string_view text) {
  std::vector<int> fs;
  std::size_t i = 0;
  auto fail = [&]() -> void {
    throw std::invalid_argument("GroupSpec: cannot parse group literal '" + std::string(text) + "'");
  };
  while (i < text.size()) {
    if (std::tolower(static_cast<unsigned char>(text[i])) != 'c') fail();
    ++i;
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), value);
    if (ec != std::errc() || ptr == text.data() + i) fail();
    fs.push_back(value);
    i = static_cast<std::size_t>(ptr - text.data());
    if (i < text.size()) {
      if (std::tolower(static_cast<unsigned char>(text[i])) != 'x') fail();
      ++i;
      if (i == text.size()) fail();
    }
  }
  if (fs.empty()) fail();
  return GroupSpec(std::move(fs));
}

int GroupSpec::order() const {
  long o = 1;
  for (int n : factors_) o *= n;
  if (o > std::numeric_limits<int>::max())
    throw std::overflow_error("GroupSpec: group order exceeds int range");
  return static_cast<int>(o);
}

bool GroupSpec::homocyclic() const {
  return std::all_of(factors_.begin(), factors_.end(),
                     [&](int n) { return n == factors_[0]; });
}

std::optional<long> GroupSpec::p_group_prime() const {
  // smallest prime factor of n1; all factors must be powers of it
  long n1 = factors_[0];
  long p = 2;
  while (p * p <= n1 && n1 % p != 0) ++p;
  if (n1 % p != 0) p = n1;
  for (long n : factors_) {
    while (n % p == 0) n /= p;
    if (n != 1) return std::nullopt;
  }
  return p;
}

std::string GroupSpec::name() const {
  std::string s;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) s += 'x';
    s += 'C';
    s += std::to_string(factors_[i]);
  }
  return s;
}

bool element_in(const GroupSpec& g, const GroupElement& a) {
  if (a.c.size() != static_cast<std::size_t>(g.rank())) return false;
  for (int i = 0; i < g.rank(); ++i)
    if (a.c[i] < 0 || a.c[i] >= g.factors()[i]) return false;
  return true;
}

void require_element(const GroupSpec& g, const GroupElement& a) {
  if (!element_in(g, a))
    throw std::invalid_argument("element does not belong to group " + g.name());
}

GroupElement zero_element(const GroupSpec& g) {
  return GroupElement(std::vector<int>(g.rank(), 0));
}

GroupElement add(const GroupSpec& g, const GroupElement& a, const GroupElement& b) {
  require_element(g, a);
  require_element(g, b);
  GroupElement out = a;
  for (int i = 0; i < g.rank(); ++i) {
    out.c[i] += b.c[i];
    if (out.c[i] >= g.factors()[i]) out.c[i] -= g.factors()[i];
  }
  return out;
}

GroupElement neg(const GroupSpec& g, const GroupElement& a) {
  require_element(g, a);
  GroupElement out = a;
  for (int i = 0; i < g.rank(); ++i)
    if (out.c[i] != 0) out.c[i] = g.factors()[i] - out.c[i];
  return out;
}

GroupElement sub(const GroupSpec& g, const GroupElement& a, const GroupElement& b) {
  return add(g, a, neg(g, b));
}

GroupElement scalar_mul(const GroupSpec& g, long c, const GroupElement& a) {
  require_element(g, a);
  GroupElement out = a;
  for (int i = 0; i < g.rank(); ++i)
    out.c[i] = static_cast<int>(floormod(c * a.c[i], g.factors()[i]));
  return out;
}

int element_order(const GroupSpec& g, const GroupElement& a) {
  require_element(g, a);
  // lcm over coordinates of n_i / gcd(n_i, c_i)
  long ord = 1;
  for (int i = 0; i < g.rank(); ++i) {
    long ni = g.factors()[i];
    long oi = a.c[i] == 0 ? 1 : ni / gcd_long(ni, a.c[i]);
    ord = ord / gcd_long(ord, oi) * oi;
  }
  return static_cast<int>(ord);
}

GroupElement Automorphism::apply(const GroupElement& a) const {
  if (a.c.size() != static_cast<std::size_t>(r))
    throw std::invalid_argument("Automorphism::apply: rank mismatch");
  GroupElement out(std::vector<int>(r, 0));
  for (int i = 0; i < r; ++i) {
    long acc = 0;
    for (int j = 0; j < r; ++j) acc += static_cast<long>(m[i][j]) * a.c[j];
    out.c[i] = static_cast<int>(floormod(acc, n));
  }
  return out;
}

long Automorphism::det_mod() const {
  long d = 0;
  if (r == 1) {
    d = m[0][0];
  } else if (r == 2) {
    d = static_cast<long>(m[0][0]) * m[1][1] - static_cast<long>(m[0][1]) * m[1][0];
  } else {
    d = static_cast<long>(m[0][0]) * (static_cast<long>(m[1][1]) * m[2][2] - static_cast<long>(m[1][2]) * m[2][1]) -
        static_cast<long>(m[0][1]) * (static_cast<long>(m[1][0]) * m[2][2] - static_cast<long>(m[1][2]) * m[2][0]) +
        static_cast<long>(m[0][2]) * (static_cast<long>(m[1][0]) * m[2][1] - static_cast<long>(m[1][1]) * m[2][0]);
  }
  return floormod(d, n);
}

Automorphism Automorphism::inverse() const {
  long det = det_mod();
  long dinv = mod_inverse(det, n);  // throws if not a unit
  Automorphism out;
  out.n = n;
  out.r = r;
  if (r == 1) {
    out.m[0][0] = static_cast<int>(dinv % n);
    return out;
  }
  // adjugate * det^{-1}
  auto cof = [&](int i, int j) -> long {
    if (r == 2) {
      long v = m[1 - i][1 - j];
      return ((i + j) % 2 == 0) ? v : -v;
    }
    int ri[2], ci[2], a = 0, b = 0;
    for (int t = 0; t < 3; ++t) {
      if (t != i) ri[a++] = t;
      if (t != j) ci[b++] = t;
    }
    long v = static_cast<long>(m[ri[0]][ci[0]]) * m[ri[1]][ci[1]] -
             static_cast<long>(m[ri[0]][ci[1]]) * m[ri[1]][ci[0]];
    return ((i + j) % 2 == 0) ? v : -v;
  };
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      out.m[i][j] = static_cast<int>(floormod(cof(j, i) * dinv, n));
  return out;
}

namespace {

void require_homocyclic(const GroupSpec& g, const char* what) {
  if (!g.homocyclic())
    throw std::invalid_argument(std::string(what) + ": unsupported for non-homocyclic group " + g.name());
}

Automorphism matrix_from_index(int n, int r, std::uint64_t idx) {
  Automorphism a;
  a.n = n;
  a.r = r;
  // digits fill columns first so that the identity-ish orderings stay stable
  for (int j = 0; j < r; ++j)
    for (int i = 0; i < r; ++i) {
      a.m[i][j] = static_cast<int>(idx % n);
      idx /= n;
    }
  return a;
}

}  // namespace

bool is_basis(const GroupSpec& g, const std::vector<GroupElement>& tuple) {
  require_homocyclic(g, "is_basis");
  if (tuple.size() != static_cast<std::size_t>(g.rank()))
    throw std::invalid_argument("is_basis: tuple length must equal rank");
  Automorphism a;
  a.n = g.factors()[0];
  a.r = g.rank();
  for (int j = 0; j < a.r; ++j) {
    require_element(g, tuple[j]);
    for (int i = 0; i < a.r; ++i) a.m[i][j] = tuple[j].c[i];
  }
  return is_unit_mod(a.det_mod(), a.n);
}

Automorphism basis_matrix(const GroupSpec& g, const std::vector<GroupElement>& tuple) {
  if (!is_basis(g, tuple)) throw std::invalid_argument("basis_matrix: tuple is not a basis");
  Automorphism a;
  a.n = g.factors()[0];
  a.r = g.rank();
  for (int j = 0; j < a.r; ++j)
    for (int i = 0; i < a.r; ++i) a.m[i][j] = tuple[j].c[i];
  return a;
}

AutomorphismStream::AutomorphismStream(const GroupSpec& g) : AutomorphismStream(g, 0, 0) {
  end_ = total_;
}

AutomorphismStream::AutomorphismStream(const GroupSpec& g, std::uint64_t begin, std::uint64_t end)
    : n_(g.factors()[0]), r_(g.rank()) {
  require_homocyclic(g, "enumerate_automorphisms");
  total_ = 1;
  for (int i = 0; i < r_ * r_; ++i) total_ *= static_cast<std::uint64_t>(n_);
  begin_ = begin;
  end_ = end == 0 && begin == 0 ? total_ : end;
  if (end_ > total_) end_ = total_;
  cursor_ = begin_;
}

std::optional<Automorphism> AutomorphismStream::next() {
  while (cursor_ < end_) {
    Automorphism a = matrix_from_index(n_, r_, cursor_++);
    if (is_unit_mod(a.det_mod(), n_)) return a;
  }
  return std::nullopt;
}

std::uint64_t automorphism_count(const GroupSpec& g) {
  AutomorphismStream s(g);
  std::uint64_t c = 0;
  while (s.next()) ++c;
  return c;
}

std::vector<Automorphism> all_automorphisms(const GroupSpec& g) {
  AutomorphismStream s(g);
  std::vector<Automorphism> out;
  while (auto a = s.next()) out.push_back(*a);
  return out;
}

}  // namespace zslab
