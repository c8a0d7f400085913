#include "zslab/sequence.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>
#include <stdexcept>

#include "zslab/modmath.hpp"

namespace zslab {

int Sequence::length() const {
  int n = 0;
  for (auto& [g, m] : mult_) n += m;
  return n;
}

int Sequence::multiplicity(const GroupElement& g) const {
  auto it = mult_.find(g);
  return it == mult_.end() ? 0 : it->second;
}

std::vector<GroupElement> Sequence::support() const {
  std::vector<GroupElement> out;
  out.reserve(mult_.size());
  for (auto& [g, m] : mult_) out.push_back(g);
  return out;
}

int Sequence::height() const {
  int h = 0;
  for (auto& [g, m] : mult_) h = std::max(h, m);
  return h;
}

GroupElement Sequence::sigma() const {
  GroupElement acc = zero_element(spec_);
  for (auto& [g, m] : mult_) acc = add(spec_, acc, scalar_mul(spec_, m, g));
  return acc;
}

Sequence& Sequence::add_term(const GroupElement& g, int mult) {
  require_element(spec_, g);
  if (mult < 0) throw std::invalid_argument("add_term: negative multiplicity");
  if (mult == 0) return *this;
  mult_[g] += mult;
  return *this;
}

bool Sequence::contains_subsequence(const Sequence& other) const {
  for (auto& [g, m] : other.mult_)
    if (multiplicity(g) < m) return false;
  return true;
}

namespace {

std::string render_element(const GroupElement& g) {
  std::string s = "(";
  for (std::size_t i = 0; i < g.c.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(g.c[i]);
  }
  s += ')';
  return s;
}

}  // namespace

std::string Sequence::render_terms() const {
  std::string s;
  for (auto& [g, m] : mult_) {
    if (!s.empty()) s += ' ';
    s += render_element(g);
    if (m > 1) {
      s += '^';
      s += std::to_string(m);
    }
  }
  return s;
}

std::string Sequence::render() const {
  std::string s = spec_.name() + " |";
  std::string t = render_terms();
  if (!t.empty()) s += ' ' + t;
  return s;
}

Sequence Sequence::parse(std::string_view text, ParseMode mode) {
  auto bar = text.find('|');
  if (bar == std::string_view::npos)
    throw std::invalid_argument("sequence parse: missing '|' separator");
  auto strip = [](std::string_view v) {
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front()))) v.remove_prefix(1);
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back()))) v.remove_suffix(1);
    return v;
  };
  GroupSpec spec = GroupSpec::parse(strip(text.substr(0, bar)));
  Sequence out(spec);

  std::string_view rest = text.substr(bar + 1);
  std::size_t i = 0;
  auto skip_ws = [&]() {
    while (i < rest.size() && std::isspace(static_cast<unsigned char>(rest[i]))) ++i;
  };
  auto parse_int = [&](const char* what) {
    bool negative = i < rest.size() && rest[i] == '-';
    if (negative) ++i;
    long value = 0;
    auto [ptr, ec] = std::from_chars(rest.data() + i, rest.data() + rest.size(), value);
    if (ec != std::errc() || ptr == rest.data() + i)
      throw std::invalid_argument(std::string("sequence parse: expected ") + what);
    i = static_cast<std::size_t>(ptr - rest.data());
    return negative ? -value : value;
  };

  skip_ws();
  while (i < rest.size()) {
    if (rest[i] != '(')
      throw std::invalid_argument("sequence parse: expected '(' at term start");
    ++i;
    std::vector<int> coeffs;
    while (true) {
      skip_ws();
      long v = parse_int("coefficient");
      int pos = static_cast<int>(coeffs.size());
      if (pos >= spec.rank())
        throw std::invalid_argument("sequence parse: term arity exceeds group rank");
      long n = spec.factors()[pos];
      if (mode == ParseMode::strict) {
        if (v < 0 || v >= n)
          throw std::invalid_argument("sequence parse: unreduced residue " + std::to_string(v) +
                                      " (strict mode, modulus " + std::to_string(n) + ")");
      } else {
        v = floormod(v, n);
      }
      coeffs.push_back(static_cast<int>(v));
      skip_ws();
      if (i < rest.size() && rest[i] == ',') {
        ++i;
        continue;
      }
      if (i < rest.size() && rest[i] == ')') {
        ++i;
        break;
      }
      throw std::invalid_argument("sequence parse: expected ',' or ')' in term");
    }
    if (static_cast<int>(coeffs.size()) != spec.rank())
      throw std::invalid_argument("sequence parse: term arity does not match group rank");
    int mult = 1;
    if (i < rest.size() && rest[i] == '^') {
      ++i;
      long m = parse_int("multiplicity");
      if (m < 1) throw std::invalid_argument("sequence parse: multiplicity must be >= 1");
      mult = static_cast<int>(m);
    }
    out.add_term(GroupElement(std::move(coeffs)), mult);
    skip_ws();
  }
  return out;
}

Sequence concat(const Sequence& s, const Sequence& t) {
  if (!(s.spec() == t.spec())) throw std::invalid_argument("concat: group spec mismatch");
  Sequence out = s;
  for (auto& [g, m] : t.terms()) out.add_term(g, m);
  return out;
}

Sequence remove(const Sequence& s, const Sequence& t) {
  if (!(s.spec() == t.spec())) throw std::invalid_argument("remove: group spec mismatch");
  Sequence out(s.spec());
  for (auto& [g, m] : t.terms())
    if (s.multiplicity(g) < m)
      throw std::invalid_argument("remove: not a subsequence, multiplicity of " +
                                  Sequence(s.spec()).add_term(g).render_terms() + " exceeds " +
                                  std::to_string(s.multiplicity(g)));
  for (auto& [g, m] : s.terms()) {
    int left = m - t.multiplicity(g);
    if (left > 0) out.add_term(g, left);
  }
  return out;
}

Sequence map_hom(const Sequence& s, const GroupSpec& target,
                 const std::function<GroupElement(const GroupElement&)>& phi) {
  Sequence out(target);
  for (auto& [g, m] : s.terms()) out.add_term(phi(g), m);
  return out;
}

int multiset_compare(const Sequence& a, const Sequence& b) {
  if (!(a.spec() == b.spec())) throw std::invalid_argument("multiset_compare: group spec mismatch");
  // Walk both term maps in element order, simulating a lexicographic
  // comparison of the sorted term lists without expanding them.
  auto ia = a.terms().begin(), ea = a.terms().end();
  auto ib = b.terms().begin(), eb = b.terms().end();
  while (ia != ea && ib != eb) {
    if (ia->first != ib->first) return ia->first < ib->first ? -1 : 1;
    if (ia->second != ib->second) {
      // Equal current element, unequal counts: the side with fewer copies
      // moves on to its next (strictly larger) element, or ends. Staying on
      // the smaller element compares smaller unless the other side ended.
      if (ia->second > ib->second) return ++ib == eb ? 1 : -1;
      return ++ia == ea ? -1 : 1;
    }
    ++ia;
    ++ib;
  }
  if (ia == ea && ib == eb) return 0;
  return ia == ea ? -1 : 1;  // proper prefix is smaller
}

}  // namespace zslab
