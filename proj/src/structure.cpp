#include "zslab/structure.hpp"

#include <algorithm>
#include <stdexcept>

#include "zslab/dense.hpp"
#include "zslab/engine.hpp"
#include "zslab/modmath.hpp"

namespace zslab {

namespace {

void require_shape(const Sequence& s, int rank, const char* what) {
  if (s.spec().rank() != rank || !s.spec().homocyclic())
    throw std::invalid_argument(std::string(what) + ": requires a homocyclic rank-" +
                                std::to_string(rank) + " group, got " + s.spec().name());
}

std::vector<GroupElement> elements_with_mult(const Sequence& s, int m) {
  std::vector<GroupElement> out;
  for (auto& [g, c] : s.terms())
    if (c == m) out.push_back(g);
  return out;  // ascending element order
}

// (dense index, multiplicity) pairs sorted by index
using PairList = std::vector<std::pair<int, int>>;

// multiset order on equal-length pair lists
bool pair_list_less(const PairList& a, const PairList& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first != b[j].first) return a[i].first < b[j].first;
    if (a[i].second != b[j].second) return a[i].second > b[j].second;
    ++i;
    ++j;
  }
  return i == a.size() && j < b.size();
}

struct CanonStats {
  Sequence canonical;
  std::uint64_t aut_count = 0;
  std::uint64_t stab_count = 0;
};

CanonStats canonical_stats(const Sequence& s) {
  if (!s.spec().homocyclic())
    throw std::invalid_argument("canonicalize: non-homocyclic group " + s.spec().name());
  DenseGroup dg(s.spec(), 512);
  PairList orig;
  for (auto& [g, m] : s.terms()) orig.emplace_back(dg.index_of(g), m);
  PairList best = orig, img;
  CanonStats cs;
  AutomorphismStream stream(s.spec());
  while (auto a = stream.next()) {
    ++cs.aut_count;
    img.clear();
    for (auto& [gi, m] : orig) img.emplace_back(dg.index_of(a->apply(dg.element(gi))), m);
    std::sort(img.begin(), img.end());
    if (img == orig) ++cs.stab_count;
    if (pair_list_less(img, best)) best = img;
  }
  Sequence canon(s.spec());
  for (auto& [gi, m] : best) canon.add_term(dg.element(gi), m);
  cs.canonical = std::move(canon);
  return cs;
}

void self_check(const Sequence& s, const FormMatch& fm) {
  if (!fm.matched) return;
  Sequence expressed = change_of_basis(s, *fm.basis);
  Sequence want = form_template(s.spec(), fm.form_name, fm.parameters);
  if (!(expressed == want))
    throw std::logic_error("form matcher self-check failed for " + fm.form_name + " on " +
                           s.render());
}

// shared property-B style recognition; fills x/basis on success
FormMatch match_property_b_named(const Sequence& s, const std::string& name) {
  require_shape(s, 2, "match_property_B_form");
  int n = s.spec().factors()[0];
  FormMatch fm;
  fm.form_name = name;
  if (s.length() != 2 * n - 1) return fm;
  for (const GroupElement& a : elements_with_mult(s, n - 1)) {
    Sequence head(s.spec());
    head.add_term(a, n - 1);
    Sequence rest = remove(s, head);  // n terms
    const GroupElement& h = rest.terms().begin()->first;
    if (!is_basis(s.spec(), {a, h})) continue;
    Sequence t = change_of_basis(rest, {a, h});
    bool shape_ok = true;
    std::vector<int> xs;
    long xsum = 0;
    for (auto& [g, m] : t.terms()) {
      if (g.c[1] != 1) {
        shape_ok = false;
        break;
      }
      for (int i = 0; i < m; ++i) xs.push_back(g.c[0]);
      xsum += static_cast<long>(g.c[0]) * m;
    }
    if (!shape_ok || floormod(xsum, n) != 1) continue;
    std::sort(xs.begin(), xs.end());
    fm.matched = true;
    fm.basis = std::vector<GroupElement>{a, h};
    fm.parameters["x"] = xs;
    self_check(s, fm);
    return fm;
  }
  return fm;
}

bool some_n_subset_sums_to(const std::vector<int>& xs, int n, int target) {
  // reachable[c][r]: some c-subset of xs sums to r mod n
  std::vector<std::vector<char>> reach(n + 1, std::vector<char>(n, 0));
  reach[0][0] = 1;
  for (int x : xs)
    for (int c = n - 1; c >= 0; --c)
      for (int r = 0; r < n; ++r)
        if (reach[c][r]) reach[c + 1][(r + x) % n] = 1;
  return reach[n][floormod(target, n)] != 0;
}

}  // namespace

Sequence apply_automorphism(const Sequence& s, const Automorphism& alpha) {
  if (!s.spec().homocyclic() || alpha.r != s.spec().rank() || alpha.n != s.spec().factors()[0])
    throw std::invalid_argument("apply_automorphism: automorphism does not fit " + s.spec().name());
  return map_hom(s, s.spec(), [&](const GroupElement& g) { return alpha.apply(g); });
}

Sequence change_of_basis(const Sequence& s, const std::vector<GroupElement>& basis) {
  Automorphism inv = basis_matrix(s.spec(), basis).inverse();
  return map_hom(s, s.spec(), [&](const GroupElement& g) { return inv.apply(g); });
}

Sequence canonicalize(const Sequence& s) { return canonical_stats(s).canonical; }

std::uint64_t orbit_size(const Sequence& s) {
  CanonStats cs = canonical_stats(s);
  return cs.aut_count / cs.stab_count;
}

Sequence form_template(const GroupSpec& spec, const std::string& form_name,
                       const nlohmann::ordered_json& params) {
  int n = spec.factors()[0];
  auto el = [](std::vector<int> c) { return GroupElement(std::move(c)); };
  Sequence t(spec);
  if (form_name == "main_theorem" || form_name == "conjecture_mid") {
    if (spec.rank() != 2) throw std::invalid_argument("form_template: " + form_name + " needs rank 2");
    int k = params.at("k").get<int>();
    t.add_term(el({1, 0}), n - 1);
    t.add_term(el({0, 1}), n - 1);
    t.add_term(el({1, 1}), k);
  } else if (form_name == "property_B" || form_name == "conjecture_k1" ||
             form_name == "conjecture_k0") {
    if (spec.rank() != 2) throw std::invalid_argument("form_template: " + form_name + " needs rank 2");
    t.add_term(el({1, 0}), n - 1);
    for (int x : params.at("x").get<std::vector<int>>()) t.add_term(el({x, 1}));
    if (form_name == "conjecture_k0") {
      Sequence appended(spec);
      appended.add_term(el(params.at("appended").get<std::vector<int>>()));
      t = remove(t, appended);
    }
  } else if (form_name == "conjecture_kn1") {
    if (spec.rank() != 2) throw std::invalid_argument("form_template: conjecture_kn1 needs rank 2");
    int x = params.at("x").get<int>();
    t.add_term(el({1, 0}), n - 1);
    t.add_term(el({0, 1}), n - 1);
    t.add_term(el({x, 1}), n - 1);
  } else if (form_name == "rank3_mzs") {
    if (spec.rank() != 3) throw std::invalid_argument("form_template: rank3_mzs needs rank 3");
    t.add_term(el({1, 0, 0}), n - 1);
    for (int a : params.at("alpha").get<std::vector<int>>()) t.add_term(el({a, 1, 0}));
    for (auto& bg : params.at("beta_gamma").get<std::vector<std::vector<int>>>())
      t.add_term(el({bg[0], bg[1], 1}));
  } else {
    throw std::invalid_argument("form_template: unknown form " + form_name);
  }
  return t;
}

FormMatch match_main_form(const Sequence& s, int k) {
  require_shape(s, 2, "match_main_form");
  int n = s.spec().factors()[0];
  if (k < 2 || k > n - 2)
    throw std::invalid_argument("match_main_form: k must be in [2, n-2]");
  FormMatch fm;
  fm.form_name = "main_theorem";
  fm.parameters["k"] = k;
  if (s.length() != 2 * n - 2 + k) return fm;
  auto cands = elements_with_mult(s, n - 1);
  for (const GroupElement& a : cands)
    for (const GroupElement& b : cands) {
      if (a == b || !is_basis(s.spec(), {a, b})) continue;
      Sequence tmpl(s.spec());
      tmpl.add_term(a, n - 1);
      tmpl.add_term(b, n - 1);
      tmpl.add_term(add(s.spec(), a, b), k);
      if (tmpl == s) {
        fm.matched = true;
        fm.basis = std::vector<GroupElement>{a, b};
        self_check(s, fm);
        return fm;
      }
    }
  return fm;
}

FormMatch match_property_B_form(const Sequence& s) {
  return match_property_b_named(s, "property_B");
}

FormMatch match_conjecture_form(const Sequence& s, int k) {
  require_shape(s, 2, "match_conjecture_form");
  int n = s.spec().factors()[0];
  if (k < 0 || k > n - 1)
    throw std::invalid_argument("match_conjecture_form: k must be in [0, n-1]");

  if (k == n - 1) {
    FormMatch fm;
    fm.form_name = "conjecture_kn1";
    fm.parameters["k"] = k;
    if (s.length() != 2 * n - 2 + k) return fm;
    auto cands = elements_with_mult(s, n - 1);
    if (cands.size() != 3) return fm;
    for (const GroupElement& a : cands)
      for (const GroupElement& b : cands) {
        if (a == b || !is_basis(s.spec(), {a, b})) continue;
        GroupElement third;
        for (const GroupElement& c : cands)
          if (!(c == a) && !(c == b)) third = c;
        GroupElement coords = basis_matrix(s.spec(), {a, b}).inverse().apply(third);
        int x = coords.c[0];
        if (coords.c[1] != 1 || x < 1 || gcd_long(x, n) != 1) continue;
        fm.matched = true;
        fm.basis = std::vector<GroupElement>{a, b};
        fm.parameters["x"] = x;
        self_check(s, fm);
        return fm;
      }
    return fm;
  }

  if (k == 0) {
    // item 1: S . (-sigma(S)) must satisfy the item-2 description
    FormMatch fm;
    fm.form_name = "conjecture_k0";
    if (s.length() != 2 * n - 2) return fm;
    GroupElement g = neg(s.spec(), s.sigma());
    Sequence extended = s;
    extended.add_term(g);
    FormMatch inner = match_property_b_named(extended, "property_B");
    if (!inner.matched) return fm;
    fm.matched = true;
    fm.basis = inner.basis;
    fm.parameters["x"] = inner.parameters["x"];
    GroupElement appended = basis_matrix(s.spec(), *inner.basis).inverse().apply(g);
    fm.parameters["appended"] = appended.c;
    self_check(s, fm);
    return fm;
  }

  if (k == 1) {
    FormMatch fm = match_property_b_named(s, "conjecture_k1");
    return fm;
  }

  FormMatch fm = match_main_form(s, k);
  fm.form_name = "conjecture_mid";
  self_check(s, fm);
  return fm;
}

FormMatch match_rank3_form(const Sequence& s) {
  require_shape(s, 3, "match_rank3_form");
  int n = s.spec().factors()[0];
  FormMatch fm;
  fm.form_name = "rank3_mzs";
  if (s.length() != 3 * n - 2) return fm;
  if (!(s.sigma() == zero_element(s.spec()))) return fm;

  DenseGroup dg(s.spec(), 512);
  GroupSpec quot({n, n});
  for (const GroupElement& e1 : elements_with_mult(s, n - 1)) {
    // complete e1 to a basis (e1, u, w), first hit in element order
    std::vector<GroupElement> base;
    for (int ui = 0; ui < dg.order() && base.empty(); ++ui)
      for (int wi = 0; wi < dg.order(); ++wi) {
        if (!is_basis(s.spec(), {e1, dg.element(ui), dg.element(wi)})) continue;
        base = {e1, dg.element(ui), dg.element(wi)};
        break;
      }
    if (base.empty()) continue;

    Sequence head(s.spec());
    head.add_term(e1, n - 1);
    Sequence rest = remove(s, head);  // 2n-1 terms
    Sequence t = change_of_basis(rest, base);
    Sequence projected(quot);
    for (auto& [g, m] : t.terms()) projected.add_term(GroupElement({g.c[1], g.c[2]}), m);
    FormMatch inner = match_property_B_form(projected);
    if (!inner.matched) continue;

    // lift the quotient basis through the complement coordinates
    const GroupElement& f2q = (*inner.basis)[0];
    const GroupElement& f3q = (*inner.basis)[1];
    auto lift = [&](const GroupElement& q) {
      return add(s.spec(), scalar_mul(s.spec(), q.c[0], base[1]),
                 scalar_mul(s.spec(), q.c[1], base[2]));
    };
    std::vector<GroupElement> full = {e1, lift(f2q), lift(f3q)};
    if (!is_basis(s.spec(), full)) continue;

    Sequence expressed = change_of_basis(s, full);
    std::vector<int> alpha;
    std::vector<std::vector<int>> beta_gamma;
    long asum = 0, bsum = 0, gsum = 0;
    bool shape_ok = expressed.multiplicity(GroupElement({1, 0, 0})) == n - 1;
    for (auto& [g, m] : expressed.terms()) {
      if (g == GroupElement({1, 0, 0})) continue;
      if (g.c[2] == 0 && g.c[1] == 1) {
        for (int i = 0; i < m; ++i) alpha.push_back(g.c[0]);
        asum += static_cast<long>(g.c[0]) * m;
      } else if (g.c[2] == 1) {
        for (int i = 0; i < m; ++i) beta_gamma.push_back({g.c[0], g.c[1]});
        bsum += static_cast<long>(g.c[0]) * m;
        gsum += static_cast<long>(g.c[1]) * m;
      } else {
        shape_ok = false;
        break;
      }
    }
    if (!shape_ok || static_cast<int>(alpha.size()) != n - 1 ||
        static_cast<int>(beta_gamma.size()) != n)
      continue;
    if (floormod(asum + bsum, n) != 1 || floormod(gsum, n) != 1) continue;
    std::sort(alpha.begin(), alpha.end());
    std::sort(beta_gamma.begin(), beta_gamma.end());
    fm.matched = true;
    fm.basis = full;
    fm.parameters["alpha"] = alpha;
    fm.parameters["beta_gamma"] = beta_gamma;
    self_check(s, fm);
    return fm;
  }
  return fm;
}

LiftResult lift_sequence(const Sequence& s, int k) {
  require_shape(s, 2, "lift_sequence");
  int n = s.spec().factors()[0];
  if (k < 2 || k > n - 2) throw std::invalid_argument("lift_sequence: k must be in [2, p-2]");
  if (s.length() != 2 * n - 2 + k)
    throw std::invalid_argument("lift_sequence: |S| must be 2p-2+k = " +
                                std::to_string(2 * n - 2 + k) + ", got " +
                                std::to_string(s.length()));

  GroupSpec target({n, n, n});
  auto phi = [](const GroupElement& g) { return GroupElement({g.c[0], g.c[1], 1}); };
  Sequence s1(target), s2(target), s3(target);
  GroupElement e1_std({1, 0});
  for (auto& [g, m] : s.terms()) {
    if (g == e1_std)
      s1.add_term(phi(g), m);
    else if (g.c[1] == 1)
      s2.add_term(phi(g), m);
    else
      s3.add_term(phi(g), m);
  }
  Sequence s4(target);
  s4.add_term(GroupElement({0, 0, n - 1}), n - k - 1);
  GroupElement sig = s.sigma();
  GroupElement closing({static_cast<int>(floormod(-sig.c[0], n)),
                        static_cast<int>(floormod(-sig.c[1], n)),
                        static_cast<int>(floormod(-(2L * k - 1), n))});
  Sequence s5(target);
  s5.add_term(closing);

  LiftResult lr;
  lr.lifted = concat(concat(concat(concat(s1, s2), s3), s4), s5);
  lr.parts = {std::move(s1), std::move(s2), std::move(s3), std::move(s4), std::move(s5)};
  return lr;
}

bool verify_claim_A(const Sequence& s, int k) {
  LiftResult lr = lift_sequence(s, k);
  return is_minimal_zero_sum(lr.lifted);
}

bool check_lemma_2_5_instance(const Sequence& s, int k) {
  require_shape(s, 2, "check_lemma_2_5_instance");
  int n = s.spec().factors()[0];
  if (k < 2 || k > n - 2)
    throw std::invalid_argument("check_lemma_2_5_instance: k must be in [2, n-2]");
  if (s.length() != 2 * n - 2 + k)
    throw std::invalid_argument("check_lemma_2_5_instance: |S| must be 2n-2+k");

  // hypothesis shape: e1^[n-1] . prod (x_i e1 + e2), some n of the x_i
  // summing to 1 mod n
  std::vector<GroupElement> shape_e1;
  for (const GroupElement& a : elements_with_mult(s, n - 1)) {
    Sequence head(s.spec());
    head.add_term(a, n - 1);
    Sequence rest = remove(s, head);
    const GroupElement& h = rest.terms().begin()->first;
    if (!is_basis(s.spec(), {a, h})) continue;
    Sequence t = change_of_basis(rest, {a, h});
    bool coset_ok = true;
    std::vector<int> xs;
    for (auto& [g, m] : t.terms()) {
      if (g.c[1] != 1) {
        coset_ok = false;
        break;
      }
      for (int i = 0; i < m; ++i) xs.push_back(g.c[0]);
    }
    if (!coset_ok || !some_n_subset_sums_to(xs, n, 1)) continue;
    shape_e1.push_back(a);
  }
  if (shape_e1.empty())
    throw std::invalid_argument("check_lemma_2_5_instance: sequence not in the hypothesis shape");
  if (has_short_zero_sum(s, 2 * n - 1 - k))
    throw std::invalid_argument("check_lemma_2_5_instance: 0 in Sigma_{<=2n-1-k}(S)");

  // conclusion: the main form holds with the same first basis element
  for (const GroupElement& e1 : shape_e1)
    for (const GroupElement& b : elements_with_mult(s, n - 1)) {
      if (b == e1 || !is_basis(s.spec(), {e1, b})) continue;
      Sequence tmpl(s.spec());
      tmpl.add_term(e1, n - 1);
      tmpl.add_term(b, n - 1);
      tmpl.add_term(add(s.spec(), e1, b), k);
      if (tmpl == s) return true;
    }
  return false;
}

}  // namespace zslab
