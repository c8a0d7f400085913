#include <functional>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "zslab/congruence.hpp"
#include "zslab/engine.hpp"
#include "zslab/search.hpp"
#include "zslab/sequence.hpp"
#include "zslab/structure.hpp"
#include "zslab/verify.hpp"

namespace {

using nlohmann::ordered_json;
using namespace zslab;

constexpr int kExitOk = 0;
constexpr int kExitRefuted = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

struct Options {
  std::string emit = "text";
  int workers = 1;
  bool reduce = false;
  bool no_symmetry = false;
  std::uint64_t budget_nodes = 0;  // 0 = default / env
};

SearchBudget make_budget(const Options& opt) {
  SearchBudget b = SearchBudget::from_env();
  if (opt.budget_nodes > 0) b.max_nodes = opt.budget_nodes;
  return b;
}

Sequence parse_seq(const std::string& text, const Options& opt) {
  return Sequence::parse(text, opt.reduce ? Sequence::ParseMode::reduce
                                          : Sequence::ParseMode::strict);
}

void emit(const Options& opt, const ordered_json& j, const std::function<void()>& text) {
  if (opt.emit == "json")
    std::cout << j.dump(2) << "\n";
  else
    text();
}

int cmd_verify_theorem(const Options& opt, long p, int k) {
  VerificationVerdict v = verify_theorem(p, k, make_budget(opt), opt.workers, !opt.no_symmetry);
  emit(opt, to_json(v), [&]() {
    for (const ClaimResult& c : v.claims) std::cout << c.id << ": " << c.status << "\n";
    std::cout << "overall: " << (v.overall ? "verified" : "not verified") << "\n";
  });
  if (v.overall) return kExitOk;
  for (const ClaimResult& c : v.claims)
    if (c.status == "refuted") return kExitRefuted;
  return kExitBudget;
}

int cmd_extremal(const Options& opt, const std::string& group, int k) {
  GroupSpec spec = GroupSpec::parse(group);
  int d = davenport_formula(spec);
  if (k < 0 || k > d - 1) throw std::invalid_argument("extremal: k must be in [0, D(G)-1]");
  SearchTask task;
  task.spec = spec;
  task.target_length = d + k - 1;
  task.forbidden_zero_sum_max_len = d - k;
  task.budget = make_budget(opt);
  task.symmetry = !opt.no_symmetry;
  task.workers = opt.workers;
  ExtremalReport report = enumerate_extremal(task);
  certify_orbits(report, k);
  emit(opt, to_json(report, k), [&]() {
    std::cout << spec.name() << " k=" << k << ": " << report.orbits.size() << " orbit(s), "
              << (report.exhaustive ? "exhaustive" : "budget exceeded") << ", nodes="
              << report.nodes << "\n";
    for (const ExtremalOrbit& o : report.orbits)
      std::cout << "  " << o.canonical.render_terms() << "  orbit_size=" << o.orbit_size << "\n";
  });
  return report.exhaustive ? kExitOk : kExitBudget;
}

int cmd_invariant(const Options& opt, const std::string& group, const std::string& stat, int k) {
  GroupSpec spec = GroupSpec::parse(group);
  SearchBudget budget = make_budget(opt);
  ordered_json j;
  j["group"] = spec.name();
  j["stat"] = stat;

  long formula = -1;
  bool formula_known = true;
  MaxAvoidingResult search_res;
  long search_value = 0;

  if (stat == "davenport") {
    search_res = max_zero_sum_free_length(spec, budget, opt.workers);
    search_value = search_res.max_length + 1;
    try {
      formula = davenport_formula(spec);
    } catch (const std::invalid_argument&) {
      formula_known = false;
    }
  } else if (stat == "eta") {
    search_res = max_avoiding_length(spec, spec.exponent(), budget, opt.workers);
    search_value = search_res.max_length + 1;
    try {
      formula = eta_formula(spec);
    } catch (const std::invalid_argument&) {
      formula_known = false;
    }
  } else if (stat == "s_leq") {
    if (k < 0) throw std::invalid_argument("invariant: --k is required for s_leq");
    int d = davenport_formula(spec);
    j["k"] = k;
    j["forbidden"] = d - k;
    search_res = max_avoiding_length(spec, d - k, budget, opt.workers);
    search_value = search_res.max_length + 1;
    if (spec.rank() <= 2) {
      int m = spec.rank() == 2 ? spec.factors()[0] : 1;
      int n = spec.factors().back();
      try {
        formula = s_leq_formula(m, n, k);
      } catch (const std::invalid_argument&) {
        formula_known = false;
      }
    } else {
      formula_known = false;
    }
  } else {
    throw std::invalid_argument("invariant: unknown stat '" + stat + "'");
  }

  if (!search_res.exhaustive) throw BudgetExceeded("invariant: search budget exceeded");

  j["search_value"] = search_value;
  j["formula_value"] = formula_known ? ordered_json(formula) : ordered_json(nullptr);
  bool match = !formula_known || search_value == formula;
  j["match"] = formula_known ? ordered_json(match) : ordered_json(nullptr);
  j["nodes"] = search_res.nodes;
  if (search_res.witness) j["extremal_witness"] = search_res.witness->render();
  emit(opt, j, [&]() {
    std::cout << spec.name() << " " << stat << ": search=" << search_value;
    if (formula_known) std::cout << " formula=" << formula << (match ? " (match)" : " (MISMATCH)");
    std::cout << "\n";
  });
  return match ? kExitOk : kExitRefuted;
}

int cmd_minimal_zero_sums(const Options& opt, const std::string& group, int length) {
  GroupSpec spec = GroupSpec::parse(group);
  std::vector<Sequence> reps = enumerate_minimal_zero_sums(spec, length, make_budget(opt),
                                                           opt.workers);
  bool property_b_applies = spec.rank() == 2 && spec.homocyclic() &&
                            length == 2 * spec.factors()[0] - 1;
  ordered_json j;
  j["group"] = spec.name();
  j["length"] = length;
  j["orbit_count"] = reps.size();
  ordered_json arr = ordered_json::array();
  for (const Sequence& s : reps) {
    ordered_json o;
    o["canonical"] = s.render_terms();
    o["minimal"] = is_minimal_zero_sum(s);
    if (property_b_applies) o["property_B"] = match_property_B_form(s).matched;
    arr.push_back(o);
  }
  j["orbits"] = arr;
  emit(opt, j, [&]() {
    std::cout << spec.name() << " minimal zero-sums of length " << length << ": " << reps.size()
              << " orbit(s)\n";
    for (const Sequence& s : reps) std::cout << "  " << s.render_terms() << "\n";
  });
  return kExitOk;
}

int cmd_count(const Options& opt, const std::string& seq) {
  Sequence s = parse_seq(seq, opt);
  ZeroSumProfile profile = count_zero_sums(s);
  ordered_json j = to_json(profile);
  if (opt.emit == "text") {
    std::cout << "length " << s.length() << ", counts:";
    for (const BigInt& c : profile.counts) std::cout << ' ' << c.str();
    std::cout << "\n";
    return kExitOk;
  }
  std::cout << j.dump(2) << "\n";
  return kExitOk;
}

int cmd_shortest(const Options& opt, const std::string& seq) {
  Sequence s = parse_seq(seq, opt);
  std::optional<int> len = shortest_nonempty_zero_sum(s);
  ordered_json j;
  j["shortest"] = len ? ordered_json(*len) : ordered_json(nullptr);
  emit(opt, j, [&]() {
    if (len)
      std::cout << "shortest nonempty zero-sum length: " << *len << "\n";
    else
      std::cout << "zero-sum free\n";
  });
  return kExitOk;
}

int cmd_match(const Options& opt, const std::string& form, const std::string& seq, int k) {
  Sequence s = parse_seq(seq, opt);
  FormMatch fm;
  if (form == "main_theorem") {
    if (k < 0) throw std::invalid_argument("match: --k is required for main_theorem");
    fm = match_main_form(s, k);
  } else if (form == "property_B") {
    fm = match_property_B_form(s);
  } else if (form == "conjecture_k0") {
    fm = match_conjecture_form(s, 0);
  } else if (form == "conjecture_k1") {
    fm = match_conjecture_form(s, 1);
  } else if (form == "conjecture_mid") {
    if (k < 0) throw std::invalid_argument("match: --k is required for conjecture_mid");
    fm = match_conjecture_form(s, k);
  } else if (form == "conjecture_kn1") {
    fm = match_conjecture_form(s, s.spec().factors()[0] - 1);
  } else if (form == "rank3_mzs") {
    fm = match_rank3_form(s);
  } else {
    throw std::invalid_argument("match: unknown form '" + form + "'");
  }
  emit(opt, to_json(fm), [&]() {
    std::cout << fm.form_name << ": " << (fm.matched ? "matched" : "not matched") << "\n";
    if (fm.basis) {
      std::cout << "  basis:";
      for (const GroupElement& e : *fm.basis) {
        std::cout << " (";
        for (std::size_t i = 0; i < e.c.size(); ++i) std::cout << (i ? "," : "") << e.c[i];
        std::cout << ")";
      }
      std::cout << "\n";
    }
  });
  return kExitOk;
}

int cmd_canon(const Options& opt, const std::string& seq) {
  Sequence s = parse_seq(seq, opt);
  Sequence canon = canonicalize(s);
  ordered_json j;
  j["group"] = s.spec().name();
  j["canonical"] = canon.render_terms();
  j["orbit_size"] = orbit_size(s);
  emit(opt, j, [&]() { std::cout << canon.render() << "\n"; });
  return kExitOk;
}

int cmd_lift(const Options& opt, const std::string& seq, int k) {
  Sequence s = parse_seq(seq, opt);
  LiftResult lr = lift_sequence(s, k);
  ordered_json j;
  j["lifted"] = lr.lifted.render();
  ordered_json parts = ordered_json::array();
  for (const Sequence& part : lr.parts) parts.push_back(part.render_terms());
  j["parts"] = parts;
  j["length"] = lr.lifted.length();
  j["sigma_zero"] = lr.lifted.sigma() == zero_element(lr.lifted.spec());
  j["minimal_zero_sum"] = is_minimal_zero_sum(lr.lifted);
  emit(opt, j, [&]() { std::cout << lr.lifted.render() << "\n"; });
  return kExitOk;
}

int cmd_congruence_system(const Options& opt, long p, int k) {
  CongruenceSystem sys = build_system(p, k);
  SystemSolution lhs = solve_by_elimination(sys);
  SystemSolution rhs = closed_form(p, k);
  bool match = lhs.unique && lhs.values == rhs.values;
  ordered_json j;
  j["p"] = p;
  j["k"] = k;
  j["elimination"] = lhs.values;
  j["closed_form"] = rhs.values;
  j["unique"] = lhs.unique;
  j["match"] = match;
  emit(opt, j, [&]() {
    auto line = [](const char* name, const std::vector<long>& v) {
      std::cout << name << ":";
      for (long x : v) std::cout << ' ' << x;
      std::cout << "\n";
    };
    line("elimination", lhs.values);
    line("closed_form", rhs.values);
    std::cout << (match ? "match" : "MISMATCH") << "\n";
  });
  return match ? kExitOk : kExitRefuted;
}

int cmd_olson_check(const Options& opt, const std::string& seq, long p) {
  Sequence s = parse_seq(seq, opt);
  if (p == 0) {
    auto prime = s.spec().p_group_prime();
    if (!prime) throw std::invalid_argument("olson-check: group is not a p-group");
    p = *prime;
  }
  long residue = olson_alternating_check(s, p);
  int d = davenport_formula(s.spec());
  bool expected_zero = s.length() >= d;
  bool ok = !expected_zero || residue == 0;
  ordered_json j;
  j["group"] = s.spec().name();
  j["p"] = p;
  j["length"] = s.length();
  j["davenport"] = d;
  j["residue"] = residue;
  j["expected_zero"] = expected_zero;
  j["ok"] = ok;
  if (!ok) j["sequence"] = s.render();
  emit(opt, j, [&]() {
    std::cout << "alternating sum mod " << p << " = " << residue
              << (expected_zero ? (ok ? " (as required)" : " (VIOLATION)") : "") << "\n";
  });
  return ok ? kExitOk : kExitRefuted;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zslab: zero-sum sequence workbench over finite abelian groups of rank <= 3"};
  app.require_subcommand(1);

  Options opt;
  app.add_option("--emit", opt.emit, "output format: json or text")
      ->check(CLI::IsMember({"json", "text"}));
  app.add_option("--workers", opt.workers, "worker threads for search subcommands")
      ->check(CLI::PositiveNumber);
  app.add_flag("--reduce", opt.reduce, "reduce unreduced residues when parsing sequences");
  app.add_flag("--no-symmetry", opt.no_symmetry, "disable automorphism symmetry reduction");
  app.add_option("--budget-nodes", opt.budget_nodes,
                 "search node budget (overrides ZSLAB_BUDGET_NODES)");

  std::function<int()> action;

  long p = 0;
  int k = -1, length = 0;
  std::string group, seq, stat, form;

  auto* verify = app.add_subcommand("verify-theorem", "run the full extremal-structure pipeline");
  verify->add_option("--p", p, "prime p")->required();
  verify->add_option("--k", k, "k in [2, p-2]")->required();
  verify->callback([&]() { action = [&]() { return cmd_verify_theorem(opt, p, k); }; });

  auto* extremal = app.add_subcommand("extremal", "enumerate extremal orbit representatives");
  extremal->add_option("--group", group, "group literal, e.g. C5xC5")->required();
  extremal->add_option("--k", k, "k, target length D(G)+k-1, forbidden D(G)-k")->required();
  extremal->callback([&]() { action = [&]() { return cmd_extremal(opt, group, k); }; });

  auto* invariant = app.add_subcommand("invariant", "compute an invariant by search");
  invariant->add_option("--group", group)->required();
  invariant->add_option("--stat", stat, "davenport | eta | s_leq")->required();
  invariant->add_option("--k", k, "k for s_leq");
  invariant->callback([&]() { action = [&]() { return cmd_invariant(opt, group, stat, k); }; });

  auto* mzs = app.add_subcommand("minimal-zero-sums", "enumerate minimal zero-sum orbits");
  mzs->add_option("--group", group)->required();
  mzs->add_option("--length", length)->required();
  mzs->callback([&]() { action = [&]() { return cmd_minimal_zero_sums(opt, group, length); }; });

  auto* count = app.add_subcommand("count", "exact zero-sum subsequence counts");
  count->add_option("--seq", seq, "sequence literal")->required();
  count->callback([&]() { action = [&]() { return cmd_count(opt, seq); }; });

  auto* shortest = app.add_subcommand("shortest", "shortest nonempty zero-sum length");
  shortest->add_option("--seq", seq)->required();
  shortest->callback([&]() { action = [&]() { return cmd_shortest(opt, seq); }; });

  auto* match = app.add_subcommand("match", "match a sequence against a named form");
  match->add_option("--form", form,
                    "main_theorem | property_B | conjecture_k0 | conjecture_k1 | "
                    "conjecture_mid | conjecture_kn1 | rank3_mzs")
      ->required();
  match->add_option("--seq", seq)->required();
  match->add_option("--k", k);
  match->callback([&]() { action = [&]() { return cmd_match(opt, form, seq, k); }; });

  auto* canon = app.add_subcommand("canon", "canonical orbit representative");
  canon->add_option("--seq", seq)->required();
  canon->callback([&]() { action = [&]() { return cmd_canon(opt, seq); }; });

  auto* lift = app.add_subcommand("lift", "rank-3 lifting construction");
  lift->add_option("--seq", seq)->required();
  lift->add_option("--k", k)->required();
  lift->callback([&]() { action = [&]() { return cmd_lift(opt, seq, k); }; });

  auto* congr = app.add_subcommand("congruence-system", "binomial congruence system check");
  congr->add_option("--p", p)->required();
  congr->add_option("--k", k)->required();
  congr->callback([&]() { action = [&]() { return cmd_congruence_system(opt, p, k); }; });

  auto* olson = app.add_subcommand("olson-check", "alternating count congruence");
  olson->add_option("--seq", seq)->required();
  olson->add_option("--p", p);
  olson->callback([&]() { action = [&]() { return cmd_olson_check(opt, seq, p); }; });

  // allow the global options to appear after the subcommand as well
  for (CLI::App* sub : app.get_subcommands([](CLI::App*) { return true; }))
    sub->fallthrough();

  try {
    app.parse(argc, argv);
    return action();
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "refuted or failed: " << e.what() << "\n";
    return kExitRefuted;
  }
}
