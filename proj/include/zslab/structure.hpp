#pragma once

#include <cstdint>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "zslab/sequence.hpp"

namespace zslab {

/// Result of matching a sequence against a named structural template. When
/// matched, re-expressing the sequence in the witness basis reproduces
/// form_template(spec, form_name, parameters) exactly; matchers verify this
/// before returning.
struct FormMatch {
  bool matched = false;
  std::string form_name;
  std::optional<std::vector<GroupElement>> basis;  // basis witness
  nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
};

Sequence apply_automorphism(const Sequence& s, const Automorphism& alpha);

/// Coordinates of every term relative to the given basis tuple (applies the
/// inverse of the column matrix).
Sequence change_of_basis(const Sequence& s, const std::vector<GroupElement>& basis);

/// Minimum of { alpha(S) : alpha in Aut(G) } in the fixed multiset order.
/// Idempotent and constant on orbits. Homocyclic groups only.
Sequence canonicalize(const Sequence& s);

/// |Aut(G)| / |stabilizer of S|.
std::uint64_t orbit_size(const Sequence& s);

/// Standard-coordinate template of a named form. Recognized names:
/// main_theorem, conjecture_mid  (params: k)
/// property_B, conjecture_k1     (params: x = multiset of first coordinates)
/// conjecture_k0                 (params: x, appended = witness coords of -sigma(S))
/// conjecture_kn1                (params: x, k)
/// rank3_mzs                     (params: alpha, beta_gamma)
Sequence form_template(const GroupSpec& spec, const std::string& form_name,
                       const nlohmann::ordered_json& params);

/// S = e1^[n-1] e2^[n-1] (e1+e2)^[k] for some basis (e1,e2); k in [2, n-2].
FormMatch match_main_form(const Sequence& s, int k);

/// S = e1^[n-1] prod_{i=1}^{n} (x_i e1 + e2), sum x_i = 1 mod n, |S| = 2n-1.
FormMatch match_property_B_form(const Sequence& s);

/// Dispatches on k to the conjectured extremal shape for C_n^2.
FormMatch match_conjecture_form(const Sequence& s, int k);

/// S = e1^[p-1] prod (a_i e1 + e2) prod (b_i e1 + c_i e2 + e3) over C_p^3
/// with |S| = 3p-2, sum a + sum b = sum c = 1 mod p.
FormMatch match_rank3_form(const Sequence& s);

/// S' = phi(S) . (-e3)^[p-k-1] . (-sigma(S) - (2k-1) e3) over C_p^3, where
/// phi(x e1 + y e2) = x e1 + y e2 + e3. parts holds the five constituent
/// blocks (the phi image split by the standard-basis reading of S, then the
/// filler block and the closing term).
struct LiftResult {
  Sequence lifted;
  std::vector<Sequence> parts;
};

LiftResult lift_sequence(const Sequence& s, int k);

/// True iff the lift of S is a minimal zero-sum sequence of length 3p-2,
/// recomputed from scratch with the counting engine.
bool verify_claim_A(const Sequence& s, int k);

/// Requires S in the hypothesis shape e1^[n-1] prod_{i in [1,n+k-1]}
/// (x_i e1 + e2) with some n of the x_i summing to 1 mod n, and
/// 0 not in Sigma_{<= 2n-1-k}(S); throws otherwise. Returns whether the
/// main-form match succeeds with that same first basis element.
bool check_lemma_2_5_instance(const Sequence& s, int k);

}  // namespace zslab
