#pragma once

#include <cstdint>
#include <vector>

#include "zslab/group.hpp"

namespace zslab {

/// C(a,b) mod p for prime p, via the base-p digit product; C(a,b) = 0 when
/// b > a. Throws std::invalid_argument when p is not prime.
long binom_mod_p(std::uint64_t a, std::uint64_t b, long p);

/// The k x (k+1) coefficient matrix of the binomial congruence system in
/// variables x_1..x_k: row t is
///   C(2p-2+k, t) + C(2k-2, t) x_1 + C(2k-3, t) x_2 + ... + C(k-1, t) x_k = 0 (mod p),
/// t in [0, k-1]. Column 0 carries the constant term.
struct CongruenceSystem {
  long p = 0;
  int k = 0;
  std::vector<std::vector<long>> a;  // residues mod p
};

struct SystemSolution {
  std::vector<long> values;  // x_1..x_k, residues mod p
  bool unique = false;
};

CongruenceSystem build_system(long p, int k);  // requires k in [1, p-1]

/// Gaussian elimination over F_p with the constant column pinned. unique is
/// true iff the k x k variable block has full rank. An inconsistent system
/// throws std::runtime_error; it is surfaced, never silently ignored.
SystemSolution solve_by_elimination(const CongruenceSystem& sys);

/// x_s = (-1)^{k-s+1} C(k, k-s+1) mod p, s in [1,k].
SystemSolution closed_form(long p, int k);

/// D(G) = 1 + sum(n_i - 1) for p-groups and groups of rank <= 2.
int davenport_formula(const GroupSpec& spec);

/// eta(C_n^2) = 3n - 2; other shapes are unsupported (error, never a guess).
int eta_formula(const GroupSpec& spec);

/// s_{<= m+n-1-k}(C_m + C_n) = m + n - 1 + k for m | n, k in [0, m-1].
int s_leq_formula(int m, int n, int k);

}  // namespace zslab
