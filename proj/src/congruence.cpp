#include "zslab/congruence.hpp"

#include <stdexcept>
#include <string>

#include "zslab/modmath.hpp"

namespace zslab {

namespace {

// C(a,b) mod p with a,b < p, by factorials.
long small_binom_mod_p(long a, long b, long p) {
  if (b > a) return 0;
  long num = 1, den = 1;
  for (long i = 0; i < b; ++i) {
    num = num * ((a - i) % p) % p;
    den = den * ((i + 1) % p) % p;
  }
  return num * mod_inverse(den, p) % p;
}

}  // namespace

long binom_mod_p(std::uint64_t a, std::uint64_t b, long p) {
  if (!is_prime(p)) throw std::invalid_argument("binom_mod_p: modulus " + std::to_string(p) + " is not prime");
  if (b > a) return 0;
  long res = 1;
  std::uint64_t up = static_cast<std::uint64_t>(p);
  while (a > 0 || b > 0) {
    long ad = static_cast<long>(a % up), bd = static_cast<long>(b % up);
    if (bd > ad) return 0;
    res = res * small_binom_mod_p(ad, bd, p) % p;
    a /= up;
    b /= up;
  }
  return res;
}

CongruenceSystem build_system(long p, int k) {
  if (!is_prime(p)) throw std::invalid_argument("build_system: p must be prime");
  if (k < 1 || k > p - 1) throw std::invalid_argument("build_system: k must be in [1, p-1]");
  CongruenceSystem sys;
  sys.p = p;
  sys.k = k;
  sys.a.assign(k, std::vector<long>(k + 1, 0));
  for (int t = 0; t < k; ++t) {
    sys.a[t][0] = binom_mod_p(static_cast<std::uint64_t>(2 * p - 2 + k), t, p);
    for (int s = 1; s <= k; ++s)
      sys.a[t][s] = binom_mod_p(static_cast<std::uint64_t>(2 * k - 1 - s), t, p);
  }
  return sys;
}

SystemSolution solve_by_elimination(const CongruenceSystem& sys) {
  long p = sys.p;
  int k = sys.k;
  // augmented system M x = rhs with M the variable block, rhs = -constant column
  std::vector<std::vector<long>> m(k, std::vector<long>(k));
  std::vector<long> rhs(k);
  for (int t = 0; t < k; ++t) {
    for (int s = 1; s <= k; ++s) m[t][s - 1] = sys.a[t][s];
    rhs[t] = floormod(-sys.a[t][0], p);
  }

  int rank = 0;
  std::vector<int> pivot_col(k, -1);
  for (int col = 0; col < k && rank < k; ++col) {
    int piv = -1;
    for (int row = rank; row < k; ++row)
      if (m[row][col] != 0) {
        piv = row;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[rank], m[piv]);
    std::swap(rhs[rank], rhs[piv]);
    long inv = mod_inverse(m[rank][col], p);
    for (int j = col; j < k; ++j) m[rank][j] = m[rank][j] * inv % p;
    rhs[rank] = rhs[rank] * inv % p;
    for (int row = 0; row < k; ++row) {
      if (row == rank || m[row][col] == 0) continue;
      long f = m[row][col];
      for (int j = col; j < k; ++j) m[row][j] = floormod(m[row][j] - f * m[rank][j], p);
      rhs[row] = floormod(rhs[row] - f * rhs[rank], p);
    }
    pivot_col[rank] = col;
    ++rank;
  }
  for (int row = rank; row < k; ++row)
    if (rhs[row] != 0)
      throw std::runtime_error("solve_by_elimination: inconsistent system at p=" + std::to_string(p) +
                               " k=" + std::to_string(sys.k) + " (system expected to be solvable)");

  SystemSolution sol;
  sol.unique = (rank == k);
  sol.values.assign(k, 0);  // free variables pinned to 0 in the non-unique case
  for (int row = 0; row < rank; ++row) sol.values[pivot_col[row]] = rhs[row];
  return sol;
}

SystemSolution closed_form(long p, int k) {
  if (!is_prime(p)) throw std::invalid_argument("closed_form: p must be prime");
  if (k < 1 || k > p - 1) throw std::invalid_argument("closed_form: k must be in [1, p-1]");
  SystemSolution sol;
  sol.unique = true;
  sol.values.reserve(k);
  for (int s = 1; s <= k; ++s) {
    long v = binom_mod_p(static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(k - s + 1), p);
    if ((k - s + 1) % 2 != 0) v = floormod(-v, p);
    sol.values.push_back(v);
  }
  return sol;
}

int davenport_formula(const GroupSpec& spec) {
  if (!spec.p_group_prime() && spec.rank() > 2)
    throw std::invalid_argument("davenport_formula: value unknown for " + spec.name() +
                                " (not a p-group and rank > 2)");
  int d = 1;
  for (int n : spec.factors()) d += n - 1;
  return d;
}

int eta_formula(const GroupSpec& spec) {
  if (spec.rank() != 2 || !spec.homocyclic())
    throw std::invalid_argument("eta_formula: value unknown for " + spec.name() +
                                " (known shape is C_n x C_n)");
  return 3 * spec.factors()[0] - 2;
}

int s_leq_formula(int m, int n, int k) {
  if (m < 1 || n < m || n % m != 0)
    throw std::invalid_argument("s_leq_formula: need 1 <= m | n");
  if (k < 0 || k > m - 1)
    throw std::invalid_argument("s_leq_formula: need k in [0, m-1]");
  return m + n - 1 + k;
}

}  // namespace zslab
