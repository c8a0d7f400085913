#pragma once

#include <cstdint>
#include <stdexcept>

namespace zslab {

// Least non-negative representative of a mod m (m > 0).
inline long floormod(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

inline long gcd_long(long a, long b) {
  while (b != 0) {
    long t = a % b;
    a = b;
    b = t;
  }
  return a < 0 ? -a : a;
}

// Extended gcd: returns g = gcd(a,b) and x,y with a*x + b*y = g.
inline long egcd(long a, long b, long& x, long& y) {
  if (b == 0) {
    x = 1;
    y = 0;
    return a;
  }
  long x1, y1;
  long g = egcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

// Inverse of a modulo m; throws if gcd(a,m) != 1.
inline long mod_inverse(long a, long m) {
  long x, y;
  long g = egcd(floormod(a, m), m, x, y);
  if (g != 1) throw std::domain_error("mod_inverse: argument is not a unit");
  return floormod(x, m);
}

inline bool is_unit_mod(long a, long m) { return gcd_long(floormod(a, m), m) == 1; }

inline bool is_prime(long n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (long d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

}  // namespace zslab
