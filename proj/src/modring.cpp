#include "masseykit/modring.hpp"

namespace mk {

bool is_prime(int64_t n) {
  if (n < 2) return false;
  for (int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

int64_t ipow(int64_t base, int exp) {
  int64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

int64_t mod_pow(int64_t base, int64_t exp, int64_t m) {
  int64_t r = 1, b = mod_reduce(base, m);
  for (; exp > 0; exp >>= 1) {
    if (exp & 1) r = r * b % m;
    b = b * b % m;
  }
  return r;
}

int64_t mod_inverse(int64_t a, int64_t m) {
  // Extended Euclid; a must be a unit mod m.
  int64_t r0 = m, r1 = mod_reduce(a, m), s0 = 0, s1 = 1;
  while (r1 != 0) {
    int64_t q = r0 / r1;
    int64_t r2 = r0 - q * r1, s2 = s0 - q * s1;
    r0 = r1; r1 = r2; s0 = s1; s1 = s2;
  }
  if (r0 != 1) throw DomainError("mod_inverse: not a unit modulo " + std::to_string(m));
  return mod_reduce(s0, m);
}

int p_valuation(int64_t a, int64_t p) {
  if (a == 0) throw DomainError("p_valuation of zero");
  if (a < 0) a = -a;
  int v = 0;
  while (a % p == 0) { a /= p; ++v; }
  return v;
}

ModRing::ModRing(int64_t p_, int k_) : p(p_), k(k_) {
  if (!is_prime(p)) throw DomainError("modulus base must be prime, got " + std::to_string(p));
  if (k < 1 || k > 12) throw DomainError("modulus exponent out of range");
  m = ipow(p, k);
}

int64_t ModRing::unit_part(int64_t a) const {
  a = reduce(a);
  if (a == 0) throw DomainError("unit_part of zero");
  while (a % p == 0) a /= p;
  return a;
}

int64_t binomial_mod(int64_t n, int64_t r, int64_t m) {
  if (r < 0 || r > n) return 0;
  // Exact integer binomial, reduced at the end; arguments stay small here (n < 100).
  if (r > n - r) r = n - r;
  __int128 acc = 1;
  for (int64_t i = 1; i <= r; ++i) {
    acc = acc * (n - r + i) / i;
  }
  return (int64_t)(acc % m);
}

}  // namespace mk
