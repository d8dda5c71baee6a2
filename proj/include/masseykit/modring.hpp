#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mk {

// Thrown when an input violates a documented precondition.
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when a computation would exceed a configured resource budget.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool is_prime(int64_t n);

int64_t ipow(int64_t base, int exp);

// Canonical residue in [0, m).
inline int64_t mod_reduce(int64_t a, int64_t m) {
  int64_t r = a % m;
  return r < 0 ? r + m : r;
}

int64_t mod_pow(int64_t base, int64_t exp, int64_t m);

// Inverse of a unit modulo p^k (a must be coprime to p).
int64_t mod_inverse(int64_t a, int64_t m);

// Largest v with p^v dividing a; requires a != 0.
int p_valuation(int64_t a, int64_t p);

// Prime-power coefficient ring Z/p^k.
struct ModRing {
  int64_t p = 0;
  int k = 1;
  int64_t m = 0;  // p^k

  ModRing() = default;
  ModRing(int64_t p_, int k_);

  bool operator==(const ModRing&) const = default;
  bool is_field() const { return k == 1; }
  int64_t reduce(int64_t a) const { return mod_reduce(a, m); }
  // Valuation capped at k; val(0) = k.
  int val(int64_t a) const { return a == 0 ? k : p_valuation(a, p); }
  // Unit part u with a = u * p^val(a), for a != 0.
  int64_t unit_part(int64_t a) const;
};

int64_t binomial_mod(int64_t n, int64_t r, int64_t m);

}  // namespace mk
