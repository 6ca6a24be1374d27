#ifndef IDEALCONV_ARITH_HH
#define IDEALCONV_ARITH_HH

#include <cstdint>
#include <vector>

#include "idealconv/factor_table.hh"

namespace idealconv {

  // Number of distinct prime factors; omega(1) = 0.
  unsigned omega(const Factorization& f);

  // Prime factors counted with multiplicity; big_omega(1) = 0.
  unsigned big_omega(const Factorization& f);

  // Smallest / largest exponent in the canonical representation.
  // Both are 1 for n = 1.
  unsigned h_min(const Factorization& f);
  unsigned h_max(const Factorization& f);

  // Exponent j with p^j || n. a_p(1, p) = 0.
  // Throws InvalidArgument if p is not prime or n == 0.
  unsigned a_p(std::uint64_t n, std::uint64_t p);

  // Exponent of p in an existing factorization (0 when absent).
  unsigned a_p(const Factorization& f, std::uint64_t p);

  // d(n) = prod (a_j + 1).
  std::uint64_t divisor_count(const Factorization& f);

  // log f(n) where f(n) is the product of all divisors of n, i.e.
  // (d(n)/2) log n. f(n) itself is never formed. Returns 0 for n = 1.
  double log_f(const Factorization& f);

  // log f*(n) = log f(n) - log n. Returns 0 for n = 1.
  double log_f_star(const Factorization& f);

  struct PowerRepresentation {
    std::uint64_t base;
    unsigned exponent;
    friend bool operator==(const PowerRepresentation&, const PowerRepresentation&) = default;
  };

  /// Every way of writing n = a^b with a, b >= 1.
  struct PowerCounts {
    unsigned gamma = 0;   // number of representations
    unsigned tau = 0;     // sum of the exponents b over all representations
    std::vector<PowerRepresentation> reps;  // ordered by exponent, ascending
  };

  // With e = gcd of the exponents of n, the representations are
  // (n^(1/d), d) for d | e. Throws InvalidArgument for n < 2.
  PowerCounts gamma_tau(const Factorization& f);

  // gamma and tau only, without materializing the representation list.
  void gamma_tau_counts(const Factorization& f, unsigned& gamma, unsigned& tau);

} // namespace idealconv

#endif // IDEALCONV_ARITH_HH
