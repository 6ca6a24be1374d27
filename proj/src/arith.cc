#include "idealconv/arith.hh"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "idealconv/errors.hh"

namespace idealconv {

  unsigned omega(const Factorization& f) { return static_cast<unsigned>(f.size()); }

  unsigned big_omega(const Factorization& f)
  {
    unsigned s = 0;
    for (const auto& pp : f.factors())
      s += pp.exponent;
    return s;
  }

  unsigned h_min(const Factorization& f)
  {
    if (f.empty())
      return 1;
    unsigned m = f.factors()[0].exponent;
    for (const auto& pp : f.factors())
      m = std::min(m, pp.exponent);
    return m;
  }

  unsigned h_max(const Factorization& f)
  {
    if (f.empty())
      return 1;
    unsigned m = 0;
    for (const auto& pp : f.factors())
      m = std::max(m, pp.exponent);
    return m;
  }

  unsigned a_p(std::uint64_t n, std::uint64_t p)
  {
    if (!is_prime_trial(p))
      throw InvalidArgument("a_p: " + std::to_string(p) + " is not prime");
    if (n == 0)
      throw InvalidArgument("a_p: n must be positive");
    unsigned j = 0;
    while (n % p == 0) {
      n /= p;
      ++j;
    }
    return j;
  }

  unsigned a_p(const Factorization& f, std::uint64_t p)
  {
    for (const auto& pp : f.factors())
      if (pp.prime == p)
        return pp.exponent;
    return 0;
  }

  std::uint64_t divisor_count(const Factorization& f)
  {
    std::uint64_t d = 1;
    for (const auto& pp : f.factors())
      d *= pp.exponent + 1;
    return d;
  }

  double log_f(const Factorization& f)
  {
    if (f.n() <= 1)
      return 0.0;
    return 0.5 * static_cast<double>(divisor_count(f)) * std::log(static_cast<double>(f.n()));
  }

  double log_f_star(const Factorization& f)
  {
    if (f.n() <= 1)
      return 0.0;
    // (d/2 - 1) log n, written so that log_f - log_f_star == log n
    // up to one rounding of the subtraction.
    return log_f(f) - std::log(static_cast<double>(f.n()));
  }

  namespace {

    unsigned exponent_gcd(const Factorization& f)
    {
      unsigned e = 0;
      for (const auto& pp : f.factors())
        e = std::gcd(e, pp.exponent);
      return e;
    }

  } // namespace

  void gamma_tau_counts(const Factorization& f, unsigned& gamma, unsigned& tau)
  {
    if (f.n() < 2)
      throw InvalidArgument("gamma/tau are undefined for n < 2");
    const unsigned e = exponent_gcd(f);
    gamma = 0;
    tau = 0;
    for (unsigned d = 1; d <= e; ++d)
      if (e % d == 0) {
        ++gamma;
        tau += d;
      }
  }

  PowerCounts gamma_tau(const Factorization& f)
  {
    PowerCounts out;
    gamma_tau_counts(f, out.gamma, out.tau);
    const unsigned e = exponent_gcd(f);
    for (unsigned d = 1; d <= e; ++d) {
      if (e % d != 0)
        continue;
      std::uint64_t base = 1;
      for (const auto& pp : f.factors())
        for (unsigned i = 0; i < pp.exponent / d; ++i)
          base *= pp.prime;
      out.reps.push_back({base, d});
    }
    return out;
  }

} // namespace idealconv
