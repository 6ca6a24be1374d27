#include "idealconv/factor_table.hh"

#include <cmath>
#include <new>
#include <string>

#include "idealconv/errors.hh"

namespace idealconv {

  FactorTable build_factor_table(std::uint64_t limit)
  {
    if (limit < 2)
      throw InvalidArgument("factor table limit must be >= 2, got " + std::to_string(limit));
    if (limit > FactorTable::kMaxLimit)
      throw InvalidArgument("factor table limit " + std::to_string(limit) +
                            " exceeds 32-bit spf storage");

    FactorTable t;
    t.limit_ = limit;
    const std::size_t bytes = (limit + 1) * sizeof(std::uint32_t);
    try {
      t.spf_.assign(limit + 1, 0);
      // pi(x) < 1.26 x / log x for x > 1
      const double est = 1.26 * double(limit) / std::log(double(limit)) + 16;
      t.primes_.reserve(static_cast<std::size_t>(est));
    } catch (const std::bad_alloc&) {
      throw ResourceError("cannot allocate factor table for limit " + std::to_string(limit), bytes);
    } catch (const std::length_error&) {
      throw ResourceError("cannot allocate factor table for limit " + std::to_string(limit), bytes);
    }

    auto& spf = t.spf_;
    auto& primes = t.primes_;
    for (std::uint64_t i = 2; i <= limit; ++i) {
      if (spf[i] == 0) {
        spf[i] = static_cast<std::uint32_t>(i);
        primes.push_back(static_cast<std::uint32_t>(i));
      }
      const std::uint32_t si = spf[i];
      // each composite is written exactly once, by its smallest prime
      for (std::uint32_t p : primes) {
        if (p > si || i * p > limit)
          break;
        spf[i * p] = p;
      }
    }
    return t;
  }

  Factorization FactorTable::factorize(std::uint64_t n) const
  {
    if (n == 0)
      throw InvalidArgument("cannot factorize 0");
    if (n > limit_)
      throw OutOfRange("n = " + std::to_string(n) + " exceeds factor table limit " +
                       std::to_string(limit_));
    Factorization f(n);
    while (n > 1) {
      const std::uint32_t p = spf_[n];
      unsigned e = 0;
      do {
        n /= p;
        ++e;
      } while (n % p == 0);
      f.push(p, e);
    }
    return f;
  }

  bool is_prime_trial(std::uint64_t n)
  {
    if (n < 2)
      return false;
    if (n % 2 == 0)
      return n == 2;
    for (std::uint64_t d = 3; d <= n / d; d += 2)
      if (n % d == 0)
        return false;
    return true;
  }

} // namespace idealconv
