#ifndef IDEALCONV_FACTOR_TABLE_HH
#define IDEALCONV_FACTOR_TABLE_HH

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace idealconv {

  struct PrimePower {
    std::uint64_t prime;
    unsigned exponent;
    friend bool operator==(const PrimePower&, const PrimePower&) = default;
  };

  /// Canonical factorization n = p1^a1 * ... * pk^ak with p1 < ... < pk.
  /// Stored inline: no n below 2^64 has more than 15 distinct prime factors.
  class Factorization {
  public:
    static constexpr std::size_t kMaxDistinct = 15;

    Factorization() = default;
    explicit Factorization(std::uint64_t n) : n_(n) {}

    std::uint64_t n() const noexcept { return n_; }
    std::span<const PrimePower> factors() const noexcept { return {data_.data(), size_}; }
    std::size_t size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }

    // Appends p^e; p must exceed the last prime appended.
    void push(std::uint64_t p, unsigned e) { data_[size_++] = {p, e}; }

  private:
    std::uint64_t n_ = 1;
    std::array<PrimePower, kMaxDistinct> data_{};
    std::size_t size_ = 0;
  };

  /// Smallest-prime-factor table for 2..limit, built with a linear sieve.
  /// Immutable after construction; safe to share between threads.
  class FactorTable {
  public:
    // Largest limit the 32-bit spf storage can hold.
    static constexpr std::uint64_t kMaxLimit = 0xFFFFFFFFull;

    std::uint64_t limit() const noexcept { return limit_; }

    // spf(n) for 2 <= n <= limit.
    std::uint32_t spf(std::uint64_t n) const { return spf_[n]; }
    bool is_prime(std::uint64_t n) const { return n >= 2 && n <= limit_ && spf_[n] == n; }

    // All primes up to limit, ascending.
    std::span<const std::uint32_t> primes() const noexcept { return primes_; }

    Factorization factorize(std::uint64_t n) const;

    friend FactorTable build_factor_table(std::uint64_t limit);

  private:
    FactorTable() = default;
    std::uint64_t limit_ = 0;
    std::vector<std::uint32_t> spf_;
    std::vector<std::uint32_t> primes_;
  };

  // Throws InvalidArgument for limit < 2 or limit > kMaxLimit and
  // ResourceError if the table cannot be allocated.
  FactorTable build_factor_table(std::uint64_t limit);

  // Throws OutOfRange if n > table.limit(), InvalidArgument if n == 0.
  inline Factorization factorize(std::uint64_t n, const FactorTable& table) { return table.factorize(n); }

  // Deterministic trial-division primality; used where no table is at hand.
  bool is_prime_trial(std::uint64_t n);

} // namespace idealconv

#endif // IDEALCONV_FACTOR_TABLE_HH
