#ifndef IDEALCONV_INTEGER_SET_HH
#define IDEALCONV_INTEGER_SET_HH

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "idealconv/factor_table.hh"
#include "idealconv/natural.hh"

namespace idealconv {

  // Thrown by a generator whose next element would leave the Natural range.
  // IntegerSet catches it and marks the stream as truncated.
  class StreamOverflow : public std::overflow_error {
  public:
    StreamOverflow() : std::overflow_error("set element exceeds 256-bit range") {}
  };

  /// A subset A of N given as a strictly increasing stream a_1 < a_2 < ...
  ///
  /// The stream is pulled lazily and memoized, so A(x) and a_n queries
  /// never re-enumerate. IntegerSet is a handle: copies share the same
  /// memo, and a set (with its copies) must be used from one thread.
  class IntegerSet {
  public:
    using Generator = std::function<std::optional<Natural>()>;

    IntegerSet(std::string label, Generator next, std::string descriptor = {});

    const std::string& label() const noexcept;
    const std::string& descriptor() const noexcept;

    // a_n for n >= 1, or nullopt if the stream ends before n terms.
    // Throws InsufficientData if the stream was truncated before n terms.
    std::optional<Natural> term(std::size_t n) const;

    // log a_n; same contract as term().
    long double log_term(std::size_t n) const;

    // Pulls until at least n terms are memoized. Returns false if the
    // stream ends (or is truncated) first.
    bool ensure_terms(std::size_t n) const;

    // A(x) = #{a in A : a <= x}. Throws InsufficientData when the answer
    // depends on elements past a truncation point.
    std::size_t count(long double x) const;
    std::size_t count(const Natural& x) const;

    // First n terms (fewer if the stream is finite).
    std::vector<Natural> prefix(std::size_t n) const;

    std::size_t memoized() const noexcept;
    bool exhausted() const noexcept;   // stream has ended
    bool truncated() const noexcept;   // ended because of the 256-bit range

  private:
    struct State;
    std::shared_ptr<State> state_;
    bool pull() const;
  };

  /// Evaluation points x for counting functions.
  class Checkpoints {
  public:
    // Throws InvalidArgument unless values are strictly increasing and >= 2.
    explicit Checkpoints(std::vector<double> values);

    // start * factor^j for j = 0, 1, ... while <= cap.
    static Checkpoints geometric(double start, double factor, double cap);
    // The default grid: 10^3 * 2^j up to cap.
    static Checkpoints standard(double cap) { return geometric(1000.0, 2.0, cap); }

    const std::vector<double>& values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    bool empty() const noexcept { return values_.empty(); }
    double front() const { return values_.front(); }
    double back() const { return values_.back(); }
    // log10(last / first)
    double decades() const;

  private:
    std::vector<double> values_;
  };

  // {1, 2, 3, ...}
  IntegerSet naturals();

  // {start, start + step, ...}; start >= 1, step >= 1.
  IntegerSet arithmetic_progression(std::uint64_t start, std::uint64_t step);

  // a_n = floor(n^(1/s)), 0 < s <= 1. Exact for rational s with a small
  // denominator; otherwise evaluated in quad precision.
  IntegerSet power_set(double s);

  // a_n = floor(n^(1/q) * log^(2/q)(n+1)) + 1, 0 < q < 1 (natural log).
  IntegerSet logpower_set(double q);

  // D(p_1, ..., p_k): all n whose prime factors lie in the list, 1 included.
  // Primes must be strictly increasing.
  IntegerSet smooth_set(const std::vector<std::uint64_t>& primes);

  // Primes up to table.limit().
  IntegerSet prime_set(std::shared_ptr<const FactorTable> table);

  // A finite set; values must be strictly increasing and positive.
  IntegerSet finite_set(std::string label, std::vector<Natural> values);

  IntegerSet set_union(const IntegerSet& a, const IntegerSet& b);

  // {k a_n : n >= 1}, k >= 1.
  IntegerSet scale(const IntegerSet& a, std::uint64_t k);

  // One positive integer per line; blank lines and '#' comments skipped.
  // Throws DataError naming the first line that is malformed or not
  // larger than its predecessor.
  IntegerSet read_set(std::istream& in, std::string label);

  // Writes up to n terms, one per line.
  void write_prefix(std::ostream& out, const IntegerSet& set, std::size_t n);

} // namespace idealconv

#endif // IDEALCONV_INTEGER_SET_HH
