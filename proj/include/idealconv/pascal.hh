#ifndef IDEALCONV_PASCAL_HH
#define IDEALCONV_PASCAL_HH

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace idealconv {

  // C(r, k) if it does not exceed cap, otherwise nullopt. Exact; the
  // running product is abandoned as soon as a partial binomial passes cap.
  std::optional<std::uint64_t> binomial_capped(std::uint64_t r, std::uint64_t k, std::uint64_t cap);

  // N(n): number of positions (r, k), 0 <= k <= r, of Pascal's triangle
  // holding n. Throws InvalidArgument for n < 2 (N(1) is infinite).
  unsigned pascal_count(std::uint64_t n);

  /// N(n) for every n up to a limit, precomputed from the interior
  /// entries C(r, k), 2 <= k <= r/2, that do not exceed the limit.
  class PascalIndex {
  public:
    explicit PascalIndex(std::uint64_t limit);

    std::uint64_t limit() const noexcept { return limit_; }

    // Same contract as pascal_count; throws OutOfRange above limit().
    unsigned count(std::uint64_t n) const;

    // Values with at least one interior occurrence and their interior
    // multiplicity, ascending by value.
    const std::vector<std::pair<std::uint64_t, unsigned>>& interior() const noexcept { return interior_; }

  private:
    std::uint64_t limit_;
    std::vector<std::pair<std::uint64_t, unsigned>> interior_;
  };

} // namespace idealconv

#endif // IDEALCONV_PASCAL_HH
