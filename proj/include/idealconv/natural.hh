#ifndef IDEALCONV_NATURAL_HH
#define IDEALCONV_NATURAL_HH

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace idealconv {

  // Element type for subsets of N. Set streams such as D(2,3) or
  // floor(n^(1/s)) for small s leave the 128-bit range after a few
  // thousand terms, so elements are carried in 256 bits.
  using Natural = boost::multiprecision::uint256_t;
  using u128 = unsigned __int128;

  inline const Natural& natural_max() {
    static const Natural m = ~Natural(0);
    return m;
  }

  inline std::string to_string(const Natural& v) { return v.str(); }

  std::string to_string(u128 v);

  // Natural log of a positive value; log(0) is -inf.
  long double log_natural(const Natural& v);

  // a*b, or nullopt if the product leaves the 256-bit range.
  std::optional<Natural> checked_mul(const Natural& a, const Natural& b);

  // floor(x) clamped to [0, natural_max()]; x may be any real.
  Natural floor_to_natural(long double x);

  // Parses a decimal positive integer. Returns nullopt on anything else.
  std::optional<Natural> parse_natural(std::string_view text);

  inline bool fits_u128(const Natural& v) { return (v >> 128) == 0; }

  inline u128 to_u128(const Natural& v) {
    return (static_cast<u128>(static_cast<std::uint64_t>(v >> 64)) << 64) |
           static_cast<std::uint64_t>(v & 0xFFFFFFFFFFFFFFFFull);
  }

  inline Natural from_u128(u128 v) {
    Natural r = static_cast<std::uint64_t>(v >> 64);
    r <<= 64;
    r |= static_cast<std::uint64_t>(v);
    return r;
  }

} // namespace idealconv

#endif // IDEALCONV_NATURAL_HH
