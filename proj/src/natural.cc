#include "idealconv/natural.hh"

#include <algorithm>
#include <cmath>
#include <limits>

namespace idealconv {

  std::string to_string(u128 v)
  {
    if (v == 0)
      return "0";
    std::string s;
    while (v > 0) {
      s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
      v /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
  }

  long double log_natural(const Natural& v)
  {
    if (v == 0)
      return -std::numeric_limits<long double>::infinity();
    if (fits_u128(v))
      return std::log(static_cast<long double>(to_u128(v)));
    // keep the top 64 bits; the discarded tail is below long double precision
    const unsigned shift = static_cast<unsigned>(boost::multiprecision::msb(v)) - 63;
    const auto top = static_cast<std::uint64_t>(v >> shift);
    return std::log(static_cast<long double>(top)) + shift * std::log(2.0L);
  }

  std::optional<Natural> checked_mul(const Natural& a, const Natural& b)
  {
    if (a == 0 || b == 0)
      return Natural(0);
    if (a > natural_max() / b)
      return std::nullopt;
    return a * b;
  }

  Natural floor_to_natural(long double x)
  {
    if (!(x >= 1.0L))
      return Natural(0);
    if (x >= std::ldexp(1.0L, 256))
      return natural_max();
    int exp = 0;
    const long double mant = std::frexp(std::floor(x), &exp);  // x = mant * 2^exp, mant in [0.5, 1)
    // 64 significant bits of a long double mantissa
    const auto bits = static_cast<std::uint64_t>(std::ldexp(mant, 64));
    Natural r = bits;
    if (exp >= 64)
      r <<= (exp - 64);
    else
      r >>= (64 - exp);
    return r;
  }

  std::optional<Natural> parse_natural(std::string_view text)
  {
    if (text.empty() || text.size() > 78)
      return std::nullopt;
    boost::multiprecision::cpp_int v = 0;
    for (char c : text) {
      if (c < '0' || c > '9')
        return std::nullopt;
      v = v * 10 + (c - '0');
    }
    if (v > boost::multiprecision::cpp_int(natural_max()))
      return std::nullopt;
    return static_cast<Natural>(v);
  }

} // namespace idealconv
