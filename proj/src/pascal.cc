#include "idealconv/pascal.hh"

#include <algorithm>
#include <string>

#include "idealconv/errors.hh"

namespace idealconv {

  std::optional<std::uint64_t> binomial_capped(std::uint64_t r, std::uint64_t k, std::uint64_t cap)
  {
    if (k > r)
      return std::uint64_t{0};
    k = std::min(k, r - k);
    // c runs through C(r-k+i, i), which increases with i, so passing cap
    // early is final.
    unsigned __int128 c = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
      c = c * (r - k + i) / i;
      if (c > cap)
        return std::nullopt;
    }
    return static_cast<std::uint64_t>(c);
  }

  unsigned pascal_count(std::uint64_t n)
  {
    if (n < 2)
      throw InvalidArgument("N(n) is only finite for n >= 2");
    if (n == 2)
      return 1;  // C(2,1) is its own mirror image
    unsigned count = 2;  // C(n,1) and C(n,n-1)
    for (std::uint64_t k = 2;; ++k) {
      auto central = binomial_capped(2 * k, k, n);
      if (!central)
        break;
      if (*central == n) {
        ++count;
        continue;
      }
      // C(r,k) increases in r on [2k, n]; find r with C(r,k) == n.
      std::uint64_t lo = 2 * k + 1, hi = n;
      while (lo <= hi) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        auto c = binomial_capped(mid, k, n);
        if (c && *c == n) {
          count += 2;
          break;
        }
        if (c && *c < n)
          lo = mid + 1;
        else
          hi = mid - 1;
      }
    }
    return count;
  }

  PascalIndex::PascalIndex(std::uint64_t limit) : limit_(limit)
  {
    if (limit < 2)
      throw InvalidArgument("PascalIndex limit must be >= 2");
    std::vector<std::pair<std::uint64_t, unsigned>> hits;
    for (std::uint64_t k = 2;; ++k) {
      auto central = binomial_capped(2 * k, k, limit);
      if (!central)
        break;
      hits.emplace_back(*central, 1u);
      // C(r+1,k) = C(r,k) (r+1)/(r+1-k)
      unsigned __int128 c = *central;
      for (std::uint64_t r = 2 * k;; ++r) {
        c = c * (r + 1) / (r + 1 - k);
        if (c > limit)
          break;
        hits.emplace_back(static_cast<std::uint64_t>(c), 2u);
      }
    }
    std::sort(hits.begin(), hits.end());
    for (const auto& [v, m] : hits) {
      if (!interior_.empty() && interior_.back().first == v)
        interior_.back().second += m;
      else
        interior_.emplace_back(v, m);
    }
  }

  unsigned PascalIndex::count(std::uint64_t n) const
  {
    if (n < 2)
      throw InvalidArgument("N(n) is only finite for n >= 2");
    if (n > limit_)
      throw OutOfRange("n = " + std::to_string(n) + " exceeds PascalIndex limit " + std::to_string(limit_));
    if (n == 2)
      return 1;
    auto it = std::lower_bound(interior_.begin(), interior_.end(), std::make_pair(n, 0u));
    unsigned extra = (it != interior_.end() && it->first == n) ? it->second : 0;
    return 2 + extra;
  }

} // namespace idealconv
