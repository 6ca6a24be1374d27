#include "idealconv/integer_set.hh"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <queue>
#include <sstream>

#include <quadmath.h>

#include "idealconv/errors.hh"

namespace idealconv {

  struct IntegerSet::State {
    std::string label;
    std::string descriptor;
    Generator next;
    // Values are strictly increasing, so everything below 2^128 comes
    // first and the memo splits at a single index.
    std::vector<u128> small;
    std::vector<Natural> big;
    bool done = false;
    bool truncated = false;

    std::size_t size() const { return small.size() + big.size(); }
    Natural at(std::size_t i) const  // 0-based
    {
      return i < small.size() ? from_u128(small[i]) : big[i - small.size()];
    }
  };

  IntegerSet::IntegerSet(std::string label, Generator next, std::string descriptor)
    : state_(std::make_shared<State>())
  {
    state_->label = std::move(label);
    state_->descriptor = std::move(descriptor);
    state_->next = std::move(next);
  }

  const std::string& IntegerSet::label() const noexcept { return state_->label; }
  const std::string& IntegerSet::descriptor() const noexcept { return state_->descriptor; }
  std::size_t IntegerSet::memoized() const noexcept { return state_->size(); }
  bool IntegerSet::exhausted() const noexcept { return state_->done; }
  bool IntegerSet::truncated() const noexcept { return state_->truncated; }

  bool IntegerSet::pull() const
  {
    State& s = *state_;
    if (s.done)
      return false;
    std::optional<Natural> v;
    try {
      v = s.next();
    } catch (const StreamOverflow&) {
      s.done = true;
      s.truncated = true;
      s.next = nullptr;
      return false;
    }
    if (!v) {
      s.done = true;
      s.next = nullptr;
      return false;
    }
    if (*v == 0)
      throw std::logic_error("set '" + s.label + "' yielded 0");
    if (s.size() > 0 && *v <= s.at(s.size() - 1))
      throw std::logic_error("set '" + s.label + "' is not strictly increasing at term " +
                             std::to_string(s.size() + 1));
    if (s.big.empty() && fits_u128(*v))
      s.small.push_back(to_u128(*v));
    else
      s.big.push_back(*v);
    return true;
  }

  bool IntegerSet::ensure_terms(std::size_t n) const
  {
    while (state_->size() < n)
      if (!pull())
        return false;
    return true;
  }

  std::optional<Natural> IntegerSet::term(std::size_t n) const
  {
    if (n == 0)
      throw InvalidArgument("set terms are indexed from 1");
    if (!ensure_terms(n)) {
      if (state_->truncated)
        throw InsufficientData("set '" + state_->label + "' truncated at the 256-bit range after " +
                               std::to_string(state_->size()) + " terms");
      return std::nullopt;
    }
    return state_->at(n - 1);
  }

  long double IntegerSet::log_term(std::size_t n) const
  {
    auto v = term(n);
    if (!v)
      throw InsufficientData("set '" + state_->label + "' has fewer than " + std::to_string(n) + " terms");
    if (n <= state_->small.size())
      return std::log(static_cast<long double>(state_->small[n - 1]));
    return log_natural(*v);
  }

  std::size_t IntegerSet::count(const Natural& x) const
  {
    State& s = *state_;
    while (!s.done && (s.size() == 0 || s.at(s.size() - 1) <= x))
      pull();
    if (s.truncated && (s.size() == 0 || s.at(s.size() - 1) <= x))
      throw InsufficientData("A(x) for set '" + s.label + "' needs elements past the 256-bit range");
    if (fits_u128(x)) {
      const u128 xv = to_u128(x);
      return static_cast<std::size_t>(std::upper_bound(s.small.begin(), s.small.end(), xv) - s.small.begin());
    }
    return s.small.size() +
           static_cast<std::size_t>(std::upper_bound(s.big.begin(), s.big.end(), x) - s.big.begin());
  }

  std::size_t IntegerSet::count(long double x) const
  {
    if (!(x >= 1.0L))
      return 0;
    return count(floor_to_natural(x));
  }

  std::vector<Natural> IntegerSet::prefix(std::size_t n) const
  {
    ensure_terms(n);
    const std::size_t m = std::min(n, state_->size());
    std::vector<Natural> out;
    out.reserve(m);
    for (std::size_t i = 0; i < m; ++i)
      out.push_back(state_->at(i));
    return out;
  }

  // ---------------------------------------------------------------- Checkpoints

  Checkpoints::Checkpoints(std::vector<double> values) : values_(std::move(values))
  {
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (!(values_[i] >= 2.0))
        throw InvalidArgument("checkpoints must be >= 2");
      if (i > 0 && !(values_[i] > values_[i - 1]))
        throw InvalidArgument("checkpoints must be strictly increasing");
    }
  }

  Checkpoints Checkpoints::geometric(double start, double factor, double cap)
  {
    if (!(factor > 1.0))
      throw InvalidArgument("checkpoint factor must exceed 1");
    std::vector<double> v;
    for (double x = start; x <= cap; x *= factor)
      v.push_back(x);
    return Checkpoints(std::move(v));
  }

  double Checkpoints::decades() const
  {
    if (values_.size() < 2)
      return 0.0;
    return std::log10(values_.back() / values_.front());
  }

  // ---------------------------------------------------------------- constructors

  namespace {

    std::string fmt_real(double v)
    {
      std::ostringstream os;
      os.imbue(std::locale::classic());
      os << v;
      return os.str();
    }

    Natural floor_quad(__float128 x)
    {
      if (!(x >= 1))
        return Natural(0);
      // split into two 64-bit halves of the 113-bit significand
      x = floorq(x);
      const __float128 two64 = ldexpq(__float128(1), 64);
      int e = 0;
      frexpq(x, &e);
      if (e <= 64)
        return Natural(static_cast<std::uint64_t>(x));
      const int shift = e - 113 > 0 ? e - 113 : 0;
      const __float128 m = ldexpq(x, -shift);  // < 2^113, integral
      const __float128 hi = floorq(m / two64);
      const __float128 lo = m - hi * two64;
      Natural r = static_cast<std::uint64_t>(hi);
      r <<= 64;
      r += static_cast<std::uint64_t>(lo);
      r <<= shift;
      return r;
    }

    const __float128 kNaturalCeil = ldexpq(__float128(1), 255);

    // s = num/den with den <= 64, if s is (numerically) such a fraction.
    std::optional<std::pair<unsigned, unsigned>> small_fraction(double s)
    {
      for (unsigned den = 1; den <= 64; ++den) {
        const double scaled = s * den;
        const double num = std::round(scaled);
        if (num >= 1 && std::fabs(scaled - num) < 1e-10 * den) {
          const unsigned n = static_cast<unsigned>(num);
          const unsigned g = std::gcd(n, den);
          return std::make_pair(n / g, den / g);
        }
      }
      return std::nullopt;
    }

    using Wide = boost::multiprecision::uint1024_t;

    Wide wide_pow(const Wide& base, unsigned e)
    {
      Wide r = 1;
      for (unsigned i = 0; i < e; ++i)
        r *= base;
      return r;
    }

  } // namespace

  IntegerSet naturals()
  {
    auto n = std::make_shared<std::uint64_t>(0);
    return IntegerSet("naturals", [n]() -> std::optional<Natural> { return Natural(++*n); }, "a_n = n");
  }

  IntegerSet arithmetic_progression(std::uint64_t start, std::uint64_t step)
  {
    if (start < 1 || step < 1)
      throw InvalidArgument("arithmetic progression needs start >= 1 and step >= 1");
    auto next = std::make_shared<Natural>(start);
    const Natural st = step;
    return IntegerSet("ap(" + std::to_string(start) + "," + std::to_string(step) + ")",
                      [next, st]() -> std::optional<Natural> {
                        Natural v = *next;
                        if (natural_max() - v < st)
                          throw StreamOverflow();
                        *next += st;
                        return v;
                      },
                      "a_n = " + std::to_string(start) + " + " + std::to_string(step) + "(n-1)");
  }

  IntegerSet power_set(double s)
  {
    if (!(s > 0.0 && s <= 1.0))
      throw InvalidArgument("power_set needs 0 < s <= 1, got " + fmt_real(s));
    const auto frac = small_fraction(s);
    // a_n = floor(n^(den/num)) when s = num/den
    const __float128 expo = frac ? static_cast<__float128>(frac->second) / frac->first
                                 : __float128(1) / static_cast<__float128>(s);
    auto n = std::make_shared<std::uint64_t>(0);
    auto gen = [n, frac, expo]() -> std::optional<Natural> {
      const std::uint64_t k = ++*n;
      const __float128 approx = powq(static_cast<__float128>(k), expo);
      if (!(approx < kNaturalCeil))
        throw StreamOverflow();
      if (!frac)
        return floor_quad(approx);
      const auto [num, den] = *frac;
      if (num == 1) {
        Natural r = 1;
        for (unsigned i = 0; i < den; ++i)
          r *= k;
        return r;
      }
      Natural a = floor_quad(approx);
      // exact correction: largest a with a^num <= k^den
      const double bits_a = (std::log2(static_cast<double>(approx)) + 1) * num;
      const double bits_k = (std::log2(static_cast<double>(k)) + 1) * den;
      if (bits_a < 1000 && bits_k < 1000) {
        const Wide target = wide_pow(Wide(k), den);
        while (wide_pow(Wide(a) + 1, num) <= target)
          ++a;
        while (a > 0 && wide_pow(Wide(a), num) > target)
          --a;
      }
      return a;
    };
    return IntegerSet("power(" + fmt_real(s) + ")", gen, "a_n = floor(n^(1/" + fmt_real(s) + "))");
  }

  IntegerSet logpower_set(double q)
  {
    if (!(q > 0.0 && q < 1.0))
      throw InvalidArgument("logpower_set needs 0 < q < 1, got " + fmt_real(q));
    const __float128 e1 = __float128(1) / static_cast<__float128>(q);
    const __float128 e2 = __float128(2) / static_cast<__float128>(q);
    auto n = std::make_shared<std::uint64_t>(0);
    auto gen = [n, e1, e2]() -> std::optional<Natural> {
      const std::uint64_t k = ++*n;
      const __float128 v = powq(static_cast<__float128>(k), e1) * powq(logq(static_cast<__float128>(k) + 1), e2);
      if (!(v + 1 < kNaturalCeil))
        throw StreamOverflow();
      return floor_quad(v) + 1;
    };
    return IntegerSet("logpower(" + fmt_real(q) + ")", gen,
                      "a_n = floor(n^(1/" + fmt_real(q) + ") log^(2/" + fmt_real(q) + ")(n+1)) + 1");
  }

  IntegerSet smooth_set(const std::vector<std::uint64_t>& primes)
  {
    if (primes.empty())
      throw InvalidArgument("smooth_set needs at least one prime");
    for (std::size_t i = 0; i < primes.size(); ++i) {
      if (!is_prime_trial(primes[i]))
        throw InvalidArgument("smooth_set: " + std::to_string(primes[i]) + " is not prime");
      if (i > 0 && primes[i] <= primes[i - 1])
        throw InvalidArgument("smooth_set: primes must be strictly increasing");
    }
    // Each element v is pushed once, by its parent v / p_max(v): children of
    // v are v * p_j for j >= index of the largest prime used in v.
    struct Node {
      Natural value;
      std::size_t index;
      bool operator>(const Node& o) const { return value > o.value; }
    };
    struct Heap {
      std::vector<Natural> primes;
      std::priority_queue<Node, std::vector<Node>, std::greater<>> heap;
      bool dropped = false;
    };
    auto h = std::make_shared<Heap>();
    for (auto p : primes)
      h->primes.emplace_back(p);
    h->heap.push({Natural(1), 0});
    auto gen = [h]() -> std::optional<Natural> {
      if (h->heap.empty()) {
        if (h->dropped)
          throw StreamOverflow();
        return std::nullopt;
      }
      Node top = h->heap.top();
      h->heap.pop();
      for (std::size_t j = top.index; j < h->primes.size(); ++j) {
        auto c = checked_mul(top.value, h->primes[j]);
        if (!c) {
          h->dropped = true;
          break;  // larger primes overflow too
        }
        h->heap.push({*c, j});
      }
      return top.value;
    };
    std::string label = "smooth(";
    for (std::size_t i = 0; i < primes.size(); ++i)
      label += (i ? "," : "") + std::to_string(primes[i]);
    label += ")";
    return IntegerSet(label, gen, "D" + label.substr(6));
  }

  IntegerSet prime_set(std::shared_ptr<const FactorTable> table)
  {
    auto i = std::make_shared<std::size_t>(0);
    return IntegerSet("primes<=" + std::to_string(table->limit()),
                      [table, i]() -> std::optional<Natural> {
                        auto ps = table->primes();
                        if (*i >= ps.size())
                          return std::nullopt;
                        return Natural(ps[(*i)++]);
                      },
                      "primes up to " + std::to_string(table->limit()));
  }

  IntegerSet finite_set(std::string label, std::vector<Natural> values)
  {
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (values[i] == 0)
        throw InvalidArgument("finite_set: elements must be positive");
      if (i > 0 && values[i] <= values[i - 1])
        throw InvalidArgument("finite_set: elements must be strictly increasing");
    }
    auto data = std::make_shared<std::vector<Natural>>(std::move(values));
    auto i = std::make_shared<std::size_t>(0);
    const std::string desc = "finite, " + std::to_string(data->size()) + " elements";
    return IntegerSet(std::move(label),
                      [data, i]() -> std::optional<Natural> {
                        if (*i >= data->size())
                          return std::nullopt;
                        return (*data)[(*i)++];
                      },
                      desc);
  }

  IntegerSet set_union(const IntegerSet& a, const IntegerSet& b)
  {
    struct Cursor {
      IntegerSet a, b;
      std::size_t ia = 1, ib = 1;
    };
    auto c = std::make_shared<Cursor>(Cursor{a, b});
    auto gen = [c]() -> std::optional<Natural> {
      std::optional<Natural> va, vb;
      try {
        va = c->a.term(c->ia);
        vb = c->b.term(c->ib);
      } catch (const InsufficientData&) {
        throw StreamOverflow();
      }
      if (!va && !vb)
        return std::nullopt;
      if (!vb || (va && *va < *vb)) {
        ++c->ia;
        return va;
      }
      if (!va || *vb < *va) {
        ++c->ib;
        return vb;
      }
      ++c->ia;  // equal heads: keep one
      ++c->ib;
      return va;
    };
    return IntegerSet(a.label() + " u " + b.label(), gen, "union");
  }

  IntegerSet scale(const IntegerSet& a, std::uint64_t k)
  {
    if (k < 1)
      throw InvalidArgument("scale factor must be >= 1");
    auto src = std::make_shared<IntegerSet>(a);
    auto i = std::make_shared<std::size_t>(0);
    const Natural kk = k;
    auto gen = [src, i, kk]() -> std::optional<Natural> {
      std::optional<Natural> v;
      try {
        v = src->term(++*i);
      } catch (const InsufficientData&) {
        throw StreamOverflow();
      }
      if (!v)
        return std::nullopt;
      auto r = checked_mul(*v, kk);
      if (!r)
        throw StreamOverflow();
      return r;
    };
    return IntegerSet(std::to_string(k) + "*" + a.label(), gen, "scaled by " + std::to_string(k));
  }

  IntegerSet read_set(std::istream& in, std::string label)
  {
    std::vector<Natural> values;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      auto b = line.find_first_not_of(" \t\r");
      if (b == std::string::npos || line[b] == '#')
        continue;
      auto e = line.find_last_not_of(" \t\r");
      auto v = parse_natural(std::string_view(line).substr(b, e - b + 1));
      if (!v || *v == 0)
        throw DataError("line " + std::to_string(lineno) + ": expected a positive integer, got '" + line + "'",
                        lineno);
      if (!values.empty() && *v <= values.back())
        throw DataError("line " + std::to_string(lineno) + ": " + to_string(*v) +
                          " does not exceed the previous value " + to_string(values.back()),
                        lineno);
      values.push_back(*v);
    }
    return finite_set(std::move(label), std::move(values));
  }

  void write_prefix(std::ostream& out, const IntegerSet& set, std::size_t n)
  {
    for (std::size_t i = 1; i <= n; ++i) {
      auto v = set.term(i);
      if (!v)
        break;
      out << to_string(*v) << '\n';
    }
  }

} // namespace idealconv
