#include "idealconv/exponent.hh"

#include <algorithm>
#include <cmath>

#include "idealconv/errors.hh"

namespace idealconv {

  namespace {

    const std::vector<double> kDefaultDeltas = {0.2, 0.1, 0.05, 0.02};

    Trend trend_of(const std::vector<std::pair<std::size_t, double>>& samples)
    {
      if (samples.size() < 2)
        return Trend::flat;
      const std::size_t k = std::min(samples.size(), std::max<std::size_t>(3, (samples.size() + 1) / 2));
      const std::size_t begin = samples.size() - k;
      double lo = samples[begin].second, hi = lo;
      bool up = true, down = true;
      for (std::size_t i = begin + 1; i < samples.size(); ++i) {
        const double d = samples[i].second - samples[i - 1].second;
        lo = std::min(lo, samples[i].second);
        hi = std::max(hi, samples[i].second);
        up = up && d >= -1e-4;
        down = down && d <= 1e-4;
      }
      if (hi - lo < 2e-3)
        return Trend::flat;
      if (up)
        return Trend::increasing;
      if (down)
        return Trend::decreasing;
      return Trend::oscillating;
    }

    // beta over consecutive dyadic indices 1, 2, 4, ..., n_last.
    std::vector<LocalExponent> local_exponents(const IntegerSet& set, std::size_t n_last)
    {
      std::vector<std::size_t> idx;
      for (std::size_t n = 1; n < n_last; n *= 2)
        idx.push_back(n);
      if (n_last >= 1)
        idx.push_back(n_last);
      std::vector<LocalExponent> out;
      for (std::size_t i = 0; i + 1 < idx.size(); ++i) {
        const long double la = set.log_term(idx[i]);
        const long double lb = set.log_term(idx[i + 1]);
        if (la <= 0.0L || lb <= la)
          continue;  // a = 1
        out.push_back({static_cast<double>((la + lb) / 2),
                       static_cast<double>(std::log(static_cast<long double>(idx[i + 1]) / idx[i]) / (lb - la))});
      }
      return out;
    }

    struct Deceleration {
      bool falling = false;
      double crossing = 0.0;
    };

    Deceleration deceleration(const std::vector<LocalExponent>& beta, double target, double drop)
    {
      Deceleration d;
      const std::size_t m = beta.size();
      if (m < 3)
        return d;
      double mb[3] = {0, 0, 0}, ml[3] = {0, 0, 0};
      for (int b = 0; b < 3; ++b) {
        const std::size_t lo = b * m / 3, hi = (b + 1) * m / 3;
        for (std::size_t i = lo; i < hi; ++i) {
          mb[b] += beta[i].beta;
          ml[b] += beta[i].log_a;
        }
        mb[b] /= static_cast<double>(hi - lo);
        ml[b] /= static_cast<double>(hi - lo);
      }
      if (!(mb[0] - mb[1] >= drop && mb[1] - mb[2] >= drop))
        return d;
      d.falling = true;
      if (mb[2] <= target) {
        d.crossing = ml[2];
        return d;
      }
      const double slope = (mb[2] - mb[1]) / (ml[2] - ml[1]);
      d.crossing = ml[2] + (target - mb[2]) / slope;
      return d;
    }

    void judge(DeltaSeries& s, const std::vector<LocalExponent>& beta, const ClassifierPolicy& p)
    {
      const auto& r = s.rows;
      const std::size_t n = r.size();
      if (n < 2) {
        s.behavior = Behavior::unresolved;
        return;
      }
      const std::size_t k = std::min(n, std::max(p.min_tail, (n + 2) / 3));
      const std::size_t b = n - k;
      bool constant = true, nonincr = true, nondecr = true;
      for (std::size_t i = b + 1; i < n; ++i) {
        constant = constant && r[i].count == r[b].count;
        nonincr = nonincr && r[i].ratio <= r[i - 1].ratio;
        nondecr = nondecr && r[i].ratio >= r[i - 1].ratio;
      }
      if (constant || (nonincr && r[n - 1].ratio < r[b].ratio)) {
        s.behavior = Behavior::decaying;
        return;
      }
      const auto d = deceleration(beta, s.exponent, p.decel_drop);
      if (d.falling) {
        s.crossing = d.crossing;
        if (d.crossing <= p.horizon * std::log(r[n - 1].x)) {
          s.behavior = Behavior::decelerating;
          s.extrapolated = true;
          return;
        }
      }
      if (nondecr && r[n - 1].ratio > r[b].ratio)
        s.behavior = Behavior::growing;
      else
        s.behavior = Behavior::unresolved;
    }

    DeltaSeries make_series(const IntegerSet& set, double delta, double exponent, const Checkpoints& cp)
    {
      DeltaSeries s;
      s.delta = delta;
      s.exponent = exponent;
      for (double x : cp.values()) {
        EvidenceRow row;
        row.x = x;
        row.count = set.count(static_cast<long double>(x));
        row.envelope = std::pow(x, exponent);
        row.ratio = static_cast<double>(row.count) / row.envelope;
        s.rows.push_back(row);
      }
      return s;
    }

    IdealVerdict prepare(const IntegerSet& set, Ideal ideal, double q, const std::vector<double>& deltas,
                         const Checkpoints& cp, const ClassifierPolicy& policy)
    {
      IdealVerdict v;
      v.ideal = ideal;
      v.q = q;
      v.policy = policy;
      if (cp.decades() < 3.0)
        v.notes.push_back("checkpoints span fewer than 3 decades");
      const std::size_t n_last = set.count(static_cast<long double>(cp.back()));
      v.local_exponents = local_exponents(set, n_last);
      for (double d : deltas) {
        const double e = ideal == Ideal::less ? q - d : q + d;
        v.series.push_back(make_series(set, d, e, cp));
        judge(v.series.back(), v.local_exponents, policy);
      }
      for (const auto& s : v.series)
        if (s.behavior == Behavior::decelerating) {
          v.notes.push_back("verdict uses a projected crossing of the local exponent");
          break;
        }
      return v;
    }

    bool tends_to_zero(Behavior b) { return b == Behavior::decaying || b == Behavior::decelerating; }

  } // namespace

  const std::vector<EvidenceRow>& IdealVerdict::evidence() const
  {
    static const std::vector<EvidenceRow> none;
    if (series.empty())
      return none;
    if (delta_used)
      for (const auto& s : series)
        if (s.delta == *delta_used)
          return s.rows;
    for (const auto& s : series)
      if (!tends_to_zero(s.behavior))
        return s.rows;
    return series.front().rows;
  }

  ExponentEstimate estimate_lambda(const IntegerSet& set, std::size_t terms, double tail_fraction)
  {
    if (terms < 100)
      throw InvalidArgument("estimate_lambda needs terms >= 100");
    if (!(tail_fraction > 0.0 && tail_fraction < 1.0))
      throw InvalidArgument("tail_fraction must lie in (0, 1)");
    if (!set.term(terms))
      throw InsufficientData("set '" + set.label() + "' has " + std::to_string(set.memoized()) + " elements, " +
                             std::to_string(terms) + " requested");
    auto ratio = [&](std::size_t n) {
      const long double la = set.log_term(n);
      return la > 0.0L ? static_cast<double>(std::log(static_cast<long double>(n)) / la) : 0.0;
    };
    ExponentEstimate e;
    e.terms = terms;
    e.tail_fraction = tail_fraction;
    e.window_begin = std::max<std::size_t>(2, static_cast<std::size_t>(std::floor((1.0 - tail_fraction) * terms)));
    e.value = -1.0;
    for (std::size_t n = e.window_begin; n <= terms; ++n) {
      const double r = ratio(n);
      if (r > e.value) {
        e.value = r;
        e.argmax = n;
      }
    }
    for (std::size_t n = 2; n < terms; n *= 2)
      e.window_ratios.emplace_back(n, ratio(n));
    e.window_ratios.emplace_back(terms, ratio(terms));
    e.trend = trend_of(e.window_ratios);
    return e;
  }

  std::vector<double> default_deltas_leq(double q)
  {
    std::vector<double> out;
    for (double d : kDefaultDeltas)
      if (q + d <= 1.0 + 1e-12)
        out.push_back(d);
    return out;
  }

  std::vector<double> default_deltas_less(double q)
  {
    std::vector<double> out;
    for (double d : kDefaultDeltas)
      if (d < q)
        out.push_back(d);
    return out;
  }

  IdealVerdict classify_leq(const IntegerSet& set, double q, std::vector<double> deltas, const Checkpoints& cp,
                            const ClassifierPolicy& policy)
  {
    if (cp.empty())
      throw InvalidArgument("classify_leq: empty checkpoint grid");
    if (!(q >= 0.0 && q < 1.0))
      throw InvalidArgument("classify_leq: q must lie in [0, 1)");
    std::erase_if(deltas, [q](double d) { return !(d > 0.0) || q + d > 1.0 + 1e-12; });
    if (deltas.empty())
      throw InvalidArgument("classify_leq: no delta with q + delta <= 1");
    IdealVerdict v = prepare(set, q == 0.0 ? Ideal::I0 : Ideal::leq, q, deltas, cp, policy);
    bool all = true, any_growing = false;
    for (const auto& s : v.series) {
      all = all && tends_to_zero(s.behavior);
      any_growing = any_growing || s.behavior == Behavior::growing;
    }
    v.verdict = any_growing ? Verdict::inconsistent : all ? Verdict::consistent : Verdict::indeterminate;
    return v;
  }

  IdealVerdict classify_less(const IntegerSet& set, double q, std::vector<double> delta_grid, const Checkpoints& cp,
                             const ClassifierPolicy& policy)
  {
    if (cp.empty())
      throw InvalidArgument("classify_less: empty checkpoint grid");
    if (!(q > 0.0 && q <= 1.0))
      throw InvalidArgument("classify_less: q must lie in (0, 1]");
    if (delta_grid.empty())
      throw InvalidArgument("classify_less: empty delta grid");
    for (double d : delta_grid)
      if (!(d > 0.0) || d >= q)
        throw InvalidArgument("classify_less: every delta must satisfy 0 < delta < q");
    IdealVerdict v = prepare(set, Ideal::less, q, delta_grid, cp, policy);
    for (const auto& s : v.series)
      if (tends_to_zero(s.behavior)) {
        v.verdict = Verdict::consistent;
        v.delta_used = s.delta;
        return v;
      }
    const auto smallest = std::min_element(v.series.begin(), v.series.end(),
                                           [](const auto& a, const auto& b) { return a.delta < b.delta; });
    v.verdict = smallest->behavior == Behavior::growing ? Verdict::inconsistent : Verdict::indeterminate;
    return v;
  }

  std::vector<PartialSum> partial_sum_probe(const IntegerSet& set, double q, const Checkpoints& cp)
  {
    if (!(q > 0.0 && q <= 1.0))
      throw InvalidArgument("partial_sum_probe: q must lie in (0, 1]");
    std::vector<PartialSum> out;
    long double sum = 0.0L;
    std::size_t n = 0;
    for (double x : cp.values()) {
      const std::size_t upto = set.count(static_cast<long double>(x));
      for (; n < upto; ++n)
        sum += std::exp(-static_cast<long double>(q) * set.log_term(n + 1));
      out.push_back({x, upto, static_cast<double>(sum)});
    }
    return out;
  }

  ChainReport chain_report(const IntegerSet& set, const std::vector<double>& q_grid, const Checkpoints& cp,
                           const ClassifierPolicy& policy)
  {
    for (std::size_t i = 0; i < q_grid.size(); ++i) {
      if (!(q_grid[i] > 0.0 && q_grid[i] < 1.0))
        throw InvalidArgument("chain_report: q values must lie in (0, 1)");
      if (i > 0 && !(q_grid[i] > q_grid[i - 1]))
        throw InvalidArgument("chain_report: q grid must be strictly increasing");
    }
    ChainReport r;
    bool seen = false;
    for (double q : q_grid) {
      r.verdicts.push_back(classify_leq(set, q, default_deltas_leq(q), cp, policy));
      auto& v = r.verdicts.back();
      if (seen && v.verdict != Verdict::consistent) {
        v.chain_violation = true;
        r.monotone = false;
      }
      seen = seen || v.verdict == Verdict::consistent;
    }
    return r;
  }

  const char* to_string(Trend t)
  {
    switch (t) {
    case Trend::increasing: return "increasing";
    case Trend::decreasing: return "decreasing";
    case Trend::oscillating: return "oscillating";
    case Trend::flat: return "flat";
    }
    return "?";
  }

  const char* to_string(Ideal i)
  {
    switch (i) {
    case Ideal::I0: return "I0";
    case Ideal::less: return "I_less";
    case Ideal::Ic: return "Ic";
    case Ideal::leq: return "I_leq";
    }
    return "?";
  }

  const char* to_string(Verdict v)
  {
    switch (v) {
    case Verdict::consistent: return "consistent";
    case Verdict::inconsistent: return "inconsistent";
    case Verdict::indeterminate: return "indeterminate";
    }
    return "?";
  }

  const char* to_string(Behavior b)
  {
    switch (b) {
    case Behavior::decaying: return "decaying";
    case Behavior::decelerating: return "decelerating";
    case Behavior::growing: return "growing";
    case Behavior::unresolved: return "unresolved";
    }
    return "?";
  }

} // namespace idealconv
