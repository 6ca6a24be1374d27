#include <doctest.h>

#include <cmath>
#include <memory>

#include "idealconv/errors.hh"
#include "idealconv/exponent.hh"
#include "idealconv/factor_table.hh"

#include "oracles.hh"

using namespace idealconv;

namespace {

  IntegerSet primes_1e7()
  {
    static auto t = std::make_shared<const FactorTable>(build_factor_table(2'000'000));
    return prime_set(t);
  }

  IntegerSet first_hundred()
  {
    std::vector<Natural> v;
    for (int i = 1; i <= 100; ++i)
      v.emplace_back(i);
    return finite_set("1..100", v);
  }

  const Checkpoints& cp() {
    static const Checkpoints c = Checkpoints::standard(1e8);
    return c;
  }

} // namespace

TEST_CASE("estimate_lambda: examples")
{
  const auto sq = estimate_lambda(power_set(0.5), 1'000'000);
  CHECK(std::fabs(sq.value - 0.5) <= 0.01);
  CHECK(sq.window_begin == 800'000);

  const auto nat = estimate_lambda(naturals(), 100'000);
  CHECK(std::fabs(nat.value - 1.0) <= 1e-3);
  CHECK(nat.trend == Trend::flat);

  const auto pr = estimate_lambda(primes_1e7(), 100'000);
  CHECK(pr.value >= 0.80);
  CHECK(pr.value < 1.0);
  CHECK(pr.trend == Trend::increasing);

  // independent ratio for the primes: log n / log p_n at n = 1e5
  const auto ref = oracle::primes_upto(1'299'709);
  CHECK(ref.size() == 100'000);
  const double r = std::log(1e5) / std::log(static_cast<double>(ref.back()));
  CHECK(pr.window_ratios.back().second == doctest::Approx(r).epsilon(1e-12));
}

TEST_CASE("estimate_lambda: window and errors")
{
  const auto e = estimate_lambda(power_set(0.25), 1000, 0.5);
  CHECK(e.window_begin == 500);
  CHECK(e.value >= 0.0);
  CHECK(e.value <= 1.0);
  for (const auto& [n, r] : e.window_ratios) {
    CHECK(r >= 0.0);
    CHECK(r <= 1.0);
  }
  CHECK_THROWS_AS(estimate_lambda(naturals(), 99), InvalidArgument);
  CHECK_THROWS_AS(estimate_lambda(naturals(), 1000, 0.0), InvalidArgument);
  CHECK_THROWS_AS(estimate_lambda(naturals(), 1000, 1.0), InvalidArgument);
  CHECK_THROWS_AS(estimate_lambda(first_hundred(), 101), InsufficientData);
}

TEST_CASE("estimate_lambda: smooth sets decrease")
{
  const auto e = estimate_lambda(smooth_set({2, 3}), 10'000);
  CHECK(e.value <= 0.1);
  CHECK(e.trend == Trend::decreasing);
}

TEST_CASE("classify_leq: examples")
{
  CHECK(classify_leq(power_set(0.5), 0.5, default_deltas_leq(0.5), cp()).verdict == Verdict::consistent);
  CHECK(classify_leq(naturals(), 0.5, default_deltas_leq(0.5), Checkpoints::standard(1e7)).verdict ==
        Verdict::inconsistent);
  const auto v = classify_leq(smooth_set({2, 3, 5}), 0.0, default_deltas_leq(0.0), cp());
  CHECK(v.verdict == Verdict::consistent);
  CHECK(v.ideal == Ideal::I0);
  CHECK_THROWS_AS(classify_leq(naturals(), 0.5, {0.1}, Checkpoints(std::vector<double>{})), InvalidArgument);
  CHECK_THROWS_AS(classify_leq(naturals(), 0.9, {0.2}, cp()), InvalidArgument);
}

TEST_CASE("classify_leq: evidence rows")
{
  const auto v = classify_leq(power_set(0.5), 0.5, {0.1}, cp());
  REQUIRE(v.series.size() == 1);
  const auto& rows = v.evidence();
  REQUIRE(rows.size() == cp().size());
  for (const auto& r : rows) {
    CHECK(r.count == static_cast<std::size_t>(std::floor(std::sqrt(r.x))));
    CHECK(r.envelope == doctest::Approx(std::pow(r.x, 0.6)));
    CHECK(r.ratio == doctest::Approx(r.count / r.envelope));
  }
}

TEST_CASE("classify_less: examples")
{
  const auto a = classify_less(power_set(0.25), 0.5, {0.2, 0.1, 0.05, 0.02}, cp());
  CHECK(a.verdict == Verdict::consistent);
  REQUIRE(a.delta_used.has_value());
  CHECK(*a.delta_used < 0.25);

  const auto b = classify_less(power_set(0.5), 0.5, default_deltas_less(0.5), cp());
  CHECK(b.verdict != Verdict::consistent);

  CHECK(classify_less(first_hundred(), 0.1, default_deltas_less(0.1), cp()).verdict == Verdict::consistent);

  CHECK_THROWS_AS(classify_less(naturals(), 0.5, {}, cp()), InvalidArgument);
  CHECK_THROWS_AS(classify_less(naturals(), 0.5, {0.5}, cp()), InvalidArgument);
  CHECK_THROWS_AS(classify_less(naturals(), 0.5, {0.6}, cp()), InvalidArgument);
}

TEST_CASE("default delta grids are clipped")
{
  CHECK(default_deltas_leq(0.5) == std::vector<double>{0.2, 0.1, 0.05, 0.02});
  CHECK(default_deltas_leq(0.9) == std::vector<double>{0.1, 0.05, 0.02});
  CHECK(default_deltas_less(0.1) == std::vector<double>{0.05, 0.02});
  CHECK(default_deltas_less(1.0) == std::vector<double>{0.2, 0.1, 0.05, 0.02});
}

TEST_CASE("partial_sum_probe")
{
  const Checkpoints decades({1e3, 1e4, 1e5, 1e6, 1e7, 1e8});
  const auto pp = partial_sum_probe(power_set(0.5), 0.5, decades);
  CHECK(pp.back().sum / pp.front().sum > 2.0);
  // over squares a^-1/2 = 1/n: harmonic numbers
  double h = 0;
  for (int n = 1; n <= 10'000; ++n)
    h += 1.0 / n;
  CHECK(pp.back().sum == doctest::Approx(h).epsilon(1e-9));

  const auto lp = partial_sum_probe(logpower_set(0.5), 0.5, decades);
  CHECK(lp.back().sum - lp[lp.size() - 2].sum < 0.05);

  const auto fin = partial_sum_probe(first_hundred(), 0.5, decades);
  for (const auto& s : fin)
    CHECK(s.sum == doctest::Approx(fin.front().sum));
  CHECK_THROWS_AS(partial_sum_probe(naturals(), 0.0, decades), InvalidArgument);
}

TEST_CASE("chain_report")
{
  const auto sq = chain_report(power_set(0.5), {0.25, 0.5, 0.75}, cp());
  REQUIRE(sq.verdicts.size() == 3);
  CHECK(sq.verdicts[0].verdict == Verdict::inconsistent);
  CHECK(sq.verdicts[1].verdict == Verdict::consistent);
  CHECK(sq.verdicts[2].verdict == Verdict::consistent);
  CHECK(sq.monotone);

  const auto sm = chain_report(smooth_set({2, 3}), {0.05, 0.25, 0.5, 0.75}, cp());
  for (const auto& v : sm.verdicts)
    CHECK(v.verdict == Verdict::consistent);

  const auto nat = chain_report(naturals(), {0.25, 0.5, 0.75}, Checkpoints::standard(1e7));
  for (const auto& v : nat.verdicts)
    CHECK(v.verdict == Verdict::inconsistent);

  CHECK_THROWS_AS(chain_report(naturals(), {0.5, 0.25}, cp()), InvalidArgument);
  CHECK_THROWS_AS(chain_report(naturals(), {0.0}, cp()), InvalidArgument);
}

TEST_CASE("I0 as an intersection: smooth sets at every q down to 0.05")
{
  for (const std::vector<std::uint64_t>& ps : {std::vector<std::uint64_t>{2, 3}, std::vector<std::uint64_t>{2, 3, 5}})
    for (double q : {0.05, 0.1, 0.25, 0.5, 0.75})
      CHECK(classify_leq(smooth_set(ps), q, default_deltas_leq(q), cp()).verdict == Verdict::consistent);
}

TEST_CASE("I_<q consistent implies I_<=q consistent on the same evidence")
{
  const IntegerSet sets[] = {power_set(0.25), power_set(0.5), smooth_set({2, 3}), logpower_set(0.5),
                             power_set(0.75)};
  for (const auto& s : sets)
    for (double q : {0.3, 0.6, 0.9})
      if (classify_less(s, q, default_deltas_less(q), cp()).verdict == Verdict::consistent)
        CHECK(classify_leq(s, q, default_deltas_leq(q), cp()).verdict == Verdict::consistent);
}

TEST_CASE("estimator monotonicity under subsequences")
{
  // squares and 4th powers are subsequences of the naturals; 4th powers of the squares
  const double nat = estimate_lambda(naturals(), 100'000).value;
  const double sq = estimate_lambda(power_set(0.5), 100'000).value;
  const double p4 = estimate_lambda(power_set(0.25), 100'000).value;
  CHECK(sq <= nat + 0.01);
  CHECK(p4 <= sq + 0.01);
  const double sm = estimate_lambda(smooth_set({2, 3}), 10'000).value;
  const double sm3 = estimate_lambda(smooth_set({2, 3, 5}), 10'000).value;
  CHECK(sm <= sm3 + 0.01);
}

TEST_CASE("union rule over constructed pairs")
{
  const double ss[] = {0.25, 0.5, 0.75};
  for (double a : ss)
    for (double b : ss) {
      const double u = estimate_lambda(set_union(power_set(a), power_set(b)), 100'000).value;
      const double m = std::max(estimate_lambda(power_set(a), 100'000).value,
                                estimate_lambda(power_set(b), 100'000).value);
      CHECK(std::fabs(u - m) <= 0.02);
    }
}
