#include <doctest.h>

#include <cmath>
#include <memory>
#include <numeric>
#include <set>

#include "idealconv/convergence.hh"
#include "idealconv/errors.hh"

#include "oracles.hh"

using namespace idealconv;

namespace {

  std::shared_ptr<const FactorTable> table(std::uint64_t limit)
  {
    return std::make_shared<const FactorTable>(build_factor_table(limit));
  }

  std::shared_ptr<const FactorTable> table_1e5()
  {
    static auto t = table(100'000);
    return t;
  }

  std::shared_ptr<const FactorTable> table_1e7()
  {
    static auto t = table(10'000'000);
    return t;
  }

  std::vector<std::uint64_t> head(const IntegerSet& s, std::size_t n)
  {
    std::vector<std::uint64_t> out;
    for (const auto& v : s.prefix(n))
      out.push_back(static_cast<std::uint64_t>(v));
    return out;
  }

  const SequenceKind kAllKinds[] = {
    SequenceKind::h_over_log,          SequenceKind::H_over_log,           SequenceKind::ap_scaled,
    SequenceKind::gamma,               SequenceKind::tau,                  SequenceKind::pascal_N,
    SequenceKind::omega_over_loglog,   SequenceKind::bigomega_over_loglog, SequenceKind::loglog_f_over_loglog,
    SequenceKind::loglog_fstar_over_loglog,
  };

  // x_n recomputed from a trial-division factorization.
  double reference_value(const SequenceSpec& spec, std::uint64_t n, const std::vector<unsigned>& pascal)
  {
    const auto f = oracle::factor(n);
    const double ln = std::log(static_cast<double>(n));
    unsigned lo = ~0u, hi = 0, big = 0, g = 0;
    std::uint64_t d = 1;
    for (auto [p, e] : f) {
      lo = std::min(lo, e);
      hi = std::max(hi, e);
      big += e;
      d *= e + 1;
      g = std::gcd(g, e);
    }
    switch (spec.kind) {
    case SequenceKind::h_over_log: return lo / ln;
    case SequenceKind::H_over_log: return hi / ln;
    case SequenceKind::ap_scaled: return std::log(static_cast<double>(spec.p)) * (f.count(spec.p) ? f.at(spec.p) : 0) / ln;
    case SequenceKind::gamma:
    case SequenceKind::tau: {
      unsigned gamma = 0, tau = 0;
      for (unsigned b = 1; b <= g; ++b)
        if (g % b == 0) {
          ++gamma;
          tau += b;
        }
      return spec.kind == SequenceKind::gamma ? gamma : tau;
    }
    case SequenceKind::pascal_N: return pascal[n];
    case SequenceKind::omega_over_loglog: return f.size() / std::log(ln);
    case SequenceKind::bigomega_over_loglog: return big / std::log(ln);
    case SequenceKind::loglog_f_over_loglog: return std::log(static_cast<double>(oracle::log_divisor_product(n))) / std::log(ln);
    case SequenceKind::loglog_fstar_over_loglog: {
      const double lfs = static_cast<double>(oracle::log_divisor_product(n)) - ln;
      return lfs > 1e-9 ? std::log(lfs) / std::log(ln) : -INFINITY;
    }
    }
    return NAN;
  }

} // namespace

TEST_CASE("sequence specs")
{
  CHECK(SequenceSpec::make(SequenceKind::h_over_log).limit_L == 0.0);
  CHECK(SequenceSpec::make(SequenceKind::gamma).limit_L == 1.0);
  CHECK(SequenceSpec::make(SequenceKind::pascal_N).limit_L == 2.0);
  CHECK(SequenceSpec::make(SequenceKind::loglog_f_over_loglog).limit_L == doctest::Approx(1.0 + std::log(2.0)));
  CHECK(SequenceSpec::make(SequenceKind::omega_over_loglog).start_n == 3);
  CHECK(SequenceSpec::make(SequenceKind::tau).start_n == 2);
  CHECK(SequenceSpec::parse("ap_scaled:3")->p == 3);
  CHECK(SequenceSpec::parse("ap_scaled:3")->name() == "ap_scaled:3");
  CHECK_FALSE(SequenceSpec::parse("ap_scaled").has_value());
  CHECK_FALSE(SequenceSpec::parse("nope").has_value());
  CHECK_THROWS_AS(SequenceSpec::make(SequenceKind::ap_scaled, 4), InvalidArgument);
}

TEST_CASE("exceptional_set: examples")
{
  const auto t = table_1e5();
  const auto g = exceptional_set(SequenceSpec::make(SequenceKind::gamma), 0.5, t);
  CHECK(head(g, 6) == std::vector<std::uint64_t>{4, 8, 9, 16, 25, 27});

  const auto n = exceptional_set(SequenceSpec::make(SequenceKind::pascal_N), 0.5, t);
  CHECK(head(n, 6) == std::vector<std::uint64_t>{2, 6, 10, 15, 20, 21});

  const auto h = exceptional_set(SequenceSpec::make(SequenceKind::h_over_log), 1.0 / std::log(2.0) + 0.01, t);
  CHECK_FALSE(h.term(1).has_value());

  CHECK_THROWS_AS(exceptional_set(SequenceSpec::make(SequenceKind::gamma), 0.0, t), InvalidArgument);
}

TEST_CASE("exceptional_set agrees with direct evaluation up to 1e5")
{
  const auto t = table_1e5();
  const auto pascal = oracle::pascal_counts(100'000);
  for (auto kind : kAllKinds) {
    const auto spec = SequenceSpec::make(kind, kind == SequenceKind::ap_scaled ? 3 : 0);
    const auto values = evaluate_sequence(spec, *t);
    std::vector<double> xs(100'001, NAN);
    for (std::uint64_t n = spec.start_n; n <= 100'000; ++n)
      xs[n] = reference_value(spec, n, pascal);
    for (double eps : {0.25, 0.5, 1.0}) {
      std::vector<std::uint64_t> ref;
      for (std::uint64_t n = spec.start_n; n <= 100'000; ++n)
        if (std::isinf(xs[n]) || std::fabs(xs[n] - spec.limit_L) >= eps * (1 - 1e-9))
          ref.push_back(n);
      INFO(spec.name(), " eps=", eps);
      CHECK(head(exceptional_set(values, eps), ref.size() + 1) == ref);
      if (kind != SequenceKind::pascal_N && kind != SequenceKind::loglog_f_over_loglog &&
          kind != SequenceKind::loglog_fstar_over_loglog)
        CHECK(head(exceptional_set(spec, eps, t), ref.size() + 1) == ref);
    }
  }
}

TEST_CASE("exceptional sets shrink as eps grows")
{
  const auto t = table_1e5();
  const auto cp = Checkpoints::geometric(4, 2, 1e5);
  for (auto kind : kAllKinds) {
    const auto values = evaluate_sequence(SequenceSpec::make(kind, kind == SequenceKind::ap_scaled ? 2 : 0), *t);
    const double eps[] = {0.1, 0.25, 0.5, 0.75, 1.0};
    for (std::size_t i = 1; i < std::size(eps); ++i) {
      const auto big = exceptional_set(values, eps[i - 1]), small = exceptional_set(values, eps[i]);
      for (double x : cp.values())
        REQUIRE(small.count(static_cast<long double>(x)) <= big.count(static_cast<long double>(x)));
      std::set<std::uint64_t> bigset;
      for (auto v : head(big, 1'000'000))
        bigset.insert(v);
      for (auto v : head(small, 1'000'000))
        REQUIRE(bigset.count(v));
    }
  }
}

TEST_CASE("envelopes: closed forms")
{
  CHECK(envelope_value(EnvelopeKind::thm7, 0.5, 1e6) ==
        doctest::Approx(2.0 * std::sqrt(2.0) * std::pow(10.0, 6 * (1 - 0.25 * std::log(2.0)))));
  CHECK(std::log10(envelope_value(EnvelopeKind::thm7, 0.5, 1e6) / (2 * std::sqrt(2.0))) ==
        doctest::Approx(4.960).epsilon(1e-3));
  CHECK(envelope_value(EnvelopeKind::thm8, 0.5, 1e4, 2) == doctest::Approx(1328.8).epsilon(1e-4));
  CHECK(envelope_value(EnvelopeKind::thm9_sqrt, 0.5, 100) == doctest::Approx(66.4).epsilon(1e-3));
}

TEST_CASE("envelope_check: examples")
{
  const auto t = table(1'000'000);
  {
    const auto spec = SequenceSpec::make(SequenceKind::H_over_log);
    const auto rows = envelope_check(exceptional_set(spec, 0.5, t), spec, 0.5, EnvelopeKind::thm7, Checkpoints({1e6}));
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].holds);
  }
  {
    const auto spec = SequenceSpec::make(SequenceKind::ap_scaled, 2);
    const auto rows = envelope_check(exceptional_set(spec, 0.5, t), spec, 0.5, EnvelopeKind::thm8, Checkpoints({1e4}));
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].holds);
    CHECK(rows[0].envelope == doctest::Approx(1328.8).epsilon(1e-4));
  }
  {
    const auto spec = SequenceSpec::make(SequenceKind::gamma);
    const auto rows =
      envelope_check(exceptional_set(spec, 0.5, t), spec, 0.5, EnvelopeKind::thm9_sqrt, Checkpoints({2, 3, 100}));
    REQUIRE(rows.size() == 1);  // x < 4 skipped
    CHECK(rows[0].count == 12);
    CHECK(rows[0].holds);
    const auto pp = oracle::perfect_powers(100);
    CHECK(pp == std::vector<std::uint64_t>{4, 8, 9, 16, 25, 27, 32, 36, 49, 64, 81, 100});
  }
  const auto h = SequenceSpec::make(SequenceKind::h_over_log);
  CHECK_THROWS_AS(envelope_check(exceptional_set(h, 0.5, t), h, 0.5, EnvelopeKind::thm7, Checkpoints({100})),
                  InvalidArgument);
  const auto g = SequenceSpec::make(SequenceKind::gamma);
  CHECK_THROWS_AS(envelope_check(exceptional_set(g, 0.5, t), g, 0.5, EnvelopeKind::thm8, Checkpoints({100})),
                  InvalidArgument);
}

TEST_CASE("envelopes hold at every checkpoint in [4, 1e7]")
{
  const auto t = table_1e7();
  const auto cp = Checkpoints::geometric(4, 1.5, 1e7);
  struct Case {
    SequenceSpec spec;
    EnvelopeKind kind;
  };
  const Case cases[] = {
    {SequenceSpec::make(SequenceKind::H_over_log), EnvelopeKind::thm7},
    {SequenceSpec::make(SequenceKind::ap_scaled, 2), EnvelopeKind::thm8},
    {SequenceSpec::make(SequenceKind::ap_scaled, 3), EnvelopeKind::thm8},
    {SequenceSpec::make(SequenceKind::ap_scaled, 5), EnvelopeKind::thm8},
    {SequenceSpec::make(SequenceKind::gamma), EnvelopeKind::thm9_sqrt},
    {SequenceSpec::make(SequenceKind::tau), EnvelopeKind::thm9_sqrt},
  };
  for (const auto& c : cases) {
    const auto values = evaluate_sequence(c.spec, *t);
    for (double eps : {0.25, 0.5, 1.0})
      for (const auto& r : envelope_check(exceptional_set(values, eps), c.spec, eps, c.kind, cp)) {
        INFO(c.spec.name(), " eps=", eps, " x=", r.x);
        REQUIRE(r.holds);
      }
  }
}

TEST_CASE("h(n)/log n exceptional sets are p0-smooth up to 1e7")
{
  const auto t = table_1e7();
  const auto values = evaluate_sequence(SequenceSpec::make(SequenceKind::h_over_log), *t);
  CHECK(largest_admissible_prime(0.5) == 7);
  CHECK(largest_admissible_prime(0.25) == 53);
  CHECK(largest_admissible_prime(1.0) == 2);
  CHECK(largest_admissible_prime(0.3) == 23);
  CHECK(largest_admissible_prime(0.9) == 3);
  CHECK(largest_admissible_prime(1.5) == 1);
  for (double eps : {0.3, 0.5, 0.9}) {
    const auto p0 = largest_admissible_prime(eps);
    const auto a = exceptional_set(values, eps);
    for (auto n : head(a, 10'000'000))
      REQUIRE(oracle::is_smooth(n, p0));
  }
}

TEST_CASE("gamma and tau exceptional sets coincide")
{
  const auto t = table_1e7();
  const auto g = exceptional_set(evaluate_sequence(SequenceSpec::make(SequenceKind::gamma), *t), 1.0);
  const auto ta = exceptional_set(evaluate_sequence(SequenceSpec::make(SequenceKind::tau), *t), 1.0);
  const auto pp = oracle::perfect_powers(10'000'000);
  CHECK(head(g, pp.size() + 1) == pp);
  CHECK(head(ta, pp.size() + 1) == pp);
}

TEST_CASE("statement suite: I and IV at eps = 0.5")
{
  const auto t = table_1e7();
  const auto rep = statement_suite(t, Checkpoints::standard(1e7), {"I", "IV"}, {0.5});
  REQUIRE(rep.records.size() == 2);
  const auto& one = rep.records[0];
  CHECK(one.statement == "I");
  CHECK(one.measured == 7.0);
  CHECK(one.witnesses.empty());
  const auto smooth = oracle::smooth_upto({2, 3, 5, 7}, 10'000'000);
  const std::set<std::uint64_t> smooth_set_(smooth.begin(), smooth.end());
  for (auto n : head(exceptional_set(SequenceSpec::make(SequenceKind::h_over_log), 0.5, t), 100'000))
    REQUIRE(smooth_set_.count(n));
  const auto& four = rep.records[1];
  CHECK(four.statement == "IV");
  REQUIRE(four.verdicts.size() == 1);
  CHECK(four.verdicts[0].verdict == Verdict::consistent);
  CHECK(four.status == Status::pass);
  CHECK_THROWS_AS(statement_suite(t, Checkpoints::standard(1e8), {"I"}), InvalidArgument);
  CHECK_THROWS_AS(statement_suite(t, Checkpoints::standard(1e7), {"IX"}), InvalidArgument);
}

TEST_CASE("statement VII: lambda of A_eps for omega at eps = 0.5")
{
  const auto rep = statement_suite(table_1e7(), Checkpoints::standard(1e7), {"VII"}, {0.5});
  REQUIRE(rep.records.size() == 2);
  REQUIRE(rep.records[0].lambda_estimate.has_value());
  CHECK(rep.records[0].lambda_estimate->value >= 0.8);
}

TEST_CASE("statement VII: omega lambda trend is increasing" * doctest::may_fail())
{
  // A_eps loses the omega = 4 class near n = 1.8e6, which bends the ratio
  // sequence down in the last dyadic samples below 1e7.
  const auto rep = statement_suite(table_1e7(), Checkpoints::standard(1e7), {"VII"}, {0.5});
  CHECK(rep.records[0].lambda_estimate->trend == Trend::increasing);
}

TEST_CASE("remark_limsup")
{
  const auto t = table_1e7();
  const auto rows = remark_limsup(SequenceSpec::make(SequenceKind::omega_over_loglog), 0.5, t);
  CHECK(rows.front().k == 1);
  CHECK(rows.front().ratio == 0.0);
  bool seen = false;
  for (const auto& r : rows)
    if (r.k == 131072) {
      seen = true;
      CHECK(r.ratio >= 0.8);
    }
  CHECK(seen);

  const auto f = remark_limsup(SequenceSpec::make(SequenceKind::loglog_f_over_loglog), 0.5, t);
  const auto last = f.back().k;
  for (std::size_t i = 1; i < f.size(); ++i)
    if (f[i - 1].k * 10 >= last)
      CHECK(f[i].ratio >= f[i - 1].ratio);

  CHECK_THROWS_AS(remark_limsup(SequenceSpec::make(SequenceKind::gamma), 0.5, t), InvalidArgument);
}
