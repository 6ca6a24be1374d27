#include "idealconv/convergence.hh"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "idealconv/arith.hh"
#include "idealconv/errors.hh"

namespace idealconv {

  namespace {

    constexpr double kInf = std::numeric_limits<double>::infinity();
    constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

    bool loglog_family(SequenceKind k)
    {
      return k == SequenceKind::omega_over_loglog || k == SequenceKind::bigomega_over_loglog ||
             k == SequenceKind::loglog_f_over_loglog || k == SequenceKind::loglog_fstar_over_loglog;
    }

    struct KindName {
      SequenceKind kind;
      const char* name;
    };

    constexpr KindName kNames[] = {
      {SequenceKind::h_over_log, "h_over_log"},
      {SequenceKind::H_over_log, "H_over_log"},
      {SequenceKind::ap_scaled, "ap_scaled"},
      {SequenceKind::gamma, "gamma"},
      {SequenceKind::tau, "tau"},
      {SequenceKind::pascal_N, "pascal_N"},
      {SequenceKind::omega_over_loglog, "omega_over_loglog"},
      {SequenceKind::bigomega_over_loglog, "bigomega_over_loglog"},
      {SequenceKind::loglog_f_over_loglog, "loglog_f_over_loglog"},
      {SequenceKind::loglog_fstar_over_loglog, "loglog_fstar_over_loglog"},
    };

    void check_spec(const SequenceSpec& spec)
    {
      if (spec.kind == SequenceKind::ap_scaled && !is_prime_trial(spec.p))
        throw InvalidArgument("ap_scaled needs a prime p, got " + std::to_string(spec.p));
    }

    std::optional<EnvelopeKind> envelope_for(const SequenceSpec& spec)
    {
      switch (spec.kind) {
      case SequenceKind::H_over_log: return EnvelopeKind::thm7;
      case SequenceKind::ap_scaled: return EnvelopeKind::thm8;
      case SequenceKind::gamma:
      case SequenceKind::tau: return EnvelopeKind::thm9_sqrt;
      default: return std::nullopt;
      }
    }

    std::vector<EnvelopeRow> count_rows(const IntegerSet& a, const Checkpoints& cp)
    {
      std::vector<EnvelopeRow> rows;
      for (double x : cp.values()) {
        EnvelopeRow r;
        r.x = x;
        r.count = a.count(static_cast<long double>(x));
        rows.push_back(r);
      }
      return rows;
    }

    std::uint64_t term_u64(const IntegerSet& a, std::size_t k) { return static_cast<std::uint64_t>(*a.term(k)); }

  } // namespace

  SequenceSpec SequenceSpec::make(SequenceKind kind, std::uint64_t p)
  {
    SequenceSpec s;
    s.kind = kind;
    s.p = kind == SequenceKind::ap_scaled ? p : 0;
    switch (kind) {
    case SequenceKind::h_over_log:
    case SequenceKind::H_over_log:
    case SequenceKind::ap_scaled: s.limit_L = 0.0; break;
    case SequenceKind::gamma:
    case SequenceKind::tau:
    case SequenceKind::omega_over_loglog:
    case SequenceKind::bigomega_over_loglog: s.limit_L = 1.0; break;
    case SequenceKind::pascal_N: s.limit_L = 2.0; break;
    case SequenceKind::loglog_f_over_loglog:
    case SequenceKind::loglog_fstar_over_loglog: s.limit_L = 1.0 + std::log(2.0); break;
    }
    // log log n <= 0 for n = 2
    s.start_n = loglog_family(kind) ? 3 : 2;
    check_spec(s);
    return s;
  }

  std::optional<SequenceSpec> SequenceSpec::parse(const std::string& name)
  {
    std::string base = name;
    std::uint64_t p = 0;
    if (auto colon = name.find(':'); colon != std::string::npos) {
      base = name.substr(0, colon);
      try {
        std::size_t used = 0;
        p = std::stoull(name.substr(colon + 1), &used);
        if (used != name.size() - colon - 1)
          return std::nullopt;
      } catch (const std::exception&) {
        return std::nullopt;
      }
    }
    for (const auto& kn : kNames)
      if (base == kn.name) {
        if ((kn.kind == SequenceKind::ap_scaled) != (p != 0))
          return std::nullopt;
        return make(kn.kind, p);
      }
    return std::nullopt;
  }

  std::string SequenceSpec::name() const
  {
    for (const auto& kn : kNames)
      if (kn.kind == kind)
        return kind == SequenceKind::ap_scaled ? std::string(kn.name) + ":" + std::to_string(p) : kn.name;
    return "?";
  }

  double sequence_value(const SequenceSpec& spec, const Factorization& f)
  {
    const double n = static_cast<double>(f.n());
    switch (spec.kind) {
    case SequenceKind::h_over_log: return h_min(f) / std::log(n);
    case SequenceKind::H_over_log: return h_max(f) / std::log(n);
    case SequenceKind::ap_scaled: return std::log(static_cast<double>(spec.p)) * a_p(f, spec.p) / std::log(n);
    case SequenceKind::gamma:
    case SequenceKind::tau: {
      unsigned g = 0, t = 0;
      gamma_tau_counts(f, g, t);
      return spec.kind == SequenceKind::gamma ? g : t;
    }
    case SequenceKind::pascal_N: return pascal_count(f.n());
    case SequenceKind::omega_over_loglog: return omega(f) / std::log(std::log(n));
    case SequenceKind::bigomega_over_loglog: return big_omega(f) / std::log(std::log(n));
    case SequenceKind::loglog_f_over_loglog: return std::log(log_f(f)) / std::log(std::log(n));
    case SequenceKind::loglog_fstar_over_loglog: {
      const double lf = log_f_star(f);
      return lf > 0.0 ? std::log(lf) / std::log(std::log(n)) : -kInf;
    }
    }
    return kNaN;
  }

  bool is_exceptional(double x, double L, double eps)
  {
    if (std::isinf(x))
      return true;
    // ratios such as a_p(p^k) log p / log p^k land on the threshold up to rounding
    return std::fabs(x - L) >= eps * (1.0 - 1e-12);
  }

  std::shared_ptr<const SequenceValues> evaluate_sequence(const SequenceSpec& spec, const FactorTable& table,
                                                          unsigned threads)
  {
    check_spec(spec);
    auto out = std::make_shared<SequenceValues>();
    out->spec = spec;
    out->limit = table.limit();
    out->x.assign(table.limit() + 1, kNaN);
    std::unique_ptr<PascalIndex> pascal;
    if (spec.kind == SequenceKind::pascal_N)
      pascal = std::make_unique<PascalIndex>(table.limit());

    auto work = [&](std::uint64_t lo, std::uint64_t hi) {
      for (std::uint64_t n = lo; n < hi; ++n)
        out->x[n] = pascal ? pascal->count(n) : sequence_value(spec, table.factorize(n));
    };
    if (threads == 0)
      threads = std::max(1u, std::thread::hardware_concurrency());
    const std::uint64_t first = spec.start_n, end = table.limit() + 1;
    if (first >= end)
      return out;
    const std::uint64_t span = end - first;
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(1, span / 65536)));
    if (threads <= 1) {
      work(first, end);
      return out;
    }
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back(work, first + span * t / threads, first + span * (t + 1) / threads);
    for (auto& th : pool)
      th.join();
    return out;
  }

  IntegerSet exceptional_set(const SequenceSpec& spec, double eps, std::shared_ptr<const FactorTable> table)
  {
    if (!(eps > 0.0))
      throw InvalidArgument("epsilon must be positive");
    check_spec(spec);
    auto n = std::make_shared<std::uint64_t>(spec.start_n);
    auto gen = [spec, eps, table, n]() -> std::optional<Natural> {
      for (; *n <= table->limit(); ++*n) {
        const double x = spec.kind == SequenceKind::pascal_N ? pascal_count(*n)
                                                             : sequence_value(spec, table->factorize(*n));
        if (is_exceptional(x, spec.limit_L, eps))
          return Natural((*n)++);
      }
      return std::nullopt;
    };
    return IntegerSet("A_eps(" + spec.name() + ")", gen, "|x_n - L| >= eps, n <= " + std::to_string(table->limit()));
  }

  IntegerSet exceptional_set(std::shared_ptr<const SequenceValues> values, double eps)
  {
    if (!(eps > 0.0))
      throw InvalidArgument("epsilon must be positive");
    auto n = std::make_shared<std::uint64_t>(values->spec.start_n);
    auto gen = [values, eps, n]() -> std::optional<Natural> {
      for (; *n <= values->limit; ++*n)
        if (is_exceptional(values->x[*n], values->spec.limit_L, eps))
          return Natural((*n)++);
      return std::nullopt;
    };
    return IntegerSet("A_eps(" + values->spec.name() + ")", gen,
                      "|x_n - L| >= eps, n <= " + std::to_string(values->limit));
  }

  double envelope_value(EnvelopeKind kind, double eps, double x, std::uint64_t p)
  {
    switch (kind) {
    case EnvelopeKind::thm7: return 2.0 * std::sqrt(2.0) * std::pow(x, 1.0 - eps * std::log(2.0) / 2.0);
    case EnvelopeKind::thm8: return std::log(x) / std::log(static_cast<double>(p)) * std::pow(x, 1.0 - eps);
    case EnvelopeKind::thm9_sqrt: return std::log(x) / std::log(2.0) * std::sqrt(x);
    }
    return kNaN;
  }

  std::vector<EnvelopeRow> envelope_check(const IntegerSet& a_eps, const SequenceSpec& spec, double eps,
                                          EnvelopeKind kind, const Checkpoints& cp)
  {
    if (envelope_for(spec) != kind)
      throw InvalidArgument("envelope does not apply to sequence " + spec.name());
    const double x_min = kind == EnvelopeKind::thm9_sqrt ? 4.0 : 2.0;
    std::vector<EnvelopeRow> rows;
    for (double x : cp.values()) {
      if (x < x_min)
        continue;
      EnvelopeRow r;
      r.x = x;
      r.count = a_eps.count(static_cast<long double>(x));
      r.envelope = envelope_value(kind, eps, x, spec.p);
      r.ratio = static_cast<double>(r.count) / r.envelope;
      r.holds = static_cast<double>(r.count) <= r.envelope;
      rows.push_back(r);
    }
    return rows;
  }

  ExceptionalReport exceptional_report(const SequenceSpec& spec, double eps,
                                       std::shared_ptr<const FactorTable> table, const Checkpoints& cp)
  {
    if (!cp.empty() && cp.back() > static_cast<double>(table->limit()))
      throw InvalidArgument("checkpoints exceed the sieve limit");
    ExceptionalReport rep;
    rep.spec = spec;
    rep.epsilon = eps;
    const IntegerSet a = exceptional_set(evaluate_sequence(spec, *table), eps);
    if (auto kind = envelope_for(spec))
      rep.rows = envelope_check(a, spec, eps, *kind, cp);
    else
      rep.rows = count_rows(a, cp);
    const std::size_t total = a.count(Natural(table->limit()));
    if (total >= 100)
      rep.lambda_estimate = estimate_lambda(a, total);
    if (cp.empty())
      return rep;
    switch (spec.kind) {
    case SequenceKind::h_over_log: rep.verdicts.push_back(classify_leq(a, 0.0, default_deltas_leq(0.0), cp)); break;
    case SequenceKind::H_over_log:
    case SequenceKind::ap_scaled: rep.verdicts.push_back(classify_less(a, 1.0, default_deltas_less(1.0), cp)); break;
    case SequenceKind::gamma:
    case SequenceKind::tau:
    case SequenceKind::pascal_N: rep.verdicts.push_back(classify_leq(a, 0.5, default_deltas_leq(0.5), cp)); break;
    default: break;  // only lambda = 1 is predicted
    }
    return rep;
  }

  const char* to_string(Status s)
  {
    switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::indeterminate: return "indeterminate";
    }
    return "?";
  }

  Status SuiteReport::overall() const
  {
    Status s = Status::pass;
    for (const auto& r : records) {
      if (r.status == Status::fail)
        return Status::fail;
      if (r.status == Status::indeterminate)
        s = Status::indeterminate;
    }
    return s;
  }

  std::vector<double> default_epsilons() { return {0.25, 0.5, 1.0}; }

  std::uint64_t largest_admissible_prime(double eps)
  {
    if (!(eps > 0.0))
      throw InvalidArgument("epsilon must be positive");
    std::uint64_t best = 1;
    // 1/log p >= eps  <=>  p <= e^(1/eps)
    const double bound = std::exp(1.0 / eps);
    if (bound > 1e12)
      throw InvalidArgument("epsilon too small for an explicit p0");
    for (std::uint64_t p = 2; static_cast<double>(p) <= bound; ++p)
      if (is_prime_trial(p) && 1.0 / std::log(static_cast<double>(p)) >= eps)
        best = p;
    return best;
  }

  namespace {

    const char* const kStatements[] = {"I", "II", "III", "IV", "V", "VI", "VII", "VIII"};

    Status from_verdict(Verdict v)
    {
      switch (v) {
      case Verdict::consistent: return Status::pass;
      case Verdict::inconsistent: return Status::fail;
      default: return Status::indeterminate;
      }
    }

    // Worse of two statuses.
    Status combine(Status a, Status b)
    {
      if (a == Status::fail || b == Status::fail)
        return Status::fail;
      if (a == Status::indeterminate || b == Status::indeterminate)
        return Status::indeterminate;
      return Status::pass;
    }

    std::vector<SequenceSpec> specs_for(const std::string& st)
    {
      using K = SequenceKind;
      if (st == "I") return {SequenceSpec::make(K::h_over_log)};
      if (st == "II") return {SequenceSpec::make(K::H_over_log)};
      if (st == "III") return {SequenceSpec::make(K::ap_scaled, 2), SequenceSpec::make(K::ap_scaled, 3)};
      if (st == "IV") return {SequenceSpec::make(K::gamma)};
      if (st == "V") return {SequenceSpec::make(K::tau)};
      if (st == "VI") return {SequenceSpec::make(K::pascal_N)};
      if (st == "VII") return {SequenceSpec::make(K::omega_over_loglog), SequenceSpec::make(K::bigomega_over_loglog)};
      if (st == "VIII")
        return {SequenceSpec::make(K::loglog_f_over_loglog), SequenceSpec::make(K::loglog_fstar_over_loglog)};
      throw InvalidArgument("unknown statement '" + st + "'");
    }

    void envelope_witnesses(StatementRecord& rec, const IntegerSet& a, const SequenceValues& values)
    {
      for (const auto& r : rec.rows) {
        if (r.holds)
          continue;
        const std::uint64_t n = term_u64(a, r.count);
        rec.witnesses.push_back({n, values.x[n], "A_eps(" + std::to_string(static_cast<std::uint64_t>(r.x)) +
                                                   ") exceeds the envelope"});
      }
    }

    StatementRecord run_one(const std::string& st, const SequenceValues& values,
                            std::shared_ptr<const SequenceValues> shared, double eps, const FactorTable& table,
                            const Checkpoints& cp)
    {
      StatementRecord rec;
      rec.statement = st;
      rec.spec = values.spec;
      rec.epsilon = eps;
      const IntegerSet a = exceptional_set(std::move(shared), eps);
      const std::size_t total = a.count(Natural(values.limit));
      const auto kind = values.spec.kind;

      if (kind == SequenceKind::h_over_log) {
        const std::uint64_t p0 = largest_admissible_prime(eps);
        rec.measured = static_cast<double>(p0);
        rec.notes.push_back("containment in D(2..p0), p0 = " + std::to_string(p0));
        for (std::size_t k = 1; k <= total; ++k) {
          const std::uint64_t n = term_u64(a, k);
          const auto f = table.factorize(n);
          if (!f.empty() && f.factors().back().prime > p0 && rec.witnesses.size() < 20)
            rec.witnesses.push_back({n, values.x[n], "prime factor above p0"});
        }
        rec.rows = count_rows(a, cp);
        rec.verdicts.push_back(classify_leq(a, 0.0, default_deltas_leq(0.0), cp));
        rec.status = combine(rec.witnesses.empty() ? Status::pass : Status::fail,
                             from_verdict(rec.verdicts.back().verdict));
        return rec;
      }

      if (auto env = envelope_for(values.spec)) {
        rec.rows = envelope_check(a, values.spec, eps, *env, cp);
        envelope_witnesses(rec, a, values);
        const bool less = *env != EnvelopeKind::thm9_sqrt;
        rec.verdicts.push_back(less ? classify_less(a, 1.0, default_deltas_less(1.0), cp)
                                    : classify_leq(a, 0.5, default_deltas_leq(0.5), cp));
        rec.status = combine(rec.witnesses.empty() ? Status::pass : Status::fail,
                             from_verdict(rec.verdicts.back().verdict));
        return rec;
      }

      if (kind == SequenceKind::pascal_N) {
        rec.rows = count_rows(a, cp);
        double worst = 0.0;
        for (auto& r : rec.rows) {
          r.envelope = std::sqrt(r.x);
          r.ratio = static_cast<double>(r.count) / r.envelope;
          worst = std::max(worst, r.ratio);
        }
        rec.measured = worst;
        rec.notes.push_back("measured max A_eps(x)/sqrt(x) over checkpoints");
        rec.verdicts.push_back(classify_leq(a, 0.5, default_deltas_leq(0.5), cp));
        rec.status = from_verdict(rec.verdicts.back().verdict);
        return rec;
      }

      // VII, VIII: only lambda(A_eps) = 1 is predicted
      rec.rows = count_rows(a, cp);
      if (total == 0) {
        rec.status = Status::fail;
        rec.notes.push_back("A_eps is empty up to the limit");
        return rec;
      }
      if (total < 100) {
        rec.status = Status::indeterminate;
        rec.notes.push_back("fewer than 100 elements; no lambda estimate");
        return rec;
      }
      rec.lambda_estimate = estimate_lambda(a, total);
      const auto& e = *rec.lambda_estimate;
      if (e.value >= 0.8 && e.trend != Trend::decreasing)
        rec.status = Status::pass;
      else if (e.value < 0.8 && e.trend == Trend::decreasing)
        rec.status = Status::fail;
      else
        rec.status = Status::indeterminate;
      return rec;
    }

  } // namespace

  SuiteReport statement_suite(std::shared_ptr<const FactorTable> table, const Checkpoints& cp,
                              const std::vector<std::string>& statements, const std::vector<double>& epsilons)
  {
    if (cp.empty())
      throw InvalidArgument("statement_suite: empty checkpoint grid");
    if (cp.back() > static_cast<double>(table->limit()))
      throw InvalidArgument("statement_suite: checkpoints exceed the sieve limit");
    if (epsilons.empty())
      throw InvalidArgument("statement_suite: empty epsilon grid");
    std::vector<std::string> which = statements;
    if (which.empty())
      which.assign(std::begin(kStatements), std::end(kStatements));
    for (const auto& st : which)
      specs_for(st);  // validate names before any work

    SuiteReport rep;
    rep.limit = table->limit();
    rep.epsilons = epsilons;
    rep.checkpoints = cp.values();
    for (const auto& st : which)
      for (const auto& spec : specs_for(st)) {
        auto values = evaluate_sequence(spec, *table);
        for (double eps : epsilons)
          rep.records.push_back(run_one(st, *values, values, eps, *table, cp));
      }
    return rep;
  }

  std::vector<RemarkRow> remark_limsup(const SequenceSpec& spec, double eps, std::shared_ptr<const FactorTable> table)
  {
    if (!loglog_family(spec.kind))
      throw InvalidArgument("remark_limsup applies to the omega / Omega / log log f families only");
    const IntegerSet a = exceptional_set(evaluate_sequence(spec, *table), eps);
    const std::size_t total = a.count(Natural(table->limit()));
    std::vector<RemarkRow> rows;
    auto row = [&](std::size_t k) {
      const std::uint64_t nk = term_u64(a, k);
      rows.push_back({k, nk, std::log(static_cast<double>(k)) / std::log(static_cast<double>(nk))});
    };
    for (std::size_t k = 1; k < total; k *= 2)
      row(k);
    if (total > 0)
      row(total);
    return rows;
  }

} // namespace idealconv
