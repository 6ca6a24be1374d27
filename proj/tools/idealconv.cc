// idealconv: arithmetic functions, set constructions, exponent estimates,
// ideal classification and the statement checks from the command line.
//
// Exit codes: 0 consistent / pass, 1 inconsistent / fail, 2 usage, config
// or data error, 3 indeterminate.
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "idealconv/arith.hh"
#include "idealconv/convergence.hh"
#include "idealconv/errors.hh"
#include "idealconv/exponent.hh"
#include "idealconv/factor_table.hh"
#include "idealconv/integer_set.hh"
#include "idealconv/pascal.hh"
#include "idealconv/serialize.hh"

using namespace idealconv;
using nlohmann::json;

namespace {

  enum Exit { kOk = 0, kFail = 1, kUsage = 2, kIndeterminate = 3 };

  struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
  };

  struct Config {
    std::uint64_t limit = 10'000'000;
    std::string output = "csv";
    std::string out_path;
    std::string checkpoints;
  };

  struct SetOptions {
    std::optional<double> power, logpower;
    std::string smooth;
    bool naturals = false, primes = false;
    std::string file;

    void add_to(CLI::App* app)
    {
      app->add_option("--power", power, "a_n = floor(n^(1/s)), 0 < s <= 1");
      app->add_option("--logpower", logpower, "a_n = floor(n^(1/q) log^(2/q)(n+1)) + 1, 0 < q < 1");
      app->add_option("--smooth", smooth, "comma-separated primes, e.g. 2,3,5");
      app->add_flag("--naturals", naturals, "the set 1, 2, 3, ...");
      app->add_flag("--primes", primes, "primes up to --limit");
      app->add_option("--file", file, "one positive integer per line, strictly increasing");
    }
  };

  std::vector<std::string> split(const std::string& s, char sep)
  {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep))
      out.push_back(cur);
    return out;
  }

  double parse_real(const std::string& s)
  {
    double v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
      throw UsageError("not a number: '" + s + "'");
    return v;
  }

  std::uint64_t parse_uint(const std::string& s)
  {
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
      throw UsageError("not a nonnegative integer: '" + s + "'");
    return v;
  }

  std::vector<double> parse_reals(const std::string& s)
  {
    std::vector<double> out;
    for (const auto& part : split(s, ','))
      out.push_back(parse_real(part));
    return out;
  }

  std::string fixed(double v, int digits = 12)
  {
    if (!std::isfinite(v))
      return format_real(v);
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, digits);
    return std::string(buf, res.ptr);
  }

  // "geo:START:FACTOR:CAP" or "x1,x2,...". Empty: 10^3 * 2^j up to cap.
  Checkpoints parse_checkpoints(const std::string& s, double cap)
  {
    if (s.empty())
      return Checkpoints::standard(cap);
    if (s.rfind("geo:", 0) == 0) {
      auto parts = split(s.substr(4), ':');
      if (parts.size() != 3)
        throw UsageError("--checkpoints geo:START:FACTOR:CAP expected");
      return Checkpoints::geometric(parse_real(parts[0]), parse_real(parts[1]), parse_real(parts[2]));
    }
    return Checkpoints(parse_reals(s));
  }

  std::shared_ptr<const FactorTable> make_table(std::uint64_t limit)
  {
    return std::make_shared<const FactorTable>(build_factor_table(std::max<std::uint64_t>(limit, 2)));
  }

  IntegerSet make_set(const SetOptions& o, const Config& cfg)
  {
    const int chosen = o.power.has_value() + o.logpower.has_value() + !o.smooth.empty() + o.naturals + o.primes +
                       !o.file.empty();
    if (chosen != 1)
      throw UsageError("give exactly one of --power, --logpower, --smooth, --naturals, --primes, --file");
    if (o.power)
      return power_set(*o.power);
    if (o.logpower)
      return logpower_set(*o.logpower);
    if (!o.smooth.empty()) {
      std::vector<std::uint64_t> ps;
      for (const auto& part : split(o.smooth, ','))
        ps.push_back(parse_uint(part));
      return smooth_set(ps);
    }
    if (o.naturals)
      return naturals();
    if (o.primes)
      return prime_set(make_table(cfg.limit));
    std::ifstream in(o.file);
    if (!in)
      throw UsageError("cannot open " + o.file);
    return read_set(in, o.file);
  }

  class Output {
  public:
    explicit Output(const Config& cfg)
    {
      if (cfg.output != "csv" && cfg.output != "json" && cfg.output != "table")
        throw UsageError("--output must be csv, json or table");
      if (!cfg.out_path.empty()) {
        file_.open(cfg.out_path);
        if (!file_)
          throw UsageError("cannot write " + cfg.out_path);
      }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
  };

  int exit_for(Verdict v)
  {
    switch (v) {
    case Verdict::consistent: return kOk;
    case Verdict::inconsistent: return kFail;
    default: return kIndeterminate;
    }
  }

  int exit_for(Status s)
  {
    switch (s) {
    case Status::pass: return kOk;
    case Status::fail: return kFail;
    default: return kIndeterminate;
    }
  }

  // ------------------------------------------------------------------ fn

  int cmd_fn(const Config& cfg, const std::string& name, const std::string& arg, std::uint64_t p)
  {
    static const std::vector<std::string> names = {"omega", "Omega", "h",     "H",   "ap", "d",
                                                   "logf",  "logfstar", "gamma", "tau", "N"};
    if (std::find(names.begin(), names.end(), name) == names.end())
      throw UsageError("unknown function '" + name + "'");
    std::uint64_t lo = 0, hi = 0;
    if (auto dots = arg.find(".."); dots != std::string::npos) {
      lo = parse_uint(arg.substr(0, dots));
      hi = parse_uint(arg.substr(dots + 2));
    } else {
      lo = hi = parse_uint(arg);
    }
    if (lo < 1 || hi < lo)
      throw UsageError("range must be N or A..B with 1 <= A <= B");
    if (hi > cfg.limit)
      throw UsageError("n = " + std::to_string(hi) + " exceeds --limit " + std::to_string(cfg.limit));
    if ((name == "gamma" || name == "tau" || name == "N") && lo < 2)
      throw UsageError(name + " is undefined at n = 1");
    if (name == "ap" && !is_prime_trial(p))
      throw UsageError("ap needs --p with a prime value");
    const bool real_valued = name == "logf" || name == "logfstar";

    std::shared_ptr<const FactorTable> table;
    if (name != "N")
      table = make_table(hi);
    Output out(cfg);
    auto& os = out.stream();
    json rows = json::array();
    if (cfg.output == "csv")
      os << "n," << name << '\n';
    for (std::uint64_t n = lo; n <= hi; ++n) {
      std::string text;
      double real = 0;
      std::uint64_t integer = 0;
      if (name == "N") {
        integer = pascal_count(n);
      } else {
        const auto f = table->factorize(n);
        if (name == "omega") integer = omega(f);
        else if (name == "Omega") integer = big_omega(f);
        else if (name == "h") integer = h_min(f);
        else if (name == "H") integer = h_max(f);
        else if (name == "ap") integer = a_p(f, p);
        else if (name == "d") integer = divisor_count(f);
        else if (name == "logf") real = log_f(f);
        else if (name == "logfstar") real = log_f_star(f);
        else {
          unsigned g = 0, t = 0;
          gamma_tau_counts(f, g, t);
          integer = name == "gamma" ? g : t;
        }
      }
      text = real_valued ? fixed(real) : std::to_string(integer);
      if (cfg.output == "json") {
        rows.push_back({{"n", n}, {"value", real_valued ? json(real) : json(integer)}});
      } else if (cfg.output == "csv") {
        os << n << ',' << text << '\n';
      } else {
        os << std::setw(12) << n << "  " << text << '\n';
      }
    }
    if (cfg.output == "json")
      os << json{{"format_version", kFormatVersion}, {"function", name}, {"rows", rows}}.dump(2) << '\n';
    return kOk;
  }

  // ------------------------------------------------------------- construct

  int cmd_construct(const Config& cfg, const SetOptions& so, std::size_t terms)
  {
    const auto set = make_set(so, cfg);
    Output out(cfg);
    auto& os = out.stream();
    const auto values = set.prefix(terms);
    if (cfg.output == "json") {
      json a = json::array();
      for (const auto& v : values)
        a.push_back(to_string(v));
      os << json{{"format_version", kFormatVersion}, {"set", set.label()}, {"terms", a}}.dump(2) << '\n';
    } else if (cfg.output == "csv") {
      os << "n,a_n\n";
      for (std::size_t i = 0; i < values.size(); ++i)
        os << i + 1 << ',' << to_string(values[i]) << '\n';
    } else {
      os << "# " << set.label() << '\n';
      write_prefix(os, set, values.size());
    }
    return kOk;
  }

  // ---------------------------------------------------------------- lambda

  int cmd_lambda(const Config& cfg, const SetOptions& so, std::optional<std::size_t> terms, double tail)
  {
    const auto set = make_set(so, cfg);
    std::size_t n = 0;
    if (terms)
      n = *terms;
    else if (!so.file.empty()) {
      set.ensure_terms(std::numeric_limits<std::size_t>::max());
      n = set.memoized();
    } else {
      n = 100'000;
    }
    const auto e = estimate_lambda(set, n, tail);
    Output out(cfg);
    auto& os = out.stream();
    if (cfg.output == "json") {
      os << json{{"format_version", kFormatVersion}, {"set", set.label()}, {"estimate", to_json(e)}}.dump(2) << '\n';
    } else if (cfg.output == "csv") {
      write_csv(os, set.label(), e);
    } else {
      os << "set            " << set.label() << '\n'
         << "estimate       " << fixed(e.value, 6) << "  (max over n in [" << e.window_begin << ", " << e.terms
         << "], attained at n = " << e.argmax << ")\n"
         << "trend          " << to_string(e.trend) << "\n\n"
         << std::setw(12) << "n" << "  log n / log a_n\n";
      for (const auto& [k, r] : e.window_ratios)
        os << std::setw(12) << k << "  " << fixed(r, 6) << '\n';
    }
    return kOk;
  }

  // -------------------------------------------------------------- classify

  void print_verdict_table(std::ostream& os, const std::string& label, const IdealVerdict& v)
  {
    os << label << "  " << to_string(v.ideal) << "(q=" << format_real(v.q) << "): " << to_string(v.verdict);
    if (v.delta_used)
      os << "  delta=" << format_real(*v.delta_used);
    if (v.chain_violation)
      os << "  [chain violation]";
    os << '\n';
    for (const auto& s : v.series) {
      os << "  delta=" << std::setw(5) << format_real(s.delta) << "  x^" << std::left << std::setw(5)
         << format_real(s.exponent) << std::right << "  " << to_string(s.behavior);
      if (s.crossing)
        os << "  projected crossing at log x = " << fixed(*s.crossing, 2);
      os << '\n';
    }
    for (const auto& n : v.notes)
      os << "  note: " << n << '\n';
  }

  int cmd_classify(const Config& cfg, const SetOptions& so, const std::string& ideal, const std::string& q_text,
                   const std::string& delta_text)
  {
    const auto set = make_set(so, cfg);
    const auto cp = parse_checkpoints(cfg.checkpoints, static_cast<double>(cfg.limit));
    if (cp.empty())
      throw UsageError("empty checkpoint grid");
    const auto qs = q_text.empty() ? std::vector<double>{} : parse_reals(q_text);
    std::optional<std::vector<double>> deltas;
    if (!delta_text.empty())
      deltas = parse_reals(delta_text);

    Output out(cfg);
    auto& os = out.stream();

    if (ideal == "Ic") {
      if (qs.size() != 1)
        throw UsageError("--ideal Ic needs a single --q");
      const auto sums = partial_sum_probe(set, qs[0], cp);
      if (cfg.output == "json") {
        os << json{{"format_version", kFormatVersion}, {"set", set.label()}, {"q", qs[0]}, {"partial_sums", to_json(sums)},
                   {"note", "convergence of the series is not decided from a prefix"}}
                .dump(2)
           << '\n';
      } else {
        os << (cfg.output == "csv" ? "x,count,partial_sum\n" : "");
        for (const auto& s : sums)
          os << format_real(s.x) << (cfg.output == "csv" ? "," : "  ") << s.count
             << (cfg.output == "csv" ? "," : "  ") << format_real(s.sum) << '\n';
      }
      return kIndeterminate;
    }

    std::vector<IdealVerdict> verdicts;
    int code = kOk;
    if (ideal == "chain") {
      if (qs.empty())
        throw UsageError("--ideal chain needs --q with a list of values");
      auto rep = chain_report(set, qs, cp);
      verdicts = std::move(rep.verdicts);
      code = rep.monotone ? kOk : kIndeterminate;
    } else {
      double q = 0.0;
      if (ideal != "I0") {
        if (qs.size() != 1)
          throw UsageError("--ideal " + ideal + " needs a single --q");
        q = qs[0];
      }
      if (ideal == "leq" || ideal == "I0")
        verdicts.push_back(classify_leq(set, q, deltas.value_or(default_deltas_leq(q)), cp));
      else if (ideal == "less")
        verdicts.push_back(classify_less(set, q, deltas.value_or(default_deltas_less(q)), cp));
      else
        throw UsageError("--ideal must be leq, less, I0, Ic or chain");
      code = exit_for(verdicts.back().verdict);
    }

    if (cfg.output == "json") {
      json a = json::array();
      for (const auto& v : verdicts)
        a.push_back(to_json(v));
      os << json{{"format_version", kFormatVersion}, {"set", set.label()}, {"verdicts", a}}.dump(2) << '\n';
    } else if (cfg.output == "csv") {
      write_csv(os, set.label(), verdicts);
    } else {
      for (const auto& v : verdicts)
        print_verdict_table(os, set.label(), v);
    }
    return code;
  }

  // ------------------------------------------------------------------ aeps

  int cmd_aeps(const Config& cfg, const std::string& seq, double eps)
  {
    const auto spec = SequenceSpec::parse(seq);
    if (!spec)
      throw UsageError("unknown sequence '" + seq + "'");
    const auto cp = parse_checkpoints(cfg.checkpoints, static_cast<double>(cfg.limit));
    if (!cp.empty() && cp.back() > static_cast<double>(cfg.limit))
      throw UsageError("checkpoints exceed --limit");
    const auto rep = exceptional_report(*spec, eps, make_table(cfg.limit), cp);

    Status st = Status::pass;
    for (const auto& r : rep.rows)
      if (!r.holds)
        st = Status::fail;
    for (const auto& v : rep.verdicts)
      if (st != Status::fail)
        st = v.verdict == Verdict::inconsistent    ? Status::fail
             : v.verdict == Verdict::indeterminate ? Status::indeterminate
                                                   : st;

    Output out(cfg);
    auto& os = out.stream();
    if (cfg.output == "json") {
      json j = to_json(rep);
      j["status"] = to_string(st);
      os << j.dump(2) << '\n';
    } else if (cfg.output == "csv") {
      write_csv(os, rep);
    } else {
      os << spec->name() << "  L=" << format_real(spec->limit_L) << "  eps=" << format_real(eps) << "  status "
         << to_string(st) << '\n';
      os << std::setw(14) << "x" << std::setw(12) << "A_eps(x)" << std::setw(16) << "envelope" << std::setw(12)
         << "ratio" << '\n';
      for (const auto& r : rep.rows)
        os << std::setw(14) << format_real(r.x) << std::setw(12) << r.count << std::setw(16)
           << (r.envelope > 0 ? fixed(r.envelope, 2) : "-") << std::setw(12) << (r.envelope > 0 ? fixed(r.ratio, 6) : "-")
           << (r.holds ? "" : "  VIOLATED") << '\n';
      if (rep.lambda_estimate)
        os << "lambda estimate " << fixed(rep.lambda_estimate->value, 6) << " ("
           << to_string(rep.lambda_estimate->trend) << ")\n";
      for (const auto& v : rep.verdicts)
        print_verdict_table(os, "A_eps", v);
    }
    return exit_for(st);
  }

  // ---------------------------------------------------------------- verify

  int cmd_verify(const Config& cfg, const std::string& suite, const std::string& eps_text)
  {
    std::vector<std::string> statements;
    if (suite != "all")
      statements = split(suite, ',');
    const auto cp = parse_checkpoints(cfg.checkpoints, static_cast<double>(cfg.limit));
    if (!cp.empty() && cp.back() > static_cast<double>(cfg.limit))
      throw UsageError("checkpoints exceed --limit");
    const auto eps = eps_text.empty() ? default_epsilons() : parse_reals(eps_text);
    const auto rep = statement_suite(make_table(cfg.limit), cp, statements, eps);

    Output out(cfg);
    auto& os = out.stream();
    if (cfg.output == "json") {
      os << to_json(rep).dump(2) << '\n';
    } else if (cfg.output == "csv") {
      write_csv(os, rep);
    } else {
      os << "limit " << rep.limit << ", " << cp.size() << " checkpoints up to " << format_real(cp.back()) << '\n';
      for (const auto& r : rep.records) {
        os << std::left << std::setw(5) << r.statement << std::setw(28) << r.spec.name() << std::right
           << " eps=" << std::setw(5) << format_real(r.epsilon) << "  " << to_string(r.status);
        for (const auto& v : r.verdicts)
          os << "  " << to_string(v.ideal) << "(" << format_real(v.q) << ")=" << to_string(v.verdict);
        if (r.lambda_estimate)
          os << "  lambda=" << fixed(r.lambda_estimate->value, 4) << " " << to_string(r.lambda_estimate->trend);
        if (r.measured)
          os << "  measured=" << fixed(*r.measured, 4);
        os << '\n';
        for (const auto& w : r.witnesses)
          os << "      witness n=" << w.n << " x_n=" << format_real(w.x_n) << " (" << w.reason << ")\n";
      }
      os << "overall " << to_string(rep.overall()) << '\n';
    }
    return exit_for(rep.overall());
  }

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Arithmetic functions, convergence exponents and ideal convergence checks"};
  app.require_subcommand(1);
  app.fallthrough();
  Config cfg;
  // accept 1e7 as well as 10000000
  const CLI::Validator sci(
    [](std::string& s) -> std::string {
      if (s.find_first_of(".eE") == std::string::npos)
        return {};
      double v = 0;
      const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc() || end != s.data() + s.size() || !(v >= 0) || v >= 1.8e19 || v != std::floor(v))
        return "not an integer: " + s;
      s = std::to_string(static_cast<std::uint64_t>(v));
      return {};
    },
    "", "scientific");
  app.add_option("--limit", cfg.limit, "sieve bound")->transform(sci)->capture_default_str();
  app.add_option("--output", cfg.output, "csv, json or table")->capture_default_str();
  app.add_option("--out", cfg.out_path, "write the report here instead of stdout");
  app.add_option("--checkpoints", cfg.checkpoints, "x1,x2,... or geo:START:FACTOR:CAP");

  std::string fn_name, fn_arg;
  std::uint64_t fn_p = 0;
  auto* fn = app.add_subcommand("fn", "evaluate an arithmetic function at N or over A..B");
  fn->add_option("name", fn_name, "omega Omega h H ap d logf logfstar gamma tau N")->required();
  fn->add_option("n", fn_arg, "N or A..B")->required();
  fn->add_option("--p", fn_p, "prime for ap");

  SetOptions construct_set, lambda_set, classify_set;
  std::size_t construct_terms = 10;
  auto* construct = app.add_subcommand("construct", "print the first terms of a set");
  construct_set.add_to(construct);
  construct->add_option("--terms", construct_terms)->capture_default_str();

  std::optional<std::size_t> lambda_terms;
  double lambda_tail = 0.2;
  auto* lambda = app.add_subcommand("lambda", "estimate the convergence exponent");
  lambda_set.add_to(lambda);
  lambda->add_option("--terms", lambda_terms, "prefix length (default 100000, or the whole file)");
  lambda->add_option("--tail", lambda_tail, "tail fraction of the prefix")->capture_default_str();

  std::string ideal = "leq", q_text, delta_text;
  auto* classify = app.add_subcommand("classify", "classify a set against I0, I_<q, I_<=q");
  classify_set.add_to(classify);
  classify->add_option("--ideal", ideal, "leq, less, I0, Ic or chain")->capture_default_str();
  classify->add_option("--q", q_text, "q, or a comma-separated grid for chain");
  classify->add_option("--delta", delta_text, "comma-separated delta grid");

  std::string aeps_seq;
  double aeps_eps = 0.5;
  auto* aeps = app.add_subcommand("aeps", "exceptional set A_eps of a sequence");
  aeps->add_option("sequence", aeps_seq, "h_over_log H_over_log ap_scaled:P gamma tau pascal_N omega_over_loglog "
                                         "bigomega_over_loglog loglog_f_over_loglog loglog_fstar_over_loglog")
    ->required();
  aeps->add_option("--eps", aeps_eps)->capture_default_str();

  std::string suite = "all", verify_eps;
  auto* verify = app.add_subcommand("verify", "run the statement checks I..VIII");
  verify->add_option("--suite", suite, "I..VIII, a comma list, or all")->capture_default_str();
  verify->add_option("--eps", verify_eps, "comma-separated epsilon grid (default 0.25,0.5,1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*fn)
      return cmd_fn(cfg, fn_name, fn_arg, fn_p);
    if (*construct)
      return cmd_construct(cfg, construct_set, construct_terms);
    if (*lambda)
      return cmd_lambda(cfg, lambda_set, lambda_terms, lambda_tail);
    if (*classify)
      return cmd_classify(cfg, classify_set, ideal, q_text, delta_text);
    if (*aeps)
      return cmd_aeps(cfg, aeps_seq, aeps_eps);
    if (*verify)
      return cmd_verify(cfg, suite, verify_eps);
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
