#ifndef IDEALCONV_CONVERGENCE_HH
#define IDEALCONV_CONVERGENCE_HH

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "idealconv/exponent.hh"
#include "idealconv/factor_table.hh"
#include "idealconv/integer_set.hh"
#include "idealconv/pascal.hh"

namespace idealconv {

  enum class SequenceKind {
    h_over_log,
    H_over_log,
    ap_scaled,        // (log p) a_p(n) / log n
    gamma,
    tau,
    pascal_N,
    omega_over_loglog,
    bigomega_over_loglog,
    loglog_f_over_loglog,
    loglog_fstar_over_loglog,
  };

  /// A sequence x_n, its limit L and the first index where x_n is defined.
  struct SequenceSpec {
    SequenceKind kind = SequenceKind::h_over_log;
    std::uint64_t p = 0;  // ap_scaled only
    double limit_L = 0.0;
    std::uint64_t start_n = 2;

    // Limits as fixed by the statements: 0, 1, 2 or 1 + log 2.
    static SequenceSpec make(SequenceKind kind, std::uint64_t p = 0);
    // "h_over_log", "ap_scaled:3", ...; nullopt for unknown names.
    static std::optional<SequenceSpec> parse(const std::string& name);

    std::string name() const;
  };

  // x_n for n >= spec.start_n. pascal_N uses pascal_count; log log
  // sequences give -inf where log f*(n) = 0 (n prime).
  double sequence_value(const SequenceSpec& spec, const Factorization& f);

  // |x - L| >= eps, with infinite x always exceptional.
  bool is_exceptional(double x, double L, double eps);

  /// x_n for every n in [start_n, limit]; entries below start_n are NaN.
  struct SequenceValues {
    SequenceSpec spec;
    std::uint64_t limit = 0;
    std::vector<double> x;
  };

  // Bulk evaluation over the table range, split into blocks across
  // `threads` workers (0 = hardware concurrency). pascal_N reads a
  // PascalIndex instead of searching per n.
  std::shared_ptr<const SequenceValues> evaluate_sequence(const SequenceSpec& spec, const FactorTable& table,
                                                          unsigned threads = 0);

  // A_eps = {n in [start_n, limit] : |x_n - L| >= eps}, enumerated lazily
  // by factorizing each n. Throws InvalidArgument for eps <= 0 or an
  // ap_scaled spec whose p is not prime.
  IntegerSet exceptional_set(const SequenceSpec& spec, double eps, std::shared_ptr<const FactorTable> table);

  // Same set, read from precomputed values.
  IntegerSet exceptional_set(std::shared_ptr<const SequenceValues> values, double eps);

  enum class EnvelopeKind { thm7, thm8, thm9_sqrt };

  // 2 sqrt(2) x^(1 - eps log 2 / 2); (log x / log p) x^(1 - eps); (log x / log 2) sqrt(x).
  double envelope_value(EnvelopeKind kind, double eps, double x, std::uint64_t p = 2);

  struct EnvelopeRow {
    double x = 0.0;
    std::size_t count = 0;
    double envelope = 0.0;
    double ratio = 0.0;  // count / envelope
    bool holds = true;
  };

  // Evaluates the envelope at every checkpoint x >= 2 (x >= 4 for
  // thm9_sqrt). Throws InvalidArgument when the kind does not belong to
  // the spec: thm7 <-> H_over_log, thm8 <-> ap_scaled, thm9_sqrt <-> gamma/tau.
  std::vector<EnvelopeRow> envelope_check(const IntegerSet& a_eps, const SequenceSpec& spec, double eps,
                                          EnvelopeKind kind, const Checkpoints& cp);

  /// Everything measured for one (sequence, eps).
  struct ExceptionalReport {
    SequenceSpec spec;
    double epsilon = 0.0;
    std::vector<EnvelopeRow> rows;   // envelope is 0 when the spec has none
    std::optional<ExponentEstimate> lambda_estimate;
    std::vector<IdealVerdict> verdicts;
  };

  // Counts at checkpoints, the spec's envelope if it has one, a lambda
  // estimate when A_eps has at least 100 elements up to the limit, and the
  // ideal verdict the statements predict.
  ExceptionalReport exceptional_report(const SequenceSpec& spec, double eps,
                                       std::shared_ptr<const FactorTable> table, const Checkpoints& cp);

  enum class Status { pass, fail, indeterminate };
  const char* to_string(Status s);

  struct Witness {
    std::uint64_t n = 0;
    double x_n = 0.0;
    std::string reason;
  };

  struct StatementRecord {
    std::string statement;  // "I" .. "VIII"
    SequenceSpec spec;
    double epsilon = 0.0;
    Status status = Status::indeterminate;
    std::vector<EnvelopeRow> rows;
    std::vector<IdealVerdict> verdicts;
    std::optional<ExponentEstimate> lambda_estimate;
    std::vector<Witness> witnesses;
    std::vector<std::string> notes;
    std::optional<double> measured;  // p0 for I, max A/sqrt(x) for VI
  };

  struct SuiteReport {
    std::uint64_t limit = 0;
    std::vector<double> epsilons;
    std::vector<double> checkpoints;
    std::vector<StatementRecord> records;
    Status overall() const;  // fail > indeterminate > pass
  };

  // The default eps grid {0.25, 0.5, 1.0}.
  std::vector<double> default_epsilons();

  // Largest prime p with 1/log p >= eps, or 1 if there is none.
  std::uint64_t largest_admissible_prime(double eps);

  // Runs the selected statements ("I" .. "VIII"; empty = all). Throws
  // InvalidArgument if a checkpoint exceeds table->limit() or a name is
  // unknown. Statement failures are recorded, not thrown.
  SuiteReport statement_suite(std::shared_ptr<const FactorTable> table, const Checkpoints& cp,
                              const std::vector<std::string>& statements = {},
                              const std::vector<double>& epsilons = default_epsilons());

  struct RemarkRow {
    std::size_t k = 0;
    std::uint64_t n_k = 0;
    double ratio = 0.0;  // log k / log n_k
  };

  // (k, n_k, log k / log n_k) at k = 1, 2, 4, ... and the last k, for the
  // omega / Omega / log log f / log log f* sequences.
  std::vector<RemarkRow> remark_limsup(const SequenceSpec& spec, double eps, std::shared_ptr<const FactorTable> table);

} // namespace idealconv

#endif // IDEALCONV_CONVERGENCE_HH
