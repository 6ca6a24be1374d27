#ifndef IDEALCONV_EXPONENT_HH
#define IDEALCONV_EXPONENT_HH

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "idealconv/integer_set.hh"

namespace idealconv {

  enum class Trend { increasing, decreasing, oscillating, flat };

  /// Finite-prefix estimate of lambda(A) = limsup log n / log a_n.
  struct ExponentEstimate {
    double value = 0.0;             // max ratio over the tail window
    std::size_t terms = 0;
    double tail_fraction = 0.0;
    std::size_t window_begin = 0;   // tail window [window_begin, terms]
    std::size_t argmax = 0;         // n attaining value
    std::vector<std::pair<std::size_t, double>> window_ratios;  // (n, log n / log a_n), n = 2^j and terms
    Trend trend = Trend::flat;
  };

  // Throws InvalidArgument unless terms >= 100 and 0 < tail_fraction < 1,
  // InsufficientData if the set has fewer than `terms` elements.
  ExponentEstimate estimate_lambda(const IntegerSet& set, std::size_t terms, double tail_fraction = 0.2);

  enum class Ideal { I0, less, Ic, leq };
  enum class Verdict { consistent, inconsistent, indeterminate };

  // How a series A(x)/x^e behaves on the final third of the checkpoints.
  enum class Behavior {
    decaying,      // nonincreasing and falling (or A constant)
    decelerating,  // local exponent of A falls and crosses e within the horizon
    growing,       // nondecreasing and rising, exponent not falling
    unresolved
  };

  struct EvidenceRow {
    double x = 0.0;
    std::size_t count = 0;   // A(x)
    double envelope = 0.0;   // x^e
    double ratio = 0.0;      // A(x) / x^e
  };

  struct DeltaSeries {
    double delta = 0.0;
    double exponent = 0.0;   // q + delta or q - delta
    std::vector<EvidenceRow> rows;
    Behavior behavior = Behavior::unresolved;
    bool extrapolated = false;       // decision rests on the projected crossing
    std::optional<double> crossing;  // projected log x where the local exponent reaches `exponent`
  };

  /// Thresholds of the finite-evidence "-> 0" test. These are policy, not
  /// consequences of the criteria, and every verdict records them.
  struct ClassifierPolicy {
    double decel_drop = 0.01;  // minimum fall of the local exponent between blocks
    double horizon = 2.0;      // crossing must occur by log x <= horizon * log(last checkpoint)
    std::size_t min_tail = 3;  // checkpoints in the final-third window
  };

  struct LocalExponent {
    double log_a = 0.0;  // midpoint of log a over the sample pair
    double beta = 0.0;   // log(n2/n1) / log(a2/a1)
  };

  struct IdealVerdict {
    Ideal ideal = Ideal::leq;
    double q = 0.0;
    Verdict verdict = Verdict::indeterminate;
    std::optional<double> delta_used;
    std::vector<DeltaSeries> series;
    std::vector<LocalExponent> local_exponents;
    ClassifierPolicy policy;
    std::vector<std::string> notes;
    bool chain_violation = false;

    // Rows of the decisive series: the witness for consistent I_{<q},
    // otherwise the first series that is not decaying (or the first).
    const std::vector<EvidenceRow>& evidence() const;
  };

  // {0.2, 0.1, 0.05, 0.02} restricted to q + delta <= 1 / delta < q.
  std::vector<double> default_deltas_leq(double q);
  std::vector<double> default_deltas_less(double q);

  // A in I_{<=q} iff A(x)/x^(q+delta) -> 0 for every delta > 0. q = 0 is
  // reported as I0. Deltas with q + delta > 1 are dropped; throws
  // InvalidArgument if none remain or cp is empty.
  IdealVerdict classify_leq(const IntegerSet& set, double q, std::vector<double> deltas, const Checkpoints& cp,
                            const ClassifierPolicy& policy = {});

  // A in I_{<q} iff A(x)/x^(q-delta) -> 0 for some delta > 0. The grid is
  // searched in the given order. Throws InvalidArgument for an empty grid,
  // delta >= q or empty checkpoints.
  IdealVerdict classify_less(const IntegerSet& set, double q, std::vector<double> delta_grid, const Checkpoints& cp,
                             const ClassifierPolicy& policy = {});

  struct PartialSum {
    double x = 0.0;
    std::size_t count = 0;
    double sum = 0.0;  // sum of a^-q over a <= x
  };

  // Raw running sums of a_n^-q; no verdict is drawn from them.
  std::vector<PartialSum> partial_sum_probe(const IntegerSet& set, double q, const Checkpoints& cp);

  struct ChainReport {
    std::vector<IdealVerdict> verdicts;  // I_{<=q} per q
    bool monotone = true;
  };

  // classify_leq over a strictly increasing q grid in (0,1). A verdict that
  // is not consistent after a consistent one is flagged, not hidden.
  ChainReport chain_report(const IntegerSet& set, const std::vector<double>& q_grid, const Checkpoints& cp,
                           const ClassifierPolicy& policy = {});

  const char* to_string(Trend t);
  const char* to_string(Ideal i);
  const char* to_string(Verdict v);
  const char* to_string(Behavior b);

} // namespace idealconv

#endif // IDEALCONV_EXPONENT_HH
