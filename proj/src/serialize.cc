#include "idealconv/serialize.hh"

#include <charconv>
#include <cmath>
#include <ostream>

namespace idealconv {

  using nlohmann::json;

  std::string format_real(double v)
  {
    if (std::isnan(v))
      return "nan";
    if (std::isinf(v))
      return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
  }

  namespace {

    // JSON has no inf/nan
    json real(double v)
    {
      if (std::isfinite(v))
        return v;
      return format_real(v);
    }

    json rows_json(const std::vector<EvidenceRow>& rows)
    {
      json a = json::array();
      for (const auto& r : rows)
        a.push_back({{"x", real(r.x)}, {"count", r.count}, {"envelope", real(r.envelope)}, {"ratio", real(r.ratio)}});
      return a;
    }

    json rows_json(const std::vector<EnvelopeRow>& rows)
    {
      json a = json::array();
      for (const auto& r : rows)
        a.push_back({{"x", real(r.x)},
                     {"count", r.count},
                     {"envelope", real(r.envelope)},
                     {"ratio", real(r.ratio)},
                     {"holds", r.holds}});
      return a;
    }

  } // namespace

  json to_json(const ExponentEstimate& e)
  {
    json w = json::array();
    for (const auto& [n, r] : e.window_ratios)
      w.push_back({{"n", n}, {"ratio", real(r)}});
    return {{"value", real(e.value)},
            {"terms", e.terms},
            {"tail_fraction", real(e.tail_fraction)},
            {"window_begin", e.window_begin},
            {"argmax", e.argmax},
            {"trend", to_string(e.trend)},
            {"window_ratios", w}};
  }

  json to_json(const ClassifierPolicy& p)
  {
    return {{"decel_drop", real(p.decel_drop)}, {"horizon", real(p.horizon)}, {"min_tail", p.min_tail}};
  }

  json to_json(const IdealVerdict& v)
  {
    json series = json::array();
    for (const auto& s : v.series) {
      json js = {{"delta", real(s.delta)},
                 {"exponent", real(s.exponent)},
                 {"behavior", to_string(s.behavior)},
                 {"extrapolated", s.extrapolated},
                 {"rows", rows_json(s.rows)}};
      js["crossing_log_x"] = s.crossing ? real(*s.crossing) : json(nullptr);
      series.push_back(js);
    }
    json local = json::array();
    for (const auto& b : v.local_exponents)
      local.push_back({{"log_a", real(b.log_a)}, {"beta", real(b.beta)}});
    json j = {{"ideal", to_string(v.ideal)},
              {"q", real(v.q)},
              {"verdict", to_string(v.verdict)},
              {"series", series},
              {"local_exponents", local},
              {"policy", to_json(v.policy)},
              {"notes", v.notes},
              {"chain_violation", v.chain_violation}};
    j["delta_used"] = v.delta_used ? real(*v.delta_used) : json(nullptr);
    return j;
  }

  json to_json(const SequenceSpec& s)
  {
    return {{"name", s.name()}, {"L", real(s.limit_L)}, {"start_n", s.start_n}};
  }

  json to_json(const ExceptionalReport& r)
  {
    json verdicts = json::array();
    for (const auto& v : r.verdicts)
      verdicts.push_back(to_json(v));
    json j = {{"format_version", kFormatVersion},
              {"sequence", to_json(r.spec)},
              {"epsilon", real(r.epsilon)},
              {"rows", rows_json(r.rows)},
              {"verdicts", verdicts}};
    j["lambda_estimate"] = r.lambda_estimate ? to_json(*r.lambda_estimate) : json(nullptr);
    return j;
  }

  json to_json(const StatementRecord& r)
  {
    json verdicts = json::array();
    for (const auto& v : r.verdicts)
      verdicts.push_back(to_json(v));
    json wit = json::array();
    for (const auto& w : r.witnesses)
      wit.push_back({{"n", w.n}, {"x_n", real(w.x_n)}, {"reason", w.reason}});
    json j = {{"statement", r.statement},
              {"sequence", to_json(r.spec)},
              {"epsilon", real(r.epsilon)},
              {"status", to_string(r.status)},
              {"rows", rows_json(r.rows)},
              {"verdicts", verdicts},
              {"witnesses", wit},
              {"notes", r.notes}};
    j["lambda_estimate"] = r.lambda_estimate ? to_json(*r.lambda_estimate) : json(nullptr);
    j["measured"] = r.measured ? real(*r.measured) : json(nullptr);
    return j;
  }

  json to_json(const SuiteReport& r)
  {
    json recs = json::array();
    for (const auto& rec : r.records)
      recs.push_back(to_json(rec));
    json cps = json::array();
    for (double x : r.checkpoints)
      cps.push_back(real(x));
    return {{"format_version", kFormatVersion},
            {"limit", r.limit},
            {"epsilons", r.epsilons},
            {"checkpoints", cps},
            {"overall", to_string(r.overall())},
            {"records", recs}};
  }

  json to_json(const std::vector<PartialSum>& sums)
  {
    json a = json::array();
    for (const auto& s : sums)
      a.push_back({{"x", real(s.x)}, {"count", s.count}, {"sum", real(s.sum)}});
    return a;
  }

  json to_json(const std::vector<RemarkRow>& rows)
  {
    json a = json::array();
    for (const auto& r : rows)
      a.push_back({{"k", r.k}, {"n_k", r.n_k}, {"ratio", real(r.ratio)}});
    return a;
  }

  void write_csv(std::ostream& out, const std::string& label, const ExponentEstimate& e)
  {
    out << "label,value,trend,n,ratio\n";
    for (const auto& [n, r] : e.window_ratios)
      out << label << ',' << format_real(e.value) << ',' << to_string(e.trend) << ',' << n << ',' << format_real(r)
          << '\n';
  }

  void write_csv(std::ostream& out, const std::string& label, const std::vector<IdealVerdict>& verdicts)
  {
    out << "label,ideal,q,delta,exponent,behavior,x,count,envelope,ratio,verdict\n";
    for (const auto& v : verdicts)
      for (const auto& s : v.series)
        for (const auto& r : s.rows)
          out << label << ',' << to_string(v.ideal) << ',' << format_real(v.q) << ',' << format_real(s.delta) << ','
              << format_real(s.exponent) << ',' << to_string(s.behavior) << ',' << format_real(r.x) << ',' << r.count
              << ',' << format_real(r.envelope) << ',' << format_real(r.ratio) << ',' << to_string(v.verdict) << '\n';
  }

  void write_csv(std::ostream& out, const ExceptionalReport& r)
  {
    out << "sequence,L,epsilon,x,count,envelope,ratio,holds\n";
    for (const auto& row : r.rows)
      out << r.spec.name() << ',' << format_real(r.spec.limit_L) << ',' << format_real(r.epsilon) << ','
          << format_real(row.x) << ',' << row.count << ',' << format_real(row.envelope) << ','
          << format_real(row.ratio) << ',' << (row.holds ? 1 : 0) << '\n';
  }

  void write_csv(std::ostream& out, const SuiteReport& r)
  {
    out << "statement,sequence,L,epsilon,status,x,count,envelope,ratio,holds\n";
    for (const auto& rec : r.records)
      for (const auto& row : rec.rows)
        out << rec.statement << ',' << rec.spec.name() << ',' << format_real(rec.spec.limit_L) << ','
            << format_real(rec.epsilon) << ',' << to_string(rec.status) << ',' << format_real(row.x) << ','
            << row.count << ',' << format_real(row.envelope) << ',' << format_real(row.ratio) << ','
            << (row.holds ? 1 : 0) << '\n';
  }

} // namespace idealconv
