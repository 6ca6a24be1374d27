#ifndef IDEALCONV_SERIALIZE_HH
#define IDEALCONV_SERIALIZE_HH

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "idealconv/convergence.hh"
#include "idealconv/exponent.hh"

namespace idealconv {

  // Bumped whenever a JSON field or CSV column changes meaning.
  inline constexpr int kFormatVersion = 1;

  // Shortest round-trip decimal form, '.' separator regardless of locale.
  std::string format_real(double v);

  nlohmann::json to_json(const ExponentEstimate& e);
  nlohmann::json to_json(const ClassifierPolicy& p);
  nlohmann::json to_json(const IdealVerdict& v);
  nlohmann::json to_json(const SequenceSpec& s);
  nlohmann::json to_json(const ExceptionalReport& r);
  nlohmann::json to_json(const StatementRecord& r);
  nlohmann::json to_json(const SuiteReport& r);
  nlohmann::json to_json(const std::vector<PartialSum>& sums);
  nlohmann::json to_json(const std::vector<RemarkRow>& rows);

  // One header line, then one row per sample.
  void write_csv(std::ostream& out, const std::string& label, const ExponentEstimate& e);
  void write_csv(std::ostream& out, const std::string& label, const std::vector<IdealVerdict>& verdicts);
  void write_csv(std::ostream& out, const ExceptionalReport& r);
  void write_csv(std::ostream& out, const SuiteReport& r);

} // namespace idealconv

#endif // IDEALCONV_SERIALIZE_HH
