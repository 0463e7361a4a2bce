#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "nuspectral/bench.hpp"
#include "nuspectral/estimators.hpp"
#include "nuspectral/grid.hpp"
#include "nuspectral/inference.hpp"

namespace nuspectral::io {

/// Malformed input with the offending line number attached.
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t line)
      : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

struct ReadResult {
  SignalSeries series;
  bool was_sorted;  // false when the input needed sorting
};

/// Reads a `t,x` CSV (header required, `#` comments allowed). Unsorted rows
/// are sorted with a warning flag; duplicate times are rejected.
ReadResult read_time_series_csv(std::istream& in);
ReadResult read_time_series_csv_file(const std::string& path);

/// FNV-1a hash of a canonical config string, hex-encoded; embedded in every
/// output file so identical configs are recognizable.
std::string config_hash(const std::string& canonical);

void write_time_series_csv(std::ostream& out, const SignalSeries& series,
                           const std::string& hash);
void write_spectrum_csv(std::ostream& out, const SpectrumEstimate& estimate,
                        const std::string& hash);
void write_ftest_csv(std::ostream& out, const FTestResult& result,
                     const std::string& hash);
void write_subopt_csv(std::ostream& out, const SuboptimalityReport& report,
                      const std::string& hash);
void write_error_reports_json(std::ostream& out,
                              const std::vector<ErrorReport>& reports,
                              const std::string& hash);
void write_speed_reports_json(std::ostream& out,
                              const std::vector<SpeedReport>& reports,
                              const std::string& hash);

/// Run manifest: config echo, library version, seeds, hash.
void write_manifest_json(std::ostream& out, const std::string& command,
                         const std::vector<std::pair<std::string, std::string>>& fields,
                         const std::string& hash);

std::string library_version();

}  // namespace nuspectral::io
