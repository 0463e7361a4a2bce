#include "nuspectral/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace nuspectral::io {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

void print_full(std::ostream& out, double v) {
  if (std::isnan(v)) {
    out << "nan";
    return;
  }
  out << std::setprecision(17) << v;
}

}  // namespace

ReadResult read_time_series_csv(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  std::vector<double> t, x;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string s = trim(line);
    if (s.empty() || s[0] == '#') continue;
    if (!header_seen) {
      std::string h = s;
      h.erase(std::remove_if(h.begin(), h.end(),
                             [](char c) { return c == ' ' || c == '\t'; }),
              h.end());
      if (h != "t,x") {
        throw ParseError("expected header 't,x', got '" + s + "'", lineno);
      }
      header_seen = true;
      continue;
    }
    const auto comma = s.find(',');
    if (comma == std::string::npos) {
      throw ParseError("expected 't,x' row", lineno);
    }
    try {
      std::size_t used = 0;
      const std::string ts = trim(s.substr(0, comma));
      const std::string xs = trim(s.substr(comma + 1));
      const double tv = std::stod(ts, &used);
      if (used != ts.size()) throw std::invalid_argument(ts);
      const double xv = std::stod(xs, &used);
      if (used != xs.size()) throw std::invalid_argument(xs);
      if (!std::isfinite(tv) || !std::isfinite(xv)) {
        throw std::invalid_argument("non-finite value");
      }
      t.push_back(tv);
      x.push_back(xv);
    } catch (const std::exception&) {
      throw ParseError("could not parse row '" + s + "'", lineno);
    }
  }
  if (!header_seen) throw ParseError("empty input: missing 't,x' header", lineno);
  if (t.size() < 2) throw ParseError("need at least 2 samples", lineno);

  bool sorted = std::is_sorted(t.begin(), t.end());
  if (!sorted) {
    std::vector<std::size_t> idx(t.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return t[a] < t[b]; });
    std::vector<double> ts(t.size()), xs(x.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
      ts[i] = t[idx[i]];
      xs[i] = x[idx[i]];
    }
    t.swap(ts);
    x.swap(xs);
  }
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (t[i] == t[i - 1]) {
      throw ParseError("duplicate sample time " + std::to_string(t[i]), 0);
    }
  }
  return ReadResult{SignalSeries(SamplingGrid(std::move(t)), std::move(x)), sorted};
}

ReadResult read_time_series_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open input file: " + path);
  return read_time_series_csv(in);
}

std::string config_hash(const std::string& canonical) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

void write_time_series_csv(std::ostream& out, const SignalSeries& series,
                           const std::string& hash) {
  out << "# config_hash=" << hash << "\n";
  out << "t,x\n";
  for (std::size_t i = 0; i < series.grid.n_samples(); ++i) {
    print_full(out, series.grid.times()[i]);
    out << ",";
    print_full(out, series.values[i]);
    out << "\n";
  }
}

void write_spectrum_csv(std::ostream& out, const SpectrumEstimate& estimate,
                        const std::string& hash) {
  out << "# config_hash=" << hash << "\n";
  out << "# method=" << method_name(estimate.method) << "\n";
  out << "f_center,power,power_db,k_used,f_w_used,flag\n";
  for (std::size_t i = 0; i < estimate.plan.size(); ++i) {
    print_full(out, estimate.plan.center(i));
    out << ",";
    print_full(out, estimate.power[i]);
    out << ",";
    const double db = estimate.power[i] > 0.0
                          ? 10.0 * std::log10(estimate.power[i])
                          : -std::numeric_limits<double>::infinity();
    if (std::isnan(estimate.power[i])) {
      out << "nan";
    } else if (std::isinf(db)) {
      out << "-inf";
    } else {
      print_full(out, db);
    }
    out << "," << estimate.k_used[i] << ",";
    print_full(out, estimate.f_w_used[i]);
    out << "," << static_cast<int>(estimate.flags[i]) << "\n";
  }
}

void write_ftest_csv(std::ostream& out, const FTestResult& result,
                     const std::string& hash) {
  out << "# config_hash=" << hash << "\n";
  out << "# dof=" << result.dof.first << "," << result.dof.second << "\n";
  for (const auto& [p, crit] : result.critical_values) {
    out << "# critical p=" << p << " value=";
    print_full(out, crit);
    out << "\n";
  }
  out << "f_center,f_stat,amp_re,amp_im";
  for (const auto& [p, crit] : result.critical_values) {
    (void)crit;
    out << ",exceeds_p" << p;
  }
  out << ",flag\n";
  for (std::size_t i = 0; i < result.plan.size(); ++i) {
    print_full(out, result.plan.center(i));
    out << ",";
    print_full(out, result.f_stat[i]);
    out << ",";
    print_full(out, result.amplitude[i].real());
    out << ",";
    print_full(out, result.amplitude[i].imag());
    for (const auto& [p, crit] : result.critical_values) {
      (void)p;
      out << "," << (result.f_stat[i] > crit ? 1 : 0);
    }
    out << "," << static_cast<int>(result.flags[i]) << "\n";
  }
}

void write_subopt_csv(std::ostream& out, const SuboptimalityReport& report,
                      const std::string& hash) {
  out << "# config_hash=" << hash << "\n";
  out << "f_center,epsilon,flag\n";
  for (std::size_t i = 0; i < report.plan.size(); ++i) {
    print_full(out, report.plan.center(i));
    out << ",";
    print_full(out, report.epsilon_measure[i]);
    out << "," << static_cast<int>(report.flags[i]) << "\n";
  }
}

namespace {

nlohmann::json error_report_json(const ErrorReport& r) {
  nlohmann::json j;
  j["method"] = method_name(r.method);
  j["scheme"] = scheme_name(r.scheme);
  j["trials"] = r.trials;
  j["base_seed"] = r.base_seed;
  j["f_w"] = r.f_w;
  j["k_tapers"] = r.k_tapers;
  j["failed_bands"] = r.failed_bands;
  j["centers"] = r.centers;
  auto sanitize = [](const std::vector<double>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (double x : v) {
      if (std::isnan(x)) {
        a.push_back(nullptr);
      } else {
        a.push_back(x);
      }
    }
    return a;
  };
  j["mse_db_mean"] = sanitize(r.mse_db_mean);
  j["mse_db_sem"] = sanitize(r.mse_db_sem);
  j["flags"] = r.flags;
  return j;
}

}  // namespace

void write_error_reports_json(std::ostream& out,
                              const std::vector<ErrorReport>& reports,
                              const std::string& hash) {
  nlohmann::json j;
  j["config_hash"] = hash;
  j["kind"] = "error_analysis";
  j["reports"] = nlohmann::json::array();
  for (const auto& r : reports) j["reports"].push_back(error_report_json(r));
  out << j.dump(2) << "\n";
}

void write_speed_reports_json(std::ostream& out,
                              const std::vector<SpeedReport>& reports,
                              const std::string& hash) {
  nlohmann::json j;
  j["config_hash"] = hash;
  j["kind"] = "speed_analysis";
  j["reports"] = nlohmann::json::array();
  for (const auto& r : reports) {
    nlohmann::json e;
    e["method"] = method_name(r.method);
    e["scheme"] = scheme_name(r.scheme);
    e["spectra_per_second_mean"] = r.spectra_per_second_mean;
    e["spectra_per_second_std"] = r.spectra_per_second_std;
    e["calls"] = r.calls;
    e["batches"] = r.batches;
    e["environment"] = r.environment;
    e["timestamp"] = r.timestamp;
    j["reports"].push_back(e);
  }
  out << j.dump(2) << "\n";
}

void write_manifest_json(std::ostream& out, const std::string& command,
                         const std::vector<std::pair<std::string, std::string>>& fields,
                         const std::string& hash) {
  nlohmann::json j;
  j["command"] = command;
  j["version"] = library_version();
  j["config_hash"] = hash;
  for (const auto& [k, v] : fields) j["config"][k] = v;
  out << j.dump(2) << "\n";
}

std::string library_version() { return "0.1.0"; }

}  // namespace nuspectral::io
