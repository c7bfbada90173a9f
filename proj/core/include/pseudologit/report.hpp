#ifndef PSEUDOLOGIT_REPORT_HPP
#define PSEUDOLOGIT_REPORT_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pseudologit/inference.hpp"
#include "pseudologit/simulation.hpp"

namespace pseudologit {

/// Shortest decimal representation that round-trips to the same double.
std::string format_double(double v);

/// FNV-1a 64-bit digest, rendered as "fnv1a:<16 hex digits>".
std::string fnv1a_hex(const std::string& bytes);

/// A two-column numeric data file. The header row is auto-detected: a first
/// row whose leading fields do not parse as numbers is treated as a header.
struct DataFile {
  std::string path;
  char delimiter = ',';
  bool had_header = false;
  std::string digest;  // of the raw file bytes
  std::vector<double> xs;  // column 1
  std::vector<double> ys;  // column 2
};

/// Reads and validates a data file; throws IoError on unreadable or
/// ill-formed input (every retained row must parse to two finite reals).
DataFile read_data_file(const std::string& path, char delimiter = ',');

/// One fitted model inside a report.
struct FitReportBlock {
  std::string model;  // "full" or the sub-model name
  FitResult fit;
  /// Wald intervals per parameter; absent where no positive SE exists.
  std::array<std::optional<ConfidenceInterval>, 5> wald{};
  std::optional<BootstrapSummary> bootstrap;
  double minus2_loglik = 0.0;
  double aic = 0.0;
  double bic = 0.0;
};

struct TestSection {
  std::string submodel;
  double statistic_T = 1.0;
  double minus2_log_T = 0.0;
  int df = 1;
  double p_value = 1.0;
};

/// Machine-readable result of a fit or test command.
struct ReportDocument {
  int schema_version = 1;
  std::string command;
  std::string input_digest;
  int n = 0;
  std::optional<double> pearson_correlation;
  std::vector<FitReportBlock> fits;
  std::optional<TestSection> test;
};

/// Assembles a report block: AIC = -2 loglik + 2k and BIC = -2 loglik +
/// k log n with k the fit's free parameter count; Wald intervals from the
/// fit's standard errors.
FitReportBlock make_fit_block(std::string model, const FitResult& fit, int n,
                              double ci_level);

nlohmann::ordered_json to_json(const ReportDocument& doc);
std::string to_csv(const ReportDocument& doc);

nlohmann::ordered_json study_to_json(const StudyReport& report);
std::string study_to_csv(const StudyReport& report);

}  // namespace pseudologit

#endif
