#include "pseudologit/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace pseudologit {

namespace {

using nlohmann::ordered_json;

bool parse_field(std::string_view field, double& out) {
  // Trim surrounding spaces and an optional CR left by CRLF input.
  while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) {
    field.remove_prefix(1);
  }
  while (!field.empty() &&
         (field.back() == ' ' || field.back() == '\t' || field.back() == '\r')) {
    field.remove_suffix(1);
  }
  if (field.empty()) return false;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  if (*first == '+') ++first;  // from_chars rejects a leading plus
  const auto res = std::from_chars(first, last, out);
  return res.ec == std::errc() && res.ptr == last;
}

std::vector<std::string_view> split_line(std::string_view line, char delim) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(delim, start);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return fields;
}

ordered_json ci_json(const ConfidenceInterval& ci) {
  return ordered_json{
      {"lower", ci.lower},
      {"upper", ci.upper},
      {"level", ci.level},
      {"method",
       ci.method == ConfidenceInterval::Method::Wald ? "wald" : "bootstrap-percentile"},
  };
}

ordered_json fit_block_json(const FitReportBlock& block, int n) {
  ordered_json est, se, wald;
  const auto arr = block.fit.estimates.as_array();
  for (int k = 0; k < 5; ++k) {
    const std::string name{param_name(k)};
    est[name] = arr[k];
    if (block.fit.std_errors) {
      se[name] = (*block.fit.std_errors)[k];
    }
    if (block.wald[k]) {
      wald[name] = ci_json(*block.wald[k]);
    }
  }
  ordered_json j{
      {"model", block.model},
      {"method", std::string(fit_method_name(block.fit.method))},
      {"k", block.fit.free_parameters},
      {"n", n},
      {"estimates", est},
      {"std_errors", block.fit.std_errors ? se : ordered_json(nullptr)},
      {"wald_intervals", wald.is_null() ? ordered_json::object() : wald},
      {"loglik", block.fit.loglik_at_estimate},
      {"minus2_loglik", block.minus2_loglik},
      {"aic", block.aic},
      {"bic", block.bic},
      {"converged", block.fit.converged},
      {"iterations", block.fit.iterations},
      {"grad_norm", block.fit.grad_norm},
  };
  if (block.bootstrap) {
    ordered_json bse, bci;
    for (int k = 0; k < 5; ++k) {
      const std::string name{param_name(k)};
      bse[name] = block.bootstrap->std_errors[k];
      bci[name] = ci_json(block.bootstrap->intervals[k]);
    }
    j["bootstrap"] = ordered_json{
        {"replicates_requested", block.bootstrap->replicates_requested},
        {"replicates_used", block.bootstrap->replicates_used},
        {"replicates_failed", block.bootstrap->replicates_failed},
        {"std_errors", bse},
        {"percentile_intervals", bci},
    };
  }
  return j;
}

void append_fit_block_csv(std::ostringstream& out, const FitReportBlock& block) {
  const std::string prefix = block.model == "full" ? "" : block.model + ".";
  const auto arr = block.fit.estimates.as_array();
  for (int k = 0; k < 5; ++k) {
    out << prefix << "estimate." << param_name(k) << ',' << format_double(arr[k]) << '\n';
  }
  for (int k = 0; k < 5; ++k) {
    if (block.fit.std_errors) {
      out << prefix << "std_error." << param_name(k) << ','
          << format_double((*block.fit.std_errors)[k]) << '\n';
    } else {
      out << prefix << "std_error." << param_name(k) << ",\n";
    }
  }
  for (int k = 0; k < 5; ++k) {
    if (block.wald[k]) {
      out << prefix << "wald_lower." << param_name(k) << ','
          << format_double(block.wald[k]->lower) << '\n';
      out << prefix << "wald_upper." << param_name(k) << ','
          << format_double(block.wald[k]->upper) << '\n';
    } else {
      out << prefix << "wald_lower." << param_name(k) << ",\n";
      out << prefix << "wald_upper." << param_name(k) << ",\n";
    }
  }
  if (block.bootstrap) {
    for (int k = 0; k < 5; ++k) {
      out << prefix << "bootstrap_se." << param_name(k) << ','
          << format_double(block.bootstrap->std_errors[k]) << '\n';
      out << prefix << "bootstrap_lower." << param_name(k) << ','
          << format_double(block.bootstrap->intervals[k].lower) << '\n';
      out << prefix << "bootstrap_upper." << param_name(k) << ','
          << format_double(block.bootstrap->intervals[k].upper) << '\n';
    }
  }
  out << prefix << "method," << fit_method_name(block.fit.method) << '\n';
  out << prefix << "k," << block.fit.free_parameters << '\n';
  out << prefix << "loglik," << format_double(block.fit.loglik_at_estimate) << '\n';
  out << prefix << "minus2_loglik," << format_double(block.minus2_loglik) << '\n';
  out << prefix << "aic," << format_double(block.aic) << '\n';
  out << prefix << "bic," << format_double(block.bic) << '\n';
  out << prefix << "converged," << (block.fit.converged ? "true" : "false") << '\n';
  out << prefix << "iterations," << block.fit.iterations << '\n';
  out << prefix << "grad_norm," << format_double(block.fit.grad_norm) << '\n';
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  for (int i = 15; i >= 0; --i) {
    buf[i] = "0123456789abcdef"[h & 0xF];
    h >>= 4;
  }
  return "fnv1a:" + std::string(buf, 16);
}

DataFile read_data_file(const std::string& path, char delimiter) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open data file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string bytes = buf.str();

  DataFile df;
  df.path = path;
  df.delimiter = delimiter;
  df.digest = fnv1a_hex(bytes);

  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool first_content_line = true;
  while (pos <= bytes.size()) {
    const std::size_t nl = bytes.find('\n', pos);
    const std::string_view line(bytes.data() + pos,
                                (nl == std::string::npos ? bytes.size() : nl) - pos);
    pos = (nl == std::string::npos) ? bytes.size() + 1 : nl + 1;
    ++line_no;

    std::string_view stripped = line;
    if (!stripped.empty() && stripped.back() == '\r') {
      stripped.remove_suffix(1);
    }
    if (stripped.empty()) continue;

    const auto fields = split_line(stripped, delimiter);
    double x = 0.0, y = 0.0;
    const bool ok = fields.size() >= 2 && parse_field(fields[0], x) &&
                    parse_field(fields[1], y) && std::isfinite(x) && std::isfinite(y);
    if (first_content_line) {
      first_content_line = false;
      if (!ok) {
        df.had_header = true;  // non-numeric first row is a header
        continue;
      }
    }
    if (!ok) {
      throw IoError("ill-formed row " + std::to_string(line_no) + " in " + path);
    }
    df.xs.push_back(x);
    df.ys.push_back(y);
  }
  if (df.xs.empty()) {
    throw IoError("data file has no data rows: " + path);
  }
  return df;
}

FitReportBlock make_fit_block(std::string model, const FitResult& fit, int n,
                              double ci_level) {
  FitReportBlock block;
  block.model = std::move(model);
  block.fit = fit;
  block.minus2_loglik = -2.0 * fit.loglik_at_estimate;
  block.aic = block.minus2_loglik + 2.0 * fit.free_parameters;
  block.bic = block.minus2_loglik +
              static_cast<double>(fit.free_parameters) * std::log(static_cast<double>(n));
  if (fit.std_errors) {
    for (int k = 0; k < 5; ++k) {
      const double se = (*fit.std_errors)[k];
      if (se > 0.0) {
        block.wald[k] = wald_ci(fit.estimates.as_array()[k], se, ci_level);
      }
    }
  }
  return block;
}

ordered_json to_json(const ReportDocument& doc) {
  ordered_json j{
      {"schema_version", doc.schema_version},
      {"command", doc.command},
      {"input_digest", doc.input_digest},
      {"n", doc.n},
      {"pearson_correlation",
       doc.pearson_correlation ? ordered_json(*doc.pearson_correlation)
                               : ordered_json(nullptr)},
  };
  ordered_json fits = ordered_json::array();
  for (const auto& block : doc.fits) {
    fits.push_back(fit_block_json(block, doc.n));
  }
  j["fits"] = fits;
  if (doc.test) {
    j["test"] = ordered_json{
        {"submodel", doc.test->submodel},
        {"statistic_T", doc.test->statistic_T},
        {"minus2_log_T", doc.test->minus2_log_T},
        {"df", doc.test->df},
        {"p_value", doc.test->p_value},
    };
  }
  return j;
}

std::string to_csv(const ReportDocument& doc) {
  std::ostringstream out;
  out << "key,value\n";
  out << "schema_version," << doc.schema_version << '\n';
  out << "command,\"" << doc.command << "\"\n";
  out << "input_digest," << doc.input_digest << '\n';
  out << "n," << doc.n << '\n';
  out << "pearson_correlation,"
      << (doc.pearson_correlation ? format_double(*doc.pearson_correlation) : "") << '\n';
  for (const auto& block : doc.fits) {
    append_fit_block_csv(out, block);
  }
  if (doc.test) {
    out << "test.submodel," << doc.test->submodel << '\n';
    out << "test.statistic_T," << format_double(doc.test->statistic_T) << '\n';
    out << "test.minus2_log_T," << format_double(doc.test->minus2_log_T) << '\n';
    out << "test.df," << doc.test->df << '\n';
    out << "test.p_value," << format_double(doc.test->p_value) << '\n';
  }
  return out.str();
}

ordered_json study_to_json(const StudyReport& report) {
  const auto& cfg = report.config;
  ordered_json jcfg{
      {"true_params",
       {{"mu", cfg.true_params.mu},
        {"sigma0", cfg.true_params.sigma0},
        {"alpha", cfg.true_params.alpha},
        {"beta", cfg.true_params.beta},
        {"sigma1", cfg.true_params.sigma1}}},
      {"sample_sizes", cfg.sample_sizes},
      {"replicates", cfg.replicates},
      {"submodel", cfg.submodel ? ordered_json(std::string(submodel_name(*cfg.submodel)))
                                : ordered_json(nullptr)},
      {"bootstrap_B", cfg.bootstrap_B},
      {"ci_level", cfg.ci_level},
      {"seed", cfg.seed},
      {"mom_variant", cfg.mom_variant == MomVariant::Paper ? "paper" : "corrected"},
  };

  ordered_json rows = ordered_json::array();
  for (const auto& row : report.rows) {
    ordered_json r{
        {"sample_size", row.sample_size},
        {"model", row.model == StudyModel::Full ? "full" : "restricted"},
        {"parameter", std::string(param_name(row.param_index))},
        {"true_value", row.true_value},
        {"mle_mean", row.mle.mean},
        {"se_mle", row.mle.se},
        {"bias_mle", row.mle.bias},
        {"ci_mle", ci_json(row.mle.ci)},
    };
    if (row.mom) {
      r["mom_mean"] = row.mom->mean;
      r["se_mom"] = row.mom->se;
      r["bias_mom"] = row.mom->bias;
      r["ci_mom"] = ci_json(row.mom->ci);
    }
    rows.push_back(r);
  }

  ordered_json sums = ordered_json::array();
  for (const auto& s : report.summaries) {
    ordered_json js{
        {"sample_size", s.sample_size},
        {"replicates_used", s.replicates_used},
        {"replicates_failed", s.replicates_failed},
        {"pearson_corr_mean", s.pearson_corr_mean},
        {"minus2_loglik_mean", s.minus2_loglik_mean},
    };
    if (s.restricted_minus2_loglik_mean) {
      js["restricted_minus2_loglik_mean"] = *s.restricted_minus2_loglik_mean;
    }
    sums.push_back(js);
  }

  return ordered_json{{"schema_version", 1},
                      {"config", jcfg},
                      {"rows", rows},
                      {"summaries", sums}};
}

std::string study_to_csv(const StudyReport& report) {
  std::ostringstream out;
  out << "sample_size,model,parameter,true_value,mle_mean,se_mle,bias_mle,"
         "mom_mean,se_mom,bias_mom,ci_mle_lower,ci_mle_upper,ci_mom_lower,"
         "ci_mom_upper,pc_mean,minus2logl_mean,replicates_used,replicates_failed\n";
  for (const auto& row : report.rows) {
    const StudySizeSummary* summary = nullptr;
    for (const auto& s : report.summaries) {
      if (s.sample_size == row.sample_size) {
        summary = &s;
        break;
      }
    }
    const bool restricted = row.model == StudyModel::Restricted;
    const double m2 = restricted && summary->restricted_minus2_loglik_mean
                          ? *summary->restricted_minus2_loglik_mean
                          : summary->minus2_loglik_mean;
    out << row.sample_size << ',' << (restricted ? "restricted" : "full") << ','
        << param_name(row.param_index) << ',' << format_double(row.true_value) << ','
        << format_double(row.mle.mean) << ',' << format_double(row.mle.se) << ','
        << format_double(row.mle.bias) << ',';
    if (row.mom) {
      out << format_double(row.mom->mean) << ',' << format_double(row.mom->se) << ','
          << format_double(row.mom->bias) << ',';
    } else {
      out << ",,,";
    }
    out << format_double(row.mle.ci.lower) << ',' << format_double(row.mle.ci.upper) << ',';
    if (row.mom) {
      out << format_double(row.mom->ci.lower) << ',' << format_double(row.mom->ci.upper) << ',';
    } else {
      out << ",,";
    }
    out << format_double(summary->pearson_corr_mean) << ',' << format_double(m2) << ','
        << summary->replicates_used << ',' << summary->replicates_failed << '\n';
  }
  return out.str();
}

}  // namespace pseudologit
