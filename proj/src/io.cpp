// SPDX-License-Identifier: Apache-2.0
#include "pspec/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace pspec {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool parse_number(const std::string& s, double& out) {
  try {
    std::size_t pos = 0;
    out = std::stod(s, &pos);
    return pos == s.size();
  } catch (...) {
    return false;
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(trim(item));
  return parts;
}

}  // namespace

TimeSeries read_series_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file: " + path.string());
  std::vector<double> vals;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty() && !first) {
      vals.push_back(std::numeric_limits<double>::quiet_NaN());
      continue;
    }
    if (t.empty()) {
      first = false;
      continue;
    }
    double x = 0.0;
    if (t == "NA" || t == "na" || t == "NaN" || t == "nan") {
      vals.push_back(std::numeric_limits<double>::quiet_NaN());
    } else if (parse_number(t, x)) {
      vals.push_back(x);
    } else if (first) {
      // header line
    } else {
      throw std::runtime_error("unparseable line in " + path.string() + ": " + t);
    }
    first = false;
  }
  TimeSeries ts;
  ts.values = Eigen::Map<Eigen::VectorXd>(vals.data(),
                                          static_cast<Eigen::Index>(vals.size()));
  return ts;
}

void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write file: " + tmp.string());
    out << content;
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string series_to_csv(const TimeSeries& series) {
  std::string out;
  for (Eigen::Index t = 0; t < series.size(); ++t) {
    if (std::isnan(series.values[t]))
      out += "NA";
    else
      out += format_double(series.values[t]);
    out += '\n';
  }
  return out;
}

std::string periodogram_to_csv(const Periodogram& pgram) {
  std::string out = "frequency,ordinate\n";
  for (Eigen::Index l = 0; l < pgram.size(); ++l)
    out += format_double(pgram.frequencies[l]) + "," +
           format_double(pgram.ordinates[l]) + "\n";
  return out;
}

std::string estimate_to_csv(const PsdEstimate& est) {
  std::string out = "frequency,median,lower,upper\n";
  for (Eigen::Index l = 0; l < est.frequencies.size(); ++l)
    out += format_double(est.frequencies[l]) + "," +
           format_double(est.median[l]) + "," + format_double(est.lower[l]) +
           "," + format_double(est.upper[l]) + "\n";
  return out;
}

std::string trace_to_csv(const Eigen::MatrixXd& param_trace) {
  std::string out = "phi,delta,tau,log_posterior\n";
  for (Eigen::Index i = 0; i < param_trace.rows(); ++i) {
    for (Eigen::Index j = 0; j < param_trace.cols(); ++j) {
      if (j) out += ',';
      out += format_double(param_trace(i, j));
    }
    out += '\n';
  }
  return out;
}

std::string benchmark_to_csv(const std::vector<BenchmarkRow>& rows) {
  std::string out =
      "model,n,scheme,d,median_iae,uniform_coverage,"
      "median_pointwise_coverage,median_runtime_seconds,replications\n";
  for (const auto& r : rows) {
    out += r.model + "," + std::to_string(r.n) + "," + to_string(r.scheme) +
           "," + std::to_string(r.d) + "," + format_double(r.median_iae) + "," +
           format_double(r.uniform_coverage) + "," +
           format_double(r.median_pointwise_coverage) + "," +
           format_double(r.median_runtime_seconds) + "," +
           std::to_string(r.replications) + "\n";
  }
  return out;
}

std::string knots_to_json(const KnotVector& kv) {
  nlohmann::json j = nlohmann::json::array();
  for (Eigen::Index i = 0; i < kv.xi.size(); ++i) j.push_back(kv.xi[i]);
  return j.dump();
}

KnotVector knots_from_json(const std::string& text, int degree) {
  const nlohmann::json j = nlohmann::json::parse(text);
  if (!j.is_array()) throw std::runtime_error("knot JSON must be an array");
  KnotVector kv;
  kv.degree = degree;
  kv.K = static_cast<int>(j.size()) - degree - 1;
  if (kv.K < degree + 1) throw std::runtime_error("knot JSON too short");
  kv.xi.resize(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) kv.xi[i] = j[i].get<double>();
  return kv;
}

std::map<std::string, std::string> read_config(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path.string());
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config line without '=': " + t);
    kv[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
  }
  return kv;
}

BenchmarkConfig parse_benchmark_config(
    const std::map<std::string, std::string>& kv) {
  BenchmarkConfig cfg;
  auto get = [&](const std::string& key) -> const std::string* {
    auto it = kv.find(key);
    return it == kv.end() ? nullptr : &it->second;
  };
  auto get_int = [&](const std::string& key, int& target) {
    if (const auto* s = get(key)) target = std::stoi(*s);
  };

  // models: semicolon-separated rho lists, e.g. "0.9; 0.9,-0.9,0.9,-0.9";
  // the token "noise" gives white noise.
  const std::string models_spec =
      get("models") ? *get("models") : "0.9; 0.9,-0.9,0.9,-0.9";
  for (const std::string& spec : split(models_spec, ';')) {
    ARModel m;
    if (spec != "noise") {
      const auto parts = split(spec, ',');
      m.rho.resize(static_cast<Eigen::Index>(parts.size()));
      for (std::size_t i = 0; i < parts.size(); ++i) m.rho[i] = std::stod(parts[i]);
    }
    cfg.models.push_back(m);
    cfg.model_names.push_back("ar" + std::to_string(m.order()));
  }

  const std::string lengths_spec =
      get("lengths") ? *get("lengths") : "128,256,512";
  cfg.lengths.clear();
  for (const std::string& s : split(lengths_spec, ','))
    cfg.lengths.push_back(std::stoi(s));

  get_int("replications", cfg.replications);

  if (const auto* s = get("schemes")) {
    cfg.schemes.clear();
    for (const std::string& name : split(*s, ',')) {
      if (name == "equidistant")
        cfg.schemes.push_back(KnotScheme::equidistant);
      else if (name == "qspaced")
        cfg.schemes.push_back(KnotScheme::qspaced);
      else
        throw std::runtime_error("unknown knot scheme: " + name);
    }
  }
  if (const auto* s = get("orders")) {
    cfg.penalty_orders.clear();
    for (const std::string& d : split(*s, ','))
      cfg.penalty_orders.push_back(std::stoi(d));
  }

  get_int("iterations", cfg.chain.iterations);
  get_int("burnin", cfg.chain.burnin);
  get_int("thin", cfg.chain.thin);
  get_int("pilot_iterations", cfg.chain.pilot_iterations);
  get_int("pilot_burnin", cfg.chain.pilot_burnin);
  get_int("pilot_thin", cfg.chain.pilot_thin);
  if (const auto* s = get("alpha")) cfg.alpha = std::stod(*s);
  if (const auto* s = get("seed")) cfg.base_seed = std::stoull(*s);
  if (const auto* s = get("epsilon")) cfg.prior.epsilon = std::stod(*s);
  return cfg;
}

}  // namespace pspec
