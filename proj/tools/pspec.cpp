// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: estimate a psd from a CSV series, simulate AR
// data, or run the benchmark grid.

#include <chrono>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "pspec/io.hpp"

namespace {

int cmd_estimate(const std::string& input, const std::string& out_dir,
                 const std::string& scheme_name, int K_opt, int d, int degree,
                 bool apply_sqrt, double alpha, pspec::ChainConfig chain,
                 pspec::PriorConfig prior, bool write_trace,
                 const std::string& knots_in) {
  const auto t0 = std::chrono::steady_clock::now();

  const pspec::TimeSeries raw = pspec::read_series_csv(input);
  const pspec::PreprocessedSeries data = pspec::preprocess(raw, apply_sqrt);
  const pspec::Periodogram pgram = pspec::periodogram(data);

  const int K = K_opt > 0 ? K_opt : pspec::choose_K(static_cast<int>(raw.size()), degree);
  if (d > degree) throw std::runtime_error("penalty order d must not exceed the degree");

  pspec::KnotVector kv;
  if (!knots_in.empty()) {
    std::ifstream in(knots_in);
    if (!in) throw std::runtime_error("cannot open knot file: " + knots_in);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    kv = pspec::knots_from_json(text, degree);
  } else if (scheme_name == "equidistant") {
    kv = pspec::equidistant_knots(K, degree);
  } else if (scheme_name == "qspaced") {
    kv = pspec::qspaced_knots(pgram, K, degree);
  } else {
    throw std::runtime_error("unknown knot scheme: " + scheme_name);
  }

  const pspec::PenaltyMatrix P =
      (scheme_name == "equidistant" && knots_in.empty())
          ? pspec::difference_penalty(kv.K, d, prior.epsilon)
          : pspec::derivative_penalty(kv, d, prior.epsilon);
  prior.diff_order = d;

  const pspec::PosteriorSamples samples =
      pspec::run_chain(data, kv, P, chain, prior);
  const pspec::PsdEstimate est = pspec::rescale_to_original(
      pspec::uniform_band(samples, alpha), samples.scale_factor);

  const double runtime =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::filesystem::create_directories(out_dir);
  const std::filesystem::path dir(out_dir);
  pspec::write_file_atomic(dir / "psd.csv", pspec::estimate_to_csv(est));
  if (write_trace)
    pspec::write_file_atomic(dir / "trace.csv",
                             pspec::trace_to_csv(samples.param_trace));

  nlohmann::json summary;
  summary["n"] = raw.size();
  summary["K"] = kv.K;
  summary["degree"] = degree;
  summary["knots"] = nlohmann::json::parse(pspec::knots_to_json(kv));
  summary["scheme"] = scheme_name;
  summary["d"] = d;
  summary["alpha"] = alpha;
  summary["zeta"] = est.zeta;
  summary["accept_rate"] = samples.accept_rate;
  summary["seed"] = chain.seed;
  summary["sqrt_transform"] = apply_sqrt;
  summary["original_mean"] = data.original_mean;
  summary["original_sd"] = data.original_sd;
  summary["iterations"] = chain.iterations;
  summary["burnin"] = chain.burnin;
  summary["thin"] = chain.thin;
  summary["pilot_iterations"] = chain.pilot_iterations;
  summary["pilot_burnin"] = chain.pilot_burnin;
  summary["pilot_thin"] = chain.pilot_thin;
  summary["retained_samples"] = samples.psd_samples.rows();
  summary["runtime_seconds"] = runtime;
  pspec::write_file_atomic(dir / "summary.json", summary.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayesian spectral density estimation with penalized B-splines"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Flat key = value configuration file");

  // estimate
  auto* est = app.add_subcommand("estimate", "Estimate a psd from a CSV series");
  std::string input, out_dir = ".", scheme = "equidistant", knots_in;
  int K_opt = 0, d = 1, degree = 3;
  bool apply_sqrt = false, write_trace = false;
  double alpha = 0.1;
  pspec::ChainConfig chain;
  pspec::PriorConfig prior;
  est->add_option("--input", input, "Input CSV, one observation per line")
      ->required();
  est->add_option("--out", out_dir, "Output directory");
  est->add_option("--scheme", scheme, "Knot scheme: equidistant | qspaced");
  est->add_option("--K", K_opt, "Number of B-spline densities (default min(n/4,40))");
  est->add_option("--d", d, "Penalty order (1 or 2)");
  est->add_option("--degree", degree, "B-spline degree");
  est->add_flag("--sqrt", apply_sqrt, "Square-root transform before imputation");
  est->add_flag("--trace", write_trace, "Also write the parameter trace CSV");
  est->add_option("--knots", knots_in, "Import a knot vector from a JSON file");
  est->add_option("--alpha", alpha, "Uniform band level (default 0.1)");
  est->add_option("--iterations", chain.iterations);
  est->add_option("--burnin", chain.burnin);
  est->add_option("--thin", chain.thin);
  est->add_option("--pilot-iterations", chain.pilot_iterations);
  est->add_option("--pilot-burnin", chain.pilot_burnin);
  est->add_option("--pilot-thin", chain.pilot_thin);
  est->add_option("--seed", chain.seed);
  est->add_option("--alpha-phi", prior.alpha_phi);
  est->add_option("--beta-phi", prior.beta_phi);
  est->add_option("--alpha-delta", prior.alpha_delta);
  est->add_option("--beta-delta", prior.beta_delta);
  est->add_option("--alpha-tau", prior.alpha_tau);
  est->add_option("--beta-tau", prior.beta_tau);
  est->add_option("--epsilon", prior.epsilon);

  // simulate
  auto* sim = app.add_subcommand("simulate", "Simulate an AR time series");
  std::string model_name = "ar", rho_spec, sim_out = "series.csv";
  int sim_n = 256;
  std::uint64_t sim_seed = 0;
  double sigma2 = 1.0;
  sim->add_option("--model", model_name, "Model family (ar)");
  sim->add_option("--rho", rho_spec, "Comma-separated AR coefficients");
  sim->add_option("--n", sim_n, "Series length");
  sim->add_option("--sigma2", sigma2, "Innovation variance");
  sim->add_option("--seed", sim_seed);
  sim->add_option("--out", sim_out, "Output CSV path");

  // bench
  auto* bench = app.add_subcommand("bench", "Run the benchmark grid");
  std::string bench_config, bench_out = "bench.csv";
  int jobs = static_cast<int>(std::thread::hardware_concurrency());
  bench->add_option("--config", bench_config, "Benchmark config file")->required();
  bench->add_option("--out", bench_out, "Output CSV path");
  bench->add_option("--jobs", jobs, "Parallel workers");

  CLI11_PARSE(app, argc, argv);

  try {
    if (est->parsed()) {
      return cmd_estimate(input, out_dir, scheme, K_opt, d, degree, apply_sqrt,
                          alpha, chain, prior, write_trace, knots_in);
    }
    if (sim->parsed()) {
      if (model_name != "ar") throw std::runtime_error("unknown model: " + model_name);
      pspec::ARModel model;
      model.sigma2 = sigma2;
      if (!rho_spec.empty()) {
        std::stringstream ss(rho_spec);
        std::vector<double> rho;
        std::string item;
        while (std::getline(ss, item, ',')) rho.push_back(std::stod(item));
        model.rho = Eigen::Map<Eigen::VectorXd>(
            rho.data(), static_cast<Eigen::Index>(rho.size()));
      }
      const pspec::TimeSeries series = pspec::simulate_ar(model, sim_n, sim_seed);
      pspec::write_file_atomic(sim_out, pspec::series_to_csv(series));
      return 0;
    }
    if (bench->parsed()) {
      const pspec::BenchmarkConfig cfg =
          pspec::parse_benchmark_config(pspec::read_config(bench_config));
      const auto rows = pspec::run_benchmark(cfg, jobs, &std::cerr);
      pspec::write_file_atomic(bench_out, pspec::benchmark_to_csv(rows));
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
