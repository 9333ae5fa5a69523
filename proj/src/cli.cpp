#include "fracdiff/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <sstream>

#include "fracdiff/bench.hpp"
#include "fracdiff/config.hpp"
#include "fracdiff/continuum.hpp"
#include "fracdiff/errors.hpp"
#include "fracdiff/format.hpp"
#include "fracdiff/marcher.hpp"

namespace fracdiff {

namespace {

namespace fs = std::filesystem;

void write_snapshot(const fs::path& dir, std::int64_t step, const FieldGrid& u) {
  const fs::path file = dir / ("u_k" + std::to_string(step) + ".csv");
  std::ofstream os(file);
  if (!os) throw std::runtime_error("cannot write " + file.string());
  write_csv(u, os);
}

int cmd_run(const std::string& config_path) {
  const SimConfig cfg = parse_config_file(config_path);
  const RunResult result = run(cfg);
  const fs::path dir(cfg.out_dir);
  fs::create_directories(dir);
  for (const auto& [step, field] : result.trajectory.snapshots)
    write_snapshot(dir, step, field);
  write_snapshot(dir, cfg.steps, result.trajectory.final);
  std::cout << "steps=" << cfg.steps << " wall_s=" << fmt_real(result.wall_seconds)
            << " checksum=" << checksum_hex(result.trajectory.final) << '\n';
  return 0;
}

int cmd_weights(double gamma, std::int64_t n) {
  const PsiTable table = psi_table(gamma, n);
  std::cout << "m,psi\n";
  for (std::size_t m = 0; m < table.size(); ++m)
    std::cout << m << ',' << fmt_real(table[m]) << '\n';
  return 0;
}

int cmd_psi_fit(double gamma, int num_order, int den_order) {
  const PsiTable table = psi_table(gamma, num_order + den_order);
  const RationalFit fit = fit_rational(gamma, num_order, den_order, table);
  std::cout << "kind,index,value\n";
  for (std::size_t i = 0; i < fit.num.size(); ++i)
    std::cout << "p," << i << ',' << fmt_real(fit.num[i]) << '\n';
  for (std::size_t i = 0; i < fit.den.size(); ++i)
    std::cout << "q," << i << ',' << fmt_real(fit.den[i]) << '\n';
  for (int m = 0; m <= num_order + den_order; ++m)
    std::cout << "residual," << m << ','
              << fmt_real(fit.eval(m) - table[static_cast<std::size_t>(m)]) << '\n';
  return 0;
}

int cmd_psi_eval(const std::string& method, double gamma, double r_max, double r_step,
                 int num_order, int den_order) {
  if (!(r_step > 0.0)) throw ValidationError("--r-step must be positive");
  if (!(r_max >= 0.0)) throw ValidationError("--r-max must be nonnegative");
  const auto n = static_cast<std::int64_t>(std::ceil(r_max)) + 1;
  std::cout << "r,psi\n";
  if (method == "linear") {
    const PsiTable table = psi_table(gamma, n);
    for (double r = 0.0; r <= r_max + 1e-12; r += r_step)
      std::cout << fmt_real(r) << ',' << fmt_real(psi_linear(gamma, r, table)) << '\n';
  } else if (method == "gamma") {
    for (double r = 0.0; r <= r_max + 1e-12; r += r_step)
      std::cout << fmt_real(r) << ',' << fmt_real(psi_gamma_real(gamma, r)) << '\n';
  } else if (method == "rational") {
    const PsiTable table = psi_table(gamma, num_order + den_order);
    const RationalFit fit = fit_rational(gamma, num_order, den_order, table);
    for (double r = 0.0; r <= r_max + 1e-12; r += r_step)
      std::cout << fmt_real(r) << ',' << fmt_real(fit.eval(r)) << '\n';
  } else {
    throw ValidationError("--method must be linear, gamma, or rational");
  }
  return 0;
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

int cmd_memory_trace(const std::string& config_path) {
  const SimConfig cfg = parse_config_file(config_path);
  std::cout << "k,nodes,sum_weights,weights_json\n";
  run(cfg, [](std::int64_t k, const HistoryStore& store) {
    const auto weights = store.stored_weights();
    std::int64_t sum = 0;
    std::map<std::int64_t, std::int64_t> histogram;
    for (const auto& w : weights) {
      sum += w.multiplier;
      ++histogram[w.multiplier];
    }
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [weight, count] : histogram) j[std::to_string(weight)] = count;
    std::cout << k << ',' << weights.size() << ',' << sum << ',' << csv_quote(j.dump())
              << '\n';
  });
  return 0;
}

std::vector<MemoryStrategy> parse_sweep_specs(const std::vector<std::string>& specs) {
  std::vector<MemoryStrategy> out;
  for (const auto& spec : specs) {
    const auto colon = spec.find(':');
    const std::string name = spec.substr(0, colon);
    std::vector<double> values;
    if (colon != std::string::npos) {
      std::stringstream ss(spec.substr(colon + 1));
      std::string item;
      while (std::getline(ss, item, ',')) {
        try {
          values.push_back(std::stod(item));
        } catch (const std::exception&) {
          throw ValidationError("--sweep value `" + item + "` is not a number");
        }
      }
    }
    if (name == "full") {
      if (!values.empty()) throw ValidationError("--sweep full takes no parameters");
      out.push_back(Full{});
      continue;
    }
    if (values.empty())
      throw ValidationError("--sweep " + name + " needs parameter values, e.g. " + name +
                            ":50,100");
    auto integral = [&](double v) {
      if (v != std::floor(v))
        throw ValidationError("--sweep " + name + " takes integer parameters, got " +
                              fmt_real(v));
      return static_cast<std::int64_t>(v);
    };
    for (double v : values) {
      if (name == "short") out.push_back(Short{v});
      else if (name == "adaptive") out.push_back(AdaptiveArithmetic{integral(v)});
      else if (name == "powerlaw") out.push_back(PowerLaw{integral(v)});
      else if (name == "smart") out.push_back(Smart{v});
      else throw ValidationError("--sweep strategy `" + name + "` is unknown");
    }
  }
  return out;
}

int cmd_bench(const std::string& config_path, const std::vector<std::string>& sweep_specs,
              const std::string& gammas_csv, int jobs, int repeat, bool plot_data) {
  const SimConfig cfg = parse_config_file(config_path);
  std::vector<MemoryStrategy> strategies = parse_sweep_specs(sweep_specs);
  if (strategies.empty()) strategies.push_back(cfg.strategy);
  std::vector<double> gammas;
  if (!gammas_csv.empty()) {
    std::stringstream ss(gammas_csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        gammas.push_back(std::stod(item));
      } catch (const std::exception&) {
        throw ValidationError("--gammas value `" + item + "` is not a number");
      }
    }
  }

  const auto records = sweep(cfg, strategies, gammas, SweepOptions{jobs, repeat});

  const fs::path dir(cfg.out_dir);
  fs::create_directories(dir);
  const fs::path csv = dir / "bench.csv";
  {
    std::ofstream os(csv);
    if (!os) throw std::runtime_error("cannot write " + csv.string());
    write_bench_csv(records, os);
  }
  if (plot_data) {
    std::map<std::string, std::vector<const BenchRecord*>> by_tag;
    for (const auto& r : records) by_tag[r.strategy].push_back(&r);
    for (const auto& [tag, rows] : by_tag) {
      const fs::path plot = dir / ("plot_" + tag + ".csv");
      std::ofstream os(plot);
      if (!os) throw std::runtime_error("cannot write " + plot.string());
      os << "param,gamma,wall_time_s,rel_error_pct\n";
      for (const auto* r : rows)
        os << fmt_real(r->param) << ',' << fmt_real(r->gamma) << ','
           << fmt_real(r->wall_time_s) << ',' << fmt_real(r->rel_error_pct) << '\n';
    }
  }
  std::cout << "wrote " << csv.string() << " (" << records.size() << " records)\n";
  return 0;
}

}  // namespace

int dispatch(const std::vector<std::string>& args) {
  CLI::App app{"Grunwald-Letnikov fractional diffusion solver and memory-strategy bench"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run_cmd = app.add_subcommand("run", "march a simulation from a config file");
  run_cmd->add_option("config", config_path, "key=value config file")->required();

  std::string bench_config;
  std::vector<std::string> sweep_specs;
  std::string gammas_csv;
  int jobs = 1;
  int repeat = 1;
  bool plot_data = false;
  auto* bench_cmd = app.add_subcommand("bench", "error/time/memory sweep across strategies");
  bench_cmd->add_option("config", bench_config, "base config file")->required();
  bench_cmd->add_option("--sweep", sweep_specs,
                        "strategy cells, e.g. short:50,100 adaptive:5,10 full");
  bench_cmd->add_option("--gammas", gammas_csv, "comma-separated gamma values");
  bench_cmd->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--repeat", repeat, "timing repeats per cell")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_flag("--plot-data", plot_data, "also write per-strategy series");

  double w_gamma = 0.0;
  std::int64_t w_n = 0;
  auto* weights_cmd = app.add_subcommand("weights", "dump the psi table as CSV");
  weights_cmd->add_option("--gamma", w_gamma, "fractional order in (0, 2]")->required();
  weights_cmd->add_option("--n", w_n, "largest m")->required();

  double f_gamma = 0.0;
  int f_num = 0;
  int f_den = 1;
  auto* fit_cmd = app.add_subcommand("psi-fit", "fit the rational extension of psi");
  fit_cmd->add_option("--gamma", f_gamma, "fractional order in (0, 2], != 1")->required();
  fit_cmd->add_option("--num-order", f_num, "numerator order (alpha)");
  fit_cmd->add_option("--den-order", f_den, "denominator order (beta > alpha)");

  std::string e_method;
  double e_gamma = 0.0;
  double e_rmax = 10.0;
  double e_rstep = 0.25;
  int e_num = 2;
  int e_den = 3;
  auto* eval_cmd = app.add_subcommand("psi-eval", "tabulate a continuous psi extension");
  eval_cmd->add_option("--method", e_method, "linear, gamma, or rational")->required();
  eval_cmd->add_option("--gamma", e_gamma, "fractional order in (0, 2]")->required();
  eval_cmd->add_option("--r-max", e_rmax, "largest lag");
  eval_cmd->add_option("--r-step", e_rstep, "lag step");
  eval_cmd->add_option("--num-order", e_num, "rational numerator order");
  eval_cmd->add_option("--den-order", e_den, "rational denominator order");

  std::string trace_config;
  auto* trace_cmd = app.add_subcommand("memory-trace",
                                       "per-step history store trace as CSV");
  trace_cmd->add_option("config", trace_config, "key=value config file")->required();

  std::vector<std::string> argv{"fracdiff"};
  argv.insert(argv.end(), args.begin(), args.end());
  std::vector<const char*> cargv;
  cargv.reserve(argv.size());
  for (const auto& a : argv) cargv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*run_cmd) return cmd_run(config_path);
    if (*bench_cmd)
      return cmd_bench(bench_config, sweep_specs, gammas_csv, jobs, repeat, plot_data);
    if (*weights_cmd) return cmd_weights(w_gamma, w_n);
    if (*fit_cmd) return cmd_psi_fit(f_gamma, f_num, f_den);
    if (*eval_cmd) return cmd_psi_eval(e_method, e_gamma, e_rmax, e_rstep, e_num, e_den);
    if (*trace_cmd) return cmd_memory_trace(trace_config);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}

}  // namespace fracdiff
