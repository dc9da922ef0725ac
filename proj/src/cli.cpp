#include "argl/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "argl/divisor_series.hpp"
#include "argl/errors.hpp"
#include "argl/imaginary_moments.hpp"
#include "argl/primes.hpp"
#include "argl/special_functions.hpp"
#include "argl/sweep_io.hpp"

namespace argl {

namespace {

using nlohmann::json;

const char* command_name(Command c) {
  switch (c) {
    case Command::constants: return "constants";
    case Command::sweep: return "sweep";
    case Command::psi: return "psi";
    case Command::moments: return "moments";
    case Command::model: return "model";
    case Command::predict: return "predict";
    case Command::compare: return "compare";
  }
  return "?";
}

const char* moment_name(MomentKind k) {
  switch (k) {
    case MomentKind::main_term: return "main-term";
    case MomentKind::imaginary: return "imaginary";
    case MomentKind::empirical: return "empirical";
  }
  return "?";
}

// JSON has no NaN/inf; those become null.
json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json pair(std::complex<double> z) { return json::array({number(z.real()), number(z.imag())}); }

json config_object(const RunConfig& c) {
  json j;
  j["command"] = command_name(c.command);
  j["q"] = c.q ? json(*c.q) : json(nullptr);
  j["tau"] = c.tau_grid;
  j["s"] = c.s_grid;
  j["tol"] = c.tol;
  j["moment"] = moment_name(c.moment_kind);
  j["z1"] = pair(c.z1);
  j["z2"] = pair(c.z2);
  j["sigma"] = c.sigma;
  j["primes"] = c.primes;
  j["exact_primes"] = c.exact_primes;
  j["samples"] = c.samples;
  j["seed"] = c.seed;
  j["tail_mode"] = c.tail_mode == TailMode::gaussian_tail ? "gaussian_tail" : "truncate";
  j["threads"] = c.threads;
  j["fft"] = c.use_fft;
  j["input"] = c.input_path;
  j["format"] = c.format == OutputFormat::csv ? "csv" : "json";
  return j;
}

json stamp(const RunConfig& c) {
  json j;
  j["version"] = ARGL_VERSION;
  j["config"] = config_object(c);
  return j;
}

std::vector<std::string> csv_comments(const RunConfig& c) {
  return {std::string("arglab ") + ARGL_VERSION, "config " + config_object(c).dump()};
}

std::complex<double> parse_complex(const std::string& text) {
  const auto v = parse_decimal_list(text);
  if (v.empty() || v.size() > 2) throw DomainError("complex values are given as re or re,im");
  return {v[0], v.size() == 2 ? v[1] : 0.0};
}

ModelConfig model_config(const RunConfig& c) {
  ModelConfig m;
  m.prime_cutoff = c.primes;
  m.samples = c.samples;
  m.seed = c.seed;
  m.tail_mode = c.tail_mode;
  m.exact_cutoff = c.exact_primes;
  m.threads = c.threads;
  return m;
}

std::string cache_directory(const RunConfig& c) {
  if (!c.cache_dir.empty()) return c.cache_dir;
  if (const char* env = std::getenv("ARGL_CACHE_DIR")) return env;
  return {};
}

SweepResult obtain_sweep(const RunConfig& c) {
  if (!c.input_path.empty()) {
    std::ifstream in(c.input_path);
    if (!in) throw DomainError("cannot open sweep file " + c.input_path);
    return read_sweep_csv(in);
  }
  SweepOptions opts;
  opts.threads = c.threads;
  opts.use_fft = c.use_fft;
  const auto dir = cache_directory(c);
  if (dir.empty()) return sweep(*c.q, opts);
  namespace fs = std::filesystem;
  const fs::path path = fs::path(dir) / ("sweep_q" + std::to_string(*c.q) + (c.use_fft ? "_fft" : "") + ".csv");
  if (fs::exists(path)) {
    std::ifstream in(path);
    return read_sweep_csv(in);
  }
  auto result = sweep(*c.q, opts);
  fs::create_directories(dir);
  std::ofstream cache(path);
  write_sweep_csv(cache, result, csv_comments(c));
  return result;
}

void write_sweep(std::ostream& out, const RunConfig& c) {
  const auto result = obtain_sweep(c);
  if (c.format == OutputFormat::csv) {
    write_sweep_csv(out, result, csv_comments(c));
    return;
  }
  json j = stamp(c);
  j["q"] = result.q;
  j["max_arg"] = result.max_arg;
  j["min_arg"] = result.min_arg;
  json rows = json::array();
  for (const auto& r : result.records) {
    rows.push_back({{"j", r.j.value()},
                    {"re_L", r.l_value.real()},
                    {"im_L", r.l_value.imag()},
                    {"arg", r.arg},
                    {"branch_residual", r.branch_residual},
                    {"branch_verified", r.branch_verified}});
  }
  j["records"] = rows;
  out << j.dump(2) << '\n';
}

void write_psi(std::ostream& out, const RunConfig& c) {
  const auto result = obtain_sweep(c);
  const EmpiricalDistribution dist(result);
  if (c.format == OutputFormat::csv) {
    for (const auto& line : csv_comments(c)) out << "# " << line << '\n';
    out << "tau,psi_q,phi_q\n";
    for (const double tau : c.tau_grid) {
      out << format_decimal(tau) << ',' << format_decimal(psi_q(dist, tau)) << ','
          << format_decimal(phi_q(dist, tau)) << '\n';
    }
    return;
  }
  json j = stamp(c);
  j["q"] = dist.modulus();
  json rows = json::array();
  for (const double tau : c.tau_grid) rows.push_back({{"tau", tau}, {"psi_q", psi_q(dist, tau)}, {"phi_q", phi_q(dist, tau)}});
  j["rows"] = rows;
  out << j.dump(2) << '\n';
}

void write_moments(std::ostream& out, const RunConfig& c) {
  json j = stamp(c);
  switch (c.moment_kind) {
    case MomentKind::main_term: {
      const auto r = global_divisor_sum(ComplexOrder(c.z1), ComplexOrder(c.z2), c.sigma, c.tol);
      j["z1"] = pair(c.z1);
      j["z2"] = pair(c.z2);
      j["sigma"] = c.sigma;
      j["value"] = pair(r.value);
      j["error_bound"] = r.error_bound;
      j["prime_cutoff"] = r.prime_cutoff;
      break;
    }
    case MomentKind::imaginary: {
      const double s = c.s_grid.front();
      const auto r = exact_imaginary_moment(s, c.tol, {c.threads});
      j["s"] = s;
      j["log_exact"] = r.log_value;
      j["tail_bound"] = r.tail_bound;
      j["prime_cutoff"] = r.cutoff;
      if (s >= 3.0) {
        const double asym = asymptotic_imaginary_moment(s);
        const double ls = std::log(s);
        j["log_asymptotic"] = asym;
        j["residual_normalized"] = std::abs(r.log_value - asym) * ls * ls / s;
      } else {
        j["log_asymptotic"] = nullptr;
        j["residual_normalized"] = nullptr;
      }
      break;
    }
    case MomentKind::empirical: {
      const auto result = obtain_sweep(c);
      const auto m = empirical_moment(result, c.z1, c.z2);
      j["q"] = result.q;
      j["z1"] = pair(c.z1);
      j["z2"] = pair(c.z2);
      j["value"] = pair(m.value);
      j["in_regime"] = m.in_regime;
      j["regime_radius"] = m.regime_radius;
      break;
    }
  }
  out << j.dump(2) << '\n';
}

void write_tail_rows(std::ostream& out, const RunConfig& c, const std::vector<CompareRow>& rows) {
  if (c.format == OutputFormat::csv) {
    for (const auto& line : csv_comments(c)) out << "# " << line << '\n';
    out << "tau,psi_q,psi_model,ci,psi_thm1\n";
    for (const auto& r : rows) {
      out << format_decimal(r.tau) << ',' << format_decimal(r.psi_q) << ',' << format_decimal(r.psi_model) << ','
          << format_decimal(r.ci) << ',' << format_decimal(r.psi_thm1) << '\n';
    }
    return;
  }
  json j = stamp(c);
  json arr = json::array();
  for (const auto& r : rows) {
    arr.push_back({{"tau", r.tau},
                   {"psi_q", number(r.psi_q)},
                   {"psi_model", r.psi_model},
                   {"ci", r.ci},
                   {"psi_thm1", number(r.psi_thm1)},
                   {"log_laplace_at_saddle", number(r.log_laplace_at_saddle)}});
  }
  j["rows"] = arr;
  out << j.dump(2) << '\n';
}

void write_model(std::ostream& out, const RunConfig& c) {
  const auto est = model_psi(model_config(c), c.tau_grid);
  const double floor = tau_min();
  std::vector<CompareRow> rows;
  for (const auto& e : est) {
    CompareRow r{e.tau, std::numeric_limits<double>::quiet_NaN(), e.estimate, e.ci_halfwidth};
    if (e.tau >= floor) r.psi_thm1 = theorem1_prediction(e.tau);
    rows.push_back(r);
  }
  write_tail_rows(out, c, rows);
}

void write_compare(std::ostream& out, const RunConfig& c) {
  write_tail_rows(out, c, compare_report(obtain_sweep(c), model_config(c), c.tau_grid));
}

void write_predict(std::ostream& out, const RunConfig& c) {
  json j = stamp(c);
  j["tau_min"] = tau_min();
  json arr = json::array();
  for (const double tau : c.tau_grid) {
    const auto sp = solve_saddle(tau);
    arr.push_back({{"tau", tau},
                   {"s", number(sp.s)},
                   {"log_s", sp.u},
                   {"residual", sp.residual},
                   {"exponent", number(theorem1_exponent(tau))},
                   {"psi_thm1", theorem1_prediction(tau)}});
  }
  j["predictions"] = arr;
  out << j.dump(2) << '\n';
}

void write_constants(std::ostream& out, const RunConfig& c) {
  const auto& k = constants();
  json j = stamp(c);
  j["c1"] = k.c1;
  j["c2"] = k.c2;
  j["gamma"] = k.gamma_euler;
  j["tol"] = k.tolerance_achieved;
  out << j.dump(2) << '\n';
}

void dispatch(std::ostream& out, const RunConfig& c) {
  switch (c.command) {
    case Command::constants: write_constants(out, c); break;
    case Command::sweep: write_sweep(out, c); break;
    case Command::psi: write_psi(out, c); break;
    case Command::moments: write_moments(out, c); break;
    case Command::model: write_model(out, c); break;
    case Command::predict: write_predict(out, c); break;
    case Command::compare: write_compare(out, c); break;
  }
}

int report(std::ostream& err, int code, const char* kind, const std::string& message) {
  err << json{{"error", kind}, {"message", message}, {"exit_code", code}}.dump() << '\n';
  return code;
}

}  // namespace

std::string config_json(const RunConfig& config) { return config_object(config).dump(); }

void validate(const RunConfig& c) {
  const bool needs_q = c.command == Command::sweep || c.command == Command::compare ||
                       (c.command == Command::psi && c.input_path.empty()) ||
                       (c.command == Command::moments && c.moment_kind == MomentKind::empirical && c.input_path.empty());
  if (needs_q) {
    if (!c.q) throw DomainError(std::string(command_name(c.command)) + " requires --q");
    if (*c.q < 3 || !is_prime(*c.q)) throw DomainError("--q must be an odd prime");
  }
  const bool needs_tau = c.command == Command::psi || c.command == Command::model || c.command == Command::predict ||
                         c.command == Command::compare;
  if (needs_tau && c.tau_grid.empty()) throw DomainError("--tau grid must be non-empty");
  if (c.command == Command::moments && c.moment_kind == MomentKind::imaginary && c.s_grid.size() != 1) {
    throw DomainError("moments --imaginary requires exactly one --s");
  }
  if (c.command == Command::model || c.command == Command::compare) validate(model_config(c));
  if (c.threads == 0) throw DomainError("--threads must be >= 1");
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    validate(config);
    if (config.output_path.empty()) {
      dispatch(out, config);
    } else {
      std::ostringstream buffer;
      dispatch(buffer, config);
      std::ofstream file(config.output_path, std::ios::binary);
      if (!file) throw DomainError("cannot write " + config.output_path);
      file << buffer.str();
    }
    return kExitOk;
  } catch (const AccuracyError& e) {
    return report(err, kExitAccuracy, "accuracy", e.what());
  } catch (const ResourceError& e) {
    return report(err, kExitResource, "resource", e.what());
  } catch (const DomainError& e) {
    return report(err, kExitUsage, "usage", e.what());
  } catch (const OverflowError& e) {
    return report(err, kExitUsage, "usage", e.what());
  } catch (const std::exception& e) {
    return report(err, kExitInternal, "internal", e.what());
  }
}

std::optional<RunConfig> parse_command_line(int argc, const char* const* argv, std::ostream& out) {
  RunConfig c;
  c.threads = std::max(1u, std::thread::hardware_concurrency());
  CLI::App app{"Numerical laboratory for the distribution of arg L(1, chi) modulo a prime", "arglab"};
  app.require_subcommand(1);

  std::uint64_t q = 0;
  std::string tau_text, z1_text = "0", z2_text = "0", format = "";
  std::vector<std::string> tau_range;
  double s_value = 0.0;
  std::string tail = "gaussian_tail";

  app.add_option("--threads", c.threads, "Worker threads");
  app.add_option("--out", c.output_path, "Output file (default: standard output)");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--cache-dir", c.cache_dir, "Sweep cache directory (default: $ARGL_CACHE_DIR)");
  app.add_option("--tol", c.tol, "Accuracy target");

  auto add_q = [&](CLI::App* sub) { sub->add_option("--q", q, "Prime modulus"); };
  auto add_tau = [&](CLI::App* sub) {
    sub->add_option("--tau", tau_text, "Comma-separated tau grid");
    sub->add_option("--tau-range", tau_range, "Linear tau grid: start,stop,count")->delimiter(',')->expected(3);
  };
  auto add_model = [&](CLI::App* sub) {
    sub->add_option("--primes", c.primes, "Prime cutoff P of the random Euler product");
    sub->add_option("--exact-primes", c.exact_primes, "Primes sampled individually (rest aggregated)");
    sub->add_option("--samples", c.samples, "Monte Carlo samples");
    sub->add_option("--seed", c.seed, "64-bit seed");
    sub->add_option("--tail-mode", tail, "gaussian_tail or truncate")
        ->check(CLI::IsMember({"gaussian_tail", "truncate"}));
  };

  auto* constants_cmd = app.add_subcommand("constants", "Print C1, C2 and gamma as JSON");
  auto* sweep_cmd = app.add_subcommand("sweep", "L(1, chi) and its argument for every character mod q");
  add_q(sweep_cmd);
  sweep_cmd->add_flag("--fft", c.use_fft, "Evaluate all characters by one DFT");
  auto* psi_cmd = app.add_subcommand("psi", "Empirical Psi_q and Phi_q on a tau grid");
  add_q(psi_cmd);
  add_tau(psi_cmd);
  psi_cmd->add_option("--in", c.input_path, "Read a sweep CSV instead of computing");
  psi_cmd->add_flag("--fft", c.use_fft, "Use the DFT sweep");
  auto* moments_cmd = app.add_subcommand("moments", "Divisor-series, imaginary and empirical moments");
  bool main_term = false, imaginary = false, empirical = false;
  moments_cmd->add_flag("--main-term", main_term, "sum d_z1(n) d_z2(n) / n^(2 sigma)");
  moments_cmd->add_flag("--imaginary", imaginary, "log prod_p E_p(s) against its asymptotic");
  moments_cmd->add_flag("--empirical", empirical, "Empirical moment over characters mod q");
  moments_cmd->add_option("--z1", z1_text, "re or re,im");
  moments_cmd->add_option("--z2", z2_text, "re or re,im");
  moments_cmd->add_option("--sigma", c.sigma, "Exponent sigma > 1/2");
  moments_cmd->add_option("--s", s_value, "Imaginary-moment parameter s");
  add_q(moments_cmd);
  moments_cmd->add_option("--in", c.input_path, "Read a sweep CSV instead of computing");
  auto* model_cmd = app.add_subcommand("model", "Monte Carlo tail of the random Euler product");
  add_model(model_cmd);
  add_tau(model_cmd);
  auto* predict_cmd = app.add_subcommand("predict", "Saddle point and tail-formula main term");
  add_tau(predict_cmd);
  auto* compare_cmd = app.add_subcommand("compare", "Empirical vs model vs tail formula");
  add_q(compare_cmd);
  add_tau(compare_cmd);
  add_model(compare_cmd);
  compare_cmd->add_flag("--fft", c.use_fft, "Use the DFT sweep");
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return std::nullopt;
    }
    throw DomainError(e.what());
  }

  if (constants_cmd->parsed()) c.command = Command::constants;
  if (sweep_cmd->parsed()) c.command = Command::sweep;
  if (psi_cmd->parsed()) c.command = Command::psi;
  if (moments_cmd->parsed()) c.command = Command::moments;
  if (model_cmd->parsed()) c.command = Command::model;
  if (predict_cmd->parsed()) c.command = Command::predict;
  if (compare_cmd->parsed()) c.command = Command::compare;

  if (q != 0) c.q = q;
  c.tau_grid = parse_decimal_list(tau_text);
  if (!tau_range.empty()) {
    const auto start = parse_decimal_list(tau_range[0]).at(0);
    const auto stop = parse_decimal_list(tau_range[1]).at(0);
    const auto count = static_cast<int>(parse_decimal_list(tau_range[2]).at(0));
    if (count < 2) throw DomainError("--tau-range needs count >= 2");
    for (int i = 0; i < count; ++i) c.tau_grid.push_back(start + (stop - start) * i / (count - 1));
  }
  c.z1 = parse_complex(z1_text);
  c.z2 = parse_complex(z2_text);
  if (moments_cmd->count("--s") > 0) c.s_grid = {s_value};
  c.tail_mode = tail == "truncate" ? TailMode::truncate : TailMode::gaussian_tail;
  if (c.command == Command::moments) {
    if (main_term + imaginary + empirical != 1) {
      throw DomainError("moments needs exactly one of --main-term, --imaginary, --empirical");
    }
    c.moment_kind = main_term ? MomentKind::main_term : imaginary ? MomentKind::imaginary : MomentKind::empirical;
  }
  if (format.empty()) {
    const bool json_default = c.command == Command::constants || c.command == Command::moments ||
                              c.command == Command::predict;
    c.format = json_default ? OutputFormat::json : OutputFormat::csv;
  } else {
    c.format = format == "json" ? OutputFormat::json : OutputFormat::csv;
  }
  return c;
}

int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::optional<RunConfig> config;
  try {
    config = parse_command_line(argc, argv, out);
  } catch (const std::exception& e) {
    return report(err, kExitUsage, "usage", e.what());
  }
  if (!config) return kExitOk;
  return run(*config, out, err);
}

}  // namespace argl
