// corrsense_main.cpp - command-line front end: matrix / qfi / sweep / verify.
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "corrsense/dynamics.hpp"
#include "corrsense/errors.hpp"
#include "corrsense/io.hpp"
#include "corrsense/mc.hpp"
#include "corrsense/noise_model.hpp"
#include "corrsense/pulse_filter.hpp"
#include "corrsense/qfi.hpp"
#include "corrsense/scaling.hpp"
#include "corrsense/verify.hpp"

namespace {

using corrsense::PulseSequence;
using nlohmann::json;
namespace io = corrsense::io;

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

PulseSequence parse_pulses(const std::string& text) {
  if (text == "fid") return PulseSequence::fid();
  if (text == "hahn") return PulseSequence::hahn();
  if (text.rfind("cpmg", 0) == 0) {
    const int k = std::stoi(text.substr(4));
    return PulseSequence::cpmg(k);
  }
  std::vector<double> thetas;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t next = text.find(',', pos);
    if (next == std::string::npos) next = text.size();
    thetas.push_back(std::stod(text.substr(pos, next - pos)));
    pos = next + 1;
  }
  PulseSequence seq{std::move(thetas)};
  seq.validate();
  return seq;
}

// Pure amplitudes from a state spec: ghz | plus-product | file:PATH.
Eigen::VectorXcd resolve_state(const std::string& spec, int* n_qubits) {
  namespace dyn = corrsense::dynamics;
  if (spec == "ghz") {
    if (*n_qubits <= 0) throw std::invalid_argument("--n is required for ghz");
    return dyn::ghz_amplitudes(*n_qubits);
  }
  if (spec == "plus-product") {
    if (*n_qubits <= 0) {
      throw std::invalid_argument("--n is required for plus-product");
    }
    return dyn::plus_product_amplitudes(*n_qubits);
  }
  if (spec.rfind("file:", 0) == 0) {
    const std::string path = spec.substr(5);
    std::ifstream is(path);
    if (!is) throw std::invalid_argument("cannot open state file: " + path);
    const auto state = dyn::read_state(is);
    if (*n_qubits > 0 && *n_qubits != state.n_qubits) {
      throw std::invalid_argument("--n disagrees with the state file");
    }
    *n_qubits = state.n_qubits;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(state.matrix);
    long top = 0;
    es.eigenvalues().maxCoeff(&top);
    if (1.0 - es.eigenvalues()(top) > 1e-8) {
      throw std::invalid_argument("state file must contain a pure state");
    }
    return es.eigenvectors().col(top);
  }
  throw std::invalid_argument("unknown state: " + spec +
                              " (expected ghz, plus-product, or file:PATH)");
}

void emit(const std::string& key, double v) {
  std::cout << key << " " << io::fmt_human(v) << "\n";
}

struct MatrixArgs {
  int n = 0;
  double alpha = 1.0, xi = 1.0, gamma = 1.0, diag_scale = 2.0;
  std::string out;
};

int run_matrix(const MatrixArgs& a) {
  const double t0 = now_seconds();
  corrsense::noise::PowerLawSpatialModel model;
  model.n_sensors = a.n;
  model.alpha = a.alpha;
  model.xi = a.xi;
  model.diag_scale = a.diag_scale;
  const auto mat = corrsense::noise::build_dephasing_matrix(model, a.gamma);
  const double full = mat.entries.sum();
  const double diag = mat.entries.trace();
  std::cout << "n " << a.n << "  alpha " << io::fmt_human(a.alpha) << "  xi "
            << io::fmt_human(a.xi) << "  gamma " << io::fmt_human(a.gamma)
            << "  diag_scale " << io::fmt_human(a.diag_scale) << "\n";
  emit("min_eigenvalue", corrsense::noise::min_eigenvalue(mat.entries));
  emit("max_eigenvalue", corrsense::noise::max_eigenvalue(mat.entries));
  emit("full_sum", full);
  emit("diag_sum", diag);
  emit("advantage_ratio", full / diag);

  const std::string out_dir = io::resolve_out_dir(a.out);
  if (!out_dir.empty()) {
    io::write_matrix_csv(out_dir + "/matrix.csv", mat.entries);
    json params{{"n", a.n},         {"alpha", a.alpha},
                {"xi", a.xi},       {"gamma", a.gamma},
                {"diag_scale", a.diag_scale}};
    io::write_manifest(out_dir, "matrix", params, 0, {"matrix.csv"},
                       now_seconds() - t0);
  }
  return 0;
}

struct QfiArgs {
  std::string state = "ghz";
  int n = 0;
  double alpha = 1.0, xi = 1.0, gamma = 1.0, diag_scale = 2.0;
  double p = 0.0, time = -1.0;
  std::string pulses = "hahn";
  std::string out;
};

int run_qfi(const QfiArgs& a) {
  namespace dyn = corrsense::dynamics;
  namespace qfi = corrsense::qfi;
  namespace filter = corrsense::filter;
  const double t0 = now_seconds();

  int n = a.n;
  const Eigen::VectorXcd psi = resolve_state(a.state, &n);
  corrsense::noise::PowerLawSpatialModel model;
  model.n_sensors = n;
  model.alpha = a.alpha;
  model.xi = a.xi;
  model.diag_scale = a.diag_scale;
  const auto mat = corrsense::noise::build_dephasing_matrix(model, a.gamma);

  json result{{"n", n}, {"alpha", a.alpha}, {"xi", a.xi}, {"gamma", a.gamma}};
  std::cout << "n " << n << "  alpha " << io::fmt_human(a.alpha) << "  xi "
            << io::fmt_human(a.xi) << "  gamma " << io::fmt_human(a.gamma)
            << "  p " << io::fmt_human(a.p) << "\n";

  if (a.p == 0.0) {
    const double rate = qfi::fq_short_time(psi, mat, a.xi);
    const double sep = qfi::optimal_separable_rate(mat, a.xi);
    const double ent = qfi::optimal_entangled_rate(mat, a.xi);
    emit("state_rate", rate);
    emit("separable_rate", sep);
    emit("entangled_rate", ent);
    emit("advantage_ratio", ent / sep);
    result["state_rate"] = rate;
    result["separable_rate"] = sep;
    result["entangled_rate"] = ent;
    result["advantage_ratio"] = ent / sep;
    if (a.time >= 0.0) {
      const auto ev = dyn::evolve_markovian_with_xi_derivative(
          dyn::from_pure(n, psi), mat, a.xi, a.time);
      const double f_t = qfi::qfi_sld(ev.rho, ev.drho_dxi).value;
      emit("qfi_at_time", f_t);
      result["time"] = a.time;
      result["qfi_at_time"] = f_t;
    }
  } else {
    const PulseSequence seq = parse_pulses(a.pulses);
    const auto c = filter::coefficient_closed_form(seq, a.p);
    const filter::SpectralModel spec{a.p, a.xi, 0.0,
                                     filter::CutoffShape::FlattenBelow};
    const double q_ghz =
        corrsense::noise::matrix_full_sum(n, a.alpha, 1.0, a.diag_scale) / 4.0;
    const double q_one = a.diag_scale / 4.0;
    const auto ent = filter::optimize_shot_time(
        spec, filter::DephasingCoefficient{c.value * q_ghz, a.p, seq});
    const auto sep = filter::optimize_shot_time(
        spec, filter::DephasingCoefficient{c.value * q_one, a.p, seq});
    const double sep_total = n * sep.max_rate;
    const double ratio = std::max(ent.max_rate, sep_total) / sep_total;
    std::cout << "pulses " << seq.label() << "\n";
    emit("coefficient", c.value);
    emit("entangled_rate", ent.max_rate);
    emit("entangled_t_opt", ent.t_opt);
    emit("separable_rate", sep_total);
    emit("separable_t_opt", sep.t_opt);
    emit("advantage_ratio", ratio);
    result["p"] = a.p;
    result["pulses"] = seq.label();
    result["coefficient"] = c.value;
    result["entangled_rate"] = ent.max_rate;
    result["entangled_t_opt"] = ent.t_opt;
    result["separable_rate"] = sep_total;
    result["separable_t_opt"] = sep.t_opt;
    result["advantage_ratio"] = ratio;
    if (a.time >= 0.0) {
      const auto state = dyn::from_pure(n, psi);
      const auto evolved =
          dyn::evolve_spatiotemporal(state, mat, spec, seq, a.time);
      const long d = state.dim();
      const double before = std::abs(state.matrix(0, d - 1));
      const double after = std::abs(evolved.matrix(0, d - 1));
      const double decay = before > 0.0 ? after / before : 1.0;
      emit("extreme_coherence_decay", decay);
      result["time"] = a.time;
      result["extreme_coherence_decay"] = decay;
    }
  }

  const std::string out_dir = io::resolve_out_dir(a.out);
  if (!out_dir.empty()) {
    io::write_text_file(out_dir + "/qfi.json", result.dump(2) + "\n");
    json params{{"state", a.state},   {"n", n},
                {"alpha", a.alpha},   {"xi", a.xi},
                {"gamma", a.gamma},   {"diag_scale", a.diag_scale},
                {"p", a.p},           {"pulses", a.pulses},
                {"time", a.time}};
    io::write_manifest(out_dir, "qfi", params, 0, {"qfi.json"},
                       now_seconds() - t0);
  }
  return 0;
}

struct SweepArgs {
  double alpha = 1.0, p = 0.0, xi = 1.0, gamma = 1.0, diag_scale = 2.0;
  int n_min = 16, n_max = 4096, points = 9;
  std::string pulses = "hahn";
  std::string out;
};

int run_sweep(const SweepArgs& a) {
  namespace scaling = corrsense::scaling;
  const double t0 = now_seconds();

  scaling::SweepConfig cfg;
  cfg.alpha = a.alpha;
  cfg.p = a.p;
  cfg.xi = a.xi;
  cfg.gamma = a.gamma;
  cfg.diag_scale = a.diag_scale;
  cfg.n_list = scaling::geometric_grid(a.n_min, a.n_max, a.points);
  cfg.pulses = parse_pulses(a.pulses);
  const auto res = a.p == 0.0 ? scaling::sweep_markovian_advantage(cfg)
                              : scaling::sweep_nonmarkovian_advantage(cfg);
  const auto theory = scaling::theoretical_exponent(a.alpha, a.p);

  std::cout << "alpha " << io::fmt_human(a.alpha) << "  p " << io::fmt_human(a.p)
            << "  n " << cfg.n_list.front() << ".." << cfg.n_list.back() << "  points "
            << cfg.n_list.size() << "\n";
  std::cout << "n ratio t_opt collapse\n";
  for (const auto& pt : res.points) {
    std::cout << pt.n << " " << io::fmt_human(pt.ratio) << " "
              << io::fmt_human(pt.t_opt) << " " << io::fmt_human(pt.collapse)
              << "\n";
  }
  emit("fit_exponent", res.fit.exponent);
  emit("fit_r_squared", res.fit.r_squared);
  const char* kind = theory.kind == scaling::ExponentKind::PowerLaw ? "power-law"
                     : theory.kind == scaling::ExponentKind::Log    ? "log"
                                                                    : "bounded";
  std::cout << "theoretical_kind " << kind << "\n";
  bool match = true;
  if (theory.kind == scaling::ExponentKind::PowerLaw) {
    emit("theoretical_exponent", theory.exponent);
    match = std::abs(res.fit.exponent - theory.exponent) <= 0.05;
  } else if (theory.kind == scaling::ExponentKind::Log) {
    std::cout << "log_correction_detected "
              << (res.fit.log_correction_detected ? 1 : 0) << "\n";
    match = res.fit.log_correction_detected;
  } else {
    std::vector<double> ratios;
    for (const auto& pt : res.points) ratios.push_back(pt.ratio);
    const double drift = scaling::top_half_drift(ratios);
    emit("top_half_drift", drift);
    match = drift <= 0.05;
  }
  std::cout << "exponent_match " << (match ? 1 : 0) << "\n";

  const std::string out_dir = io::resolve_out_dir(a.out);
  if (!out_dir.empty()) {
    std::string csv = "n,ratio,t_opt,collapse\n";
    for (const auto& pt : res.points) {
      csv += std::to_string(pt.n) + "," + io::fmt_full(pt.ratio) + "," +
             io::fmt_full(pt.t_opt) + "," + io::fmt_full(pt.collapse) + "\n";
    }
    io::write_text_file(out_dir + "/sweep.csv", csv);
    json points = json::array();
    for (const auto& pt : res.points) {
      points.push_back({{"n", pt.n},
                        {"ratio", pt.ratio},
                        {"t_opt", pt.t_opt},
                        {"collapse", pt.collapse}});
    }
    json result{{"alpha", a.alpha},
                {"p", a.p},
                {"points", points},
                {"fit",
                 {{"exponent", res.fit.exponent},
                  {"intercept", res.fit.intercept},
                  {"r_squared", res.fit.r_squared},
                  {"log_correction_detected", res.fit.log_correction_detected}}},
                {"theoretical", {{"kind", kind}, {"exponent", theory.exponent}}},
                {"exponent_match", match}};
    io::write_text_file(out_dir + "/sweep.json", result.dump(2) + "\n");
    json params{{"alpha", a.alpha},   {"p", a.p},
                {"xi", a.xi},         {"gamma", a.gamma},
                {"diag_scale", a.diag_scale}, {"n_min", a.n_min},
                {"n_max", a.n_max},   {"points", a.points},
                {"pulses", a.pulses}};
    io::write_manifest(out_dir, "sweep", params, 0, {"sweep.csv", "sweep.json"},
                       now_seconds() - t0);
  }
  return 0;
}

struct VerifyArgs {
  std::string suite;
  std::uint64_t seed = 12345;
  int threads = 0;
  std::string out;
};

int run_verify(const VerifyArgs& a) {
  namespace verify = corrsense::verify;
  const double t0 = now_seconds();
  int threads = a.threads;
  if (threads <= 0) {
    threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    if (threads > 8) threads = 8;
  }
  std::vector<std::string> suites;
  if (a.suite == "all") {
    suites = verify::suite_names();
  } else {
    suites.push_back(a.suite);
  }
  int failures = 0;
  json report = json::array();
  for (const auto& suite : suites) {
    const auto results = verify::run_suite(suite, a.seed, threads);
    int passed = 0;
    for (const auto& r : results) {
      std::cout << (r.pass ? "[ok]   " : "[FAIL] ") << suite << "/" << r.name
                << ": " << r.detail << "\n";
      if (r.pass) {
        ++passed;
      } else {
        ++failures;
      }
      report.push_back(
          {{"suite", suite}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    }
    std::cout << "suite " << suite << ": " << passed << "/" << results.size()
              << " passed\n";
  }

  const std::string out_dir = io::resolve_out_dir(a.out);
  if (!out_dir.empty()) {
    io::write_text_file(out_dir + "/verify.json", report.dump(2) + "\n");
    json params{{"suite", a.suite}, {"threads", a.threads}};
    io::write_manifest(out_dir, "verify", params, a.seed, {"verify.json"},
                       now_seconds() - t0);
  }
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"correlated-dephasing quantum sensitivity toolkit"};
  app.set_version_flag("--version", std::string(corrsense::io::kVersion));
  app.require_subcommand(1);

  MatrixArgs ma;
  auto* matrix = app.add_subcommand("matrix", "spatial dephasing matrix and invariants");
  matrix->add_option("--n", ma.n, "number of sensors")->required();
  matrix->add_option("--alpha", ma.alpha, "spatial decay exponent")->required();
  matrix->add_option("--xi", ma.xi, "noise strength");
  matrix->add_option("--gamma", ma.gamma, "dephasing rate scale");
  matrix->add_option("--diag-scale", ma.diag_scale, "diagonal entry in units of xi");
  matrix->add_option("--out", ma.out, "output directory");

  QfiArgs qa;
  auto* qfi = app.add_subcommand("qfi", "QFI rates for a probe state");
  qfi->add_option("--state", qa.state, "ghz | plus-product | file:PATH");
  qfi->add_option("--n", qa.n, "number of sensors");
  qfi->add_option("--alpha", qa.alpha, "spatial decay exponent")->required();
  qfi->add_option("--xi", qa.xi, "noise strength");
  qfi->add_option("--gamma", qa.gamma, "dephasing rate scale");
  qfi->add_option("--diag-scale", qa.diag_scale, "diagonal entry in units of xi");
  qfi->add_option("--p", qa.p, "spectral exponent (0 = white)");
  qfi->add_option("--pulses", qa.pulses, "fid | hahn | cpmgK | theta,theta,...");
  qfi->add_option("--time", qa.time, "evolution time (p = 0) or shot time");
  qfi->add_option("--out", qa.out, "output directory");

  SweepArgs sa;
  auto* sweep = app.add_subcommand("sweep", "advantage scaling over register size");
  sweep->add_option("--alpha", sa.alpha, "spatial decay exponent")->required();
  sweep->add_option("--p", sa.p, "spectral exponent (0 = white)");
  sweep->add_option("--pulses", sa.pulses, "fid | hahn | cpmgK | theta,theta,...");
  sweep->add_option("--xi", sa.xi, "noise strength");
  sweep->add_option("--gamma", sa.gamma, "dephasing rate scale");
  sweep->add_option("--diag-scale", sa.diag_scale, "diagonal entry in units of xi");
  sweep->add_option("--n-min", sa.n_min, "smallest register");
  sweep->add_option("--n-max", sa.n_max, "largest register");
  sweep->add_option("--points", sa.points, "grid points");
  sweep->add_option("--out", sa.out, "output directory");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "numerical verification suites");
  verify->add_option("--suite", va.suite, "lindblad | mc-white | mc-colored | qfi-oracle | filter | all")
      ->required();
  verify->add_option("--seed", va.seed, "base RNG seed");
  verify->add_option("--threads", va.threads, "worker threads (0 = auto)");
  verify->add_option("--out", va.out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (matrix->parsed()) return run_matrix(ma);
    if (qfi->parsed()) return run_qfi(qa);
    if (sweep->parsed()) return run_sweep(sa);
    return run_verify(va);
  } catch (const corrsense::PSDViolation& e) {
    std::cerr << "model error: " << e.what() << "\n";
    return 3;
  } catch (const corrsense::NegativeEntries& e) {
    std::cerr << "model error: " << e.what() << "\n";
    return 3;
  } catch (const corrsense::UnsupportedExponent& e) {
    std::cerr << "regime error: " << e.what() << "\n";
    return 4;
  } catch (const corrsense::PoleError& e) {
    std::cerr << "regime error: " << e.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "argument error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
