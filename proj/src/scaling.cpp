// scaling.cpp
#include "corrsense/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "corrsense/errors.hpp"
#include "corrsense/noise_model.hpp"

namespace corrsense::scaling {

void SweepConfig::validate() const {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
  if (!(p >= 0.0)) throw std::invalid_argument("p must be >= 0");
  if (!(xi > 0.0)) throw std::invalid_argument("xi must be > 0");
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be > 0");
  if (!(diag_scale > 0.0)) throw std::invalid_argument("diag_scale must be > 0");
  if (n_list.size() < 4) throw GridTooCoarse("sweep needs at least 4 sensor counts");
  int prev = 0;
  for (int n : n_list) {
    if (n <= prev) throw std::invalid_argument("n_list must be strictly increasing");
    prev = n;
  }
  if (n_list.front() < 2) throw std::invalid_argument("smallest n must be >= 2");
  pulses.validate();
}

TheoreticalExponent theoretical_exponent(double alpha, double p) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
  if (!(p >= 0.0)) throw std::invalid_argument("p must be >= 0");
  const double s = alpha + p;
  if (std::abs(s - 1.0) <= 1e-12) return {ExponentKind::Log, 0.0};
  if (s > 1.0) return {ExponentKind::Bounded, 0.0};
  return {ExponentKind::PowerLaw, (1.0 - s) / (1.0 + p)};
}

SweepResult sweep_markovian_advantage(const SweepConfig& cfg) {
  cfg.validate();
  SweepResult out;
  out.points.reserve(cfg.n_list.size());
  for (int n : cfg.n_list) {
    // R = sum A / sum diag(A); both sums are O(N) on the Toeplitz structure.
    const double full = noise::matrix_full_sum(n, cfg.alpha, cfg.xi, cfg.diag_scale);
    const double diag = noise::matrix_diag_sum(n, cfg.xi, cfg.diag_scale);
    out.points.push_back(SweepPoint{n, full / diag, 0.0, 0.0});
  }
  std::vector<double> r;
  r.reserve(out.points.size());
  for (const auto& pt : out.points) r.push_back(pt.ratio);
  out.fit = fit_power_law(cfg.n_list, r);
  return out;
}

SweepResult sweep_nonmarkovian_advantage(const SweepConfig& cfg) {
  cfg.validate();
  const filter::DephasingCoefficient c =
      filter::coefficient_closed_form(cfg.pulses, cfg.p);
  const filter::SpectralModel spec{cfg.p, cfg.xi, 0.0, filter::CutoffShape::FlattenBelow};
  const double collapse_exp = (2.0 - cfg.alpha) / (1.0 + cfg.p);

  SweepResult out;
  out.points.reserve(cfg.n_list.size());
  for (int n : cfg.n_list) {
    // Effective decay coefficients: GHZ picks up the full matrix sum over 4,
    // a product probe one diagonal element per qubit.
    const double q_ghz = noise::matrix_full_sum(n, cfg.alpha, 1.0, cfg.diag_scale) / 4.0;
    const double q_one = cfg.diag_scale / 4.0;
    const auto ent = filter::optimize_shot_time(
        spec, filter::DephasingCoefficient{c.value * q_ghz, cfg.p, cfg.pulses});
    const auto sep = filter::optimize_shot_time(
        spec, filter::DephasingCoefficient{c.value * q_one, cfg.p, cfg.pulses});
    const double sep_rate = static_cast<double>(n) * sep.max_rate;
    // The best entangled protocol can always fall back to the product probe,
    // so the advantage never drops below 1.
    const double ratio = std::max(ent.max_rate, sep_rate) / sep_rate;
    double collapse = 0.0;
    if (cfg.p > 0.0) {
      collapse = cfg.xi *
                 std::pow(ent.t_opt * std::pow(static_cast<double>(n), collapse_exp),
                          1.0 + cfg.p);
    }
    out.points.push_back(SweepPoint{n, ratio, ent.t_opt, collapse});
  }
  std::vector<double> r;
  r.reserve(out.points.size());
  for (const auto& pt : out.points) r.push_back(pt.ratio);
  out.fit = fit_power_law(cfg.n_list, r);
  return out;
}

CollapseResult topt_collapse_check(const SweepConfig& cfg) {
  if (!(cfg.p > 0.0)) {
    throw UnsupportedExponent("collapse check needs a colored spectrum (p > 0)");
  }
  const SweepResult sweep = sweep_nonmarkovian_advantage(cfg);
  CollapseResult out;
  out.points = sweep.points;
  double mean = 0.0;
  for (const auto& pt : out.points) mean += pt.collapse;
  mean /= static_cast<double>(out.points.size());
  double worst = 0.0;
  for (const auto& pt : out.points) {
    worst = std::max(worst, std::abs(pt.collapse - mean));
  }
  out.max_rel_spread = worst / mean;
  return out;
}

ScalingFit fit_power_law(const std::vector<int>& n, const std::vector<double>& r) {
  if (n.size() != r.size()) throw std::invalid_argument("n and r sizes differ");
  if (n.size() < 4) throw GridTooCoarse("power-law fit needs at least 4 points");
  const std::size_t drop = std::max<std::size_t>(1, n.size() / 4);
  if (n.size() - drop < 3) throw GridTooCoarse("too few points after dropping");

  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const std::size_t m = n.size() - drop;
  std::vector<double> xs(m), ys(m);
  for (std::size_t i = 0; i < m; ++i) {
    xs[i] = std::log(static_cast<double>(n[drop + i]));
    ys[i] = std::log(r[drop + i]);
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double dm = static_cast<double>(m);
  const double denom = dm * sxx - sx * sx;
  if (!(std::abs(denom) > 0.0)) throw std::invalid_argument("degenerate fit abscissae");
  ScalingFit fit;
  fit.exponent = (dm * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.exponent * sx) / dm;
  double ss_res = 0.0, ss_tot = 0.0;
  const double ybar = sy / dm;
  for (std::size_t i = 0; i < m; ++i) {
    const double pred = fit.intercept + fit.exponent * xs[i];
    ss_res += (ys[i] - pred) * (ys[i] - pred);
    ss_tot += (ys[i] - ybar) * (ys[i] - ybar);
  }
  fit.r_squared = ss_tot > 0.0 ? std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0) : 1.0;
  fit.log_correction_detected = log_ratio_variation(n, r) <= 0.10;
  return fit;
}

double log_ratio_variation(const std::vector<int>& n, const std::vector<double>& r) {
  if (n.size() != r.size() || n.size() < 2) {
    throw std::invalid_argument("need matched lists with >= 2 points");
  }
  const std::size_t start = n.size() / 2;
  double lo = 0.0, hi = 0.0, mean = 0.0;
  for (std::size_t i = start; i < n.size(); ++i) {
    const double v = r[i] / std::log(static_cast<double>(n[i]));
    if (i == start) {
      lo = hi = v;
    } else {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    mean += v;
  }
  mean /= static_cast<double>(n.size() - start);
  return (hi - lo) / mean;
}

double top_half_drift(const std::vector<double>& r) {
  if (r.size() < 2) throw std::invalid_argument("need >= 2 points");
  const std::size_t start = r.size() / 2;
  double lo = r[start], hi = r[start], mean = 0.0;
  for (std::size_t i = start; i < r.size(); ++i) {
    lo = std::min(lo, r[i]);
    hi = std::max(hi, r[i]);
    mean += r[i];
  }
  mean /= static_cast<double>(r.size() - start);
  return (hi - lo) / mean;
}

std::vector<int> geometric_grid(int n_min, int n_max, int points) {
  if (n_min < 2 || n_max <= n_min) throw std::invalid_argument("need 2 <= n_min < n_max");
  if (points < 4) throw GridTooCoarse("need at least 4 grid points");
  std::vector<int> out;
  out.reserve(points);
  const double lo = std::log(static_cast<double>(n_min));
  const double hi = std::log(static_cast<double>(n_max));
  for (int k = 0; k < points; ++k) {
    const double f = static_cast<double>(k) / (points - 1);
    const int n = static_cast<int>(std::lround(std::exp(lo + f * (hi - lo))));
    if (out.empty() || n > out.back()) out.push_back(n);
  }
  if (out.size() < 4) throw GridTooCoarse("grid collapsed to fewer than 4 points");
  return out;
}

}  // namespace corrsense::scaling
