#include "pegbench/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pegbench {

void FilterConfig::validate() const {
  if (enabled && !(cutoff_hz > 0.0))
    throw ValidationError("filter cutoff must be > 0 when enabled");
}

double force_energy(const WrenchSeries& series, AxisMode mode) {
  series.validate();
  double sum = 0.0;
  for (const Wrench& w : series.samples) {
    double f = mode == AxisMode::insertion_z ? w.force.z : w.force.xy_norm();
    sum += f * f;
  }
  return sum / static_cast<double>(series.samples.size());
}

WrenchSeries low_pass(const WrenchSeries& series, const FilterConfig& cfg) {
  cfg.validate();
  series.validate();
  if (!cfg.enabled) return series;

  const double rc = 1.0 / (2.0 * kPi * cfg.cutoff_hz);
  const double alpha = series.dt / (series.dt + rc);

  WrenchSeries out = series;
  Wrench state = series.samples.front();
  for (size_t n = 1; n < out.samples.size(); ++n) {
    const Wrench& x = series.samples[n];
    state.force += (x.force - state.force) * alpha;
    state.torque += (x.torque - state.torque) * alpha;
    out.samples[n] = state;
  }
  return out;
}

double force_smoothness(const WrenchSeries& series, AxisMode mode) {
  series.validate();
  const size_t n = series.samples.size();
  if (n < 2)
    throw ValidationError("force smoothness needs at least 2 samples");

  std::vector<double> deriv(n - 1);
  for (size_t i = 0; i + 1 < n; ++i) {
    const Vec3& a = series.samples[i].force;
    const Vec3& b = series.samples[i + 1].force;
    if (mode == AxisMode::insertion_z) {
      deriv[i] = (b.z - a.z) / series.dt;
    } else {
      double dx = (b.x - a.x) / series.dt;
      double dy = (b.y - a.y) / series.dt;
      deriv[i] = std::sqrt(dx * dx + dy * dy);
    }
  }

  double mu = 0.0;
  for (double d : deriv) mu += d;
  mu /= static_cast<double>(deriv.size());

  double ss = 0.0;
  for (double d : deriv) ss += (d - mu) * (d - mu);
  return std::sqrt(ss / static_cast<double>(deriv.size()));
}

double success_rate(const std::vector<TrialResult>& results) {
  if (results.empty())
    throw ValidationError("success rate over empty result list");
  size_t ok = 0;
  for (const TrialResult& r : results) ok += r.success ? 1 : 0;
  return static_cast<double>(ok) / static_cast<double>(results.size());
}

double mean_completion_time(const std::vector<TrialResult>& results,
                            bool successful_only) {
  if (results.empty())
    throw ValidationError("mean completion time over empty result list");
  double sum = 0.0;
  size_t count = 0;
  for (const TrialResult& r : results) {
    if (successful_only && !r.success) continue;
    sum += r.duration;
    ++count;
  }
  if (count == 0)
    throw ValidationError("mean completion time: no successful trials");
  return sum / static_cast<double>(count);
}

MetricVector compute_metric_vector(const std::vector<TrialResult>& results,
                                   const FilterConfig& cfg) {
  MetricVector m;
  m.success_rate = success_rate(results);

  double ez = 0.0, exy = 0.0, sz = 0.0, sxy = 0.0;
  size_t count = 0;
  for (const TrialResult& r : results) {
    if (!r.success) continue;
    ez += force_energy(r.wrench_series, AxisMode::insertion_z);
    exy += force_energy(r.wrench_series, AxisMode::orthogonal_xy);
    WrenchSeries filtered = low_pass(r.wrench_series, cfg);
    sz += force_smoothness(filtered, AxisMode::insertion_z);
    sxy += force_smoothness(filtered, AxisMode::orthogonal_xy);
    ++count;
  }
  if (count > 0) {
    double k = static_cast<double>(count);
    m.E_z = ez / k;
    m.E_xy = exy / k;
    m.S_z = sz / k;
    m.S_xy = sxy / k;
    m.mean_time = mean_completion_time(results, true);
  }
  return m;
}

namespace {

// Lower-is-better column: best (minimum) raw value scores exactly 1.
void score_column(const std::vector<MetricVector>& raw,
                  std::vector<MetricVector>& out, double eps,
                  std::optional<double> MetricVector::* field) {
  double vmin = std::numeric_limits<double>::infinity();
  for (const MetricVector& m : raw) {
    if (!(m.*field).has_value()) continue;
    double v = *(m.*field);
    if (v < 0.0)
      throw ValidationError("scoreboard raw values must be >= 0");
    vmin = std::min(vmin, v);
  }
  if (!std::isfinite(vmin)) return;  // column entirely absent
  for (size_t i = 0; i < raw.size(); ++i) {
    if (!(raw[i].*field).has_value()) continue;
    (out[i].*field) = (vmin + eps) / (*(raw[i].*field) + eps);
  }
}

}  // namespace

Scoreboard normalize_scoreboard(const std::vector<std::string>& approaches,
                                const std::vector<MetricVector>& raw,
                                double epsilon) {
  if (raw.empty()) throw ValidationError("scoreboard needs >= 1 approach");
  if (approaches.size() != raw.size())
    throw ValidationError("scoreboard approach/metric count mismatch");
  if (!(epsilon >= 0.0))
    throw ValidationError("scoreboard epsilon must be >= 0");

  Scoreboard board;
  board.approaches = approaches;
  board.epsilon = epsilon;
  board.scores.resize(raw.size());

  score_column(raw, board.scores, epsilon, &MetricVector::E_z);
  score_column(raw, board.scores, epsilon, &MetricVector::E_xy);
  score_column(raw, board.scores, epsilon, &MetricVector::S_z);
  score_column(raw, board.scores, epsilon, &MetricVector::S_xy);
  score_column(raw, board.scores, epsilon, &MetricVector::mean_time);

  // Success rate is higher-is-better and excluded from inversion.
  double vmax = 0.0;
  for (const MetricVector& m : raw) {
    if (m.success_rate < 0.0)
      throw ValidationError("scoreboard raw values must be >= 0");
    vmax = std::max(vmax, m.success_rate);
  }
  for (size_t i = 0; i < raw.size(); ++i)
    board.scores[i].success_rate =
        (raw[i].success_rate + epsilon) / (vmax + epsilon);

  return board;
}

}  // namespace pegbench
