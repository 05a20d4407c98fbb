#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pegbench/core.hpp"

namespace pegbench {

enum class AxisMode { insertion_z, orthogonal_xy };

/// First-order low-pass configuration. The filter is applied to force
/// signals before computing smoothness; energy always uses the raw signal.
struct FilterConfig {
  double cutoff_hz = 30.0;
  bool enabled = true;

  void validate() const;
};

/// Aggregated quality metrics for one approach / experiment.
/// E and S are absent when no trial in the set succeeded.
struct MetricVector {
  std::optional<double> E_z;        // N^2
  std::optional<double> E_xy;       // N^2
  std::optional<double> S_z;        // N/s
  std::optional<double> S_xy;       // N/s
  std::optional<double> mean_time;  // s, successful trials only
  double success_rate = 0.0;        // in [0, 1]
};

/// Normalized cross-approach scores in (0, 1]; the best raw approach scores
/// exactly 1 in each column.
struct Scoreboard {
  std::vector<std::string> approaches;
  std::vector<MetricVector> scores;  // same order as approaches
  double epsilon = 1e-3;
};

/// Force energy, Eq-style mean of squared scalar force over all samples.
/// insertion_z uses F_z, orthogonal_xy uses ||(F_x, F_y)||.
double force_energy(const WrenchSeries& series, AxisMode mode);

/// Per-component first-order exponential low-pass with
/// alpha = dt / (dt + 1/(2*pi*cutoff)). State starts at the first sample,
/// so constant series pass through bit-exactly. Disabled config is the
/// identity. Length and dt are preserved.
WrenchSeries low_pass(const WrenchSeries& series, const FilterConfig& cfg);

/// Population standard deviation of the forward-difference force
/// derivative. insertion_z differentiates F_z; orthogonal_xy uses the
/// magnitude of the (dF_x, dF_y) derivative pair. Needs >= 2 samples.
double force_smoothness(const WrenchSeries& series, AxisMode mode);

/// Fraction of successful trials.
double success_rate(const std::vector<TrialResult>& results);

/// Arithmetic mean of trial durations; restricted to successes by default.
double mean_completion_time(const std::vector<TrialResult>& results,
                            bool successful_only = true);

/// Metrics for a batch of trials: E/S averaged over successful trials
/// (smoothness on the filtered series), R over all trials, mean time over
/// successes.
MetricVector compute_metric_vector(const std::vector<TrialResult>& results,
                                   const FilterConfig& cfg);

/// Raw per-approach metric table -> normalized scoreboard. Energy,
/// smoothness and time columns are lower-is-better and score
/// (min + eps) / (v + eps); success rate is higher-is-better and scores
/// (v + eps) / (max + eps).
Scoreboard normalize_scoreboard(const std::vector<std::string>& approaches,
                                const std::vector<MetricVector>& raw,
                                double epsilon = 1e-3);

}  // namespace pegbench
