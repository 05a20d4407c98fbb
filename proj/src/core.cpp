#include "pegbench/core.hpp"

#include <cmath>

namespace pegbench {

bool Wrench::finite() const {
  return std::isfinite(force.x) && std::isfinite(force.y) &&
         std::isfinite(force.z) && std::isfinite(torque.x) &&
         std::isfinite(torque.y) && std::isfinite(torque.z);
}

bool Twist6::finite() const {
  return std::isfinite(linear.x) && std::isfinite(linear.y) &&
         std::isfinite(linear.z) && std::isfinite(angular.x) &&
         std::isfinite(angular.y) && std::isfinite(angular.z);
}

void WrenchSeries::validate() const {
  if (samples.empty()) throw ValidationError("wrench series is empty");
  if (!(dt > 0.0)) throw ValidationError("wrench series dt must be > 0");
}

PoseDistribution PoseDistribution::diagonal(
    const Pose6& mean, const std::array<double, 6>& variances) {
  PoseDistribution d;
  d.mean = mean;
  for (int i = 0; i < 6; ++i) d.covariance[6 * i + i] = variances[i];
  return d;
}

void PoseDistribution::validate() const { (void)cholesky6(covariance); }

void ContactParams::validate() const {
  if (!(time_constant > 0.0))
    throw ValidationError("contact time_constant must be > 0");
  if (!(damping_ratio > 0.0))
    throw ValidationError("contact damping_ratio must be > 0");
  if (!(impedance > 0.0 && impedance < 1.0))
    throw ValidationError("contact impedance must be in (0, 1)");
  if (!(sliding_friction >= 0.0))
    throw ValidationError("sliding_friction must be >= 0");
}

std::array<double, 36> cholesky6(const std::array<double, 36>& cov) {
  double scale = 0.0;
  for (int i = 0; i < 6; ++i)
    scale = std::max(scale, std::abs(cov[6 * i + i]));
  const double tol = 1e-12 * std::max(scale, 1e-30);

  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j)
      if (std::abs(cov[6 * i + j] - cov[6 * j + i]) > tol)
        throw ValidationError("covariance matrix is not symmetric");

  std::array<double, 36> L{};
  for (int j = 0; j < 6; ++j) {
    double d = cov[6 * j + j];
    for (int k = 0; k < j; ++k) d -= L[6 * j + k] * L[6 * j + k];
    if (d < -tol)
      throw ValidationError("covariance matrix is not positive semidefinite");
    if (d <= tol) {
      // Semidefinite pivot: the remaining column must vanish too, otherwise
      // the matrix has a negative eigenvalue.
      L[6 * j + j] = 0.0;
      for (int i = j + 1; i < 6; ++i) {
        double s = cov[6 * i + j];
        for (int k = 0; k < j; ++k) s -= L[6 * i + k] * L[6 * j + k];
        if (std::abs(s) > tol)
          throw ValidationError(
              "covariance matrix is not positive semidefinite");
        L[6 * i + j] = 0.0;
      }
      continue;
    }
    L[6 * j + j] = std::sqrt(d);
    for (int i = j + 1; i < 6; ++i) {
      double s = cov[6 * i + j];
      for (int k = 0; k < j; ++k) s -= L[6 * i + k] * L[6 * j + k];
      L[6 * i + j] = s / L[6 * j + j];
    }
  }
  return L;
}

Pose6 sample_pose(const PoseDistribution& dist, RngStream& rng) {
  const auto L = cholesky6(dist.covariance);

  // Always draw all six normals so the stream position does not depend on
  // the covariance structure.
  std::array<double, 6> z;
  for (double& v : z) v = rng.normal();

  std::array<double, 6> delta{};
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j <= i; ++j) delta[i] += L[6 * i + j] * z[j];

  auto mean = dist.mean.flat();
  std::array<double, 6> out;
  for (int i = 0; i < 6; ++i) out[i] = mean[i] + delta[i];
  return Pose6::from_flat(out).wrapped();
}

Pose6 add_repeatability_error(const Pose6& target, double repeatability_std,
                              RngStream& rng) {
  if (repeatability_std < 0.0)
    throw ValidationError("repeatability std must be >= 0");
  Pose6 out = target;
  out.position.x += rng.normal(0.0, repeatability_std);
  out.position.y += rng.normal(0.0, repeatability_std);
  out.position.z += rng.normal(0.0, repeatability_std);
  return out;
}

}  // namespace pegbench
