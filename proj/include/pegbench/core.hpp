#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pegbench/geom.hpp"
#include "pegbench/rng.hpp"

namespace pegbench {

/// Thrown when an input violates a documented precondition or invariant.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// 6-DoF force-torque sample at the end effector. Sign convention used
/// throughout: the wrench the end effector applies to the environment
/// (pressing down on a floor gives negative z force).
struct Wrench {
  Vec3 force;   // N
  Vec3 torque;  // N*m

  bool finite() const;
  bool operator==(const Wrench& o) const = default;
};

inline Wrench operator+(const Wrench& a, const Wrench& b) {
  return {a.force + b.force, a.torque + b.torque};
}
inline Wrench operator-(const Wrench& a) { return {-a.force, -a.torque}; }

/// End-effector velocity command: linear m/s, angular rad/s.
struct Twist6 {
  Vec3 linear;
  Vec3 angular;

  bool finite() const;
  std::array<double, 6> flat() const {
    return {linear.x, linear.y, linear.z, angular.x, angular.y, angular.z};
  }
  static Twist6 from_flat(const std::array<double, 6>& v) {
    return {{v[0], v[1], v[2]}, {v[3], v[4], v[5]}};
  }
  bool operator==(const Twist6& o) const = default;
};

/// Per-trial wrench time series with uniform sampling interval.
struct WrenchSeries {
  std::vector<Wrench> samples;
  double dt = 0.0;  // s, > 0
  std::string trial_id;

  void validate() const;
};

/// Position in meters plus intrinsic XYZ Euler orientation (roll, pitch,
/// yaw) in radians, each component wrapped into (-pi, pi].
struct Pose6 {
  Vec3 position;
  Vec3 orientation;

  Mat3 rotation() const {
    return rotation_xyz(orientation.x, orientation.y, orientation.z);
  }
  Pose6 wrapped() const {
    return {position,
            {wrap_angle(orientation.x), wrap_angle(orientation.y),
             wrap_angle(orientation.z)}};
  }
  std::array<double, 6> flat() const {
    return {position.x,    position.y,    position.z,
            orientation.x, orientation.y, orientation.z};
  }
  static Pose6 from_flat(const std::array<double, 6>& v) {
    return {{v[0], v[1], v[2]}, {v[3], v[4], v[5]}};
  }
  bool operator==(const Pose6& o) const = default;
};

/// Gaussian uncertainty over a 6-DoF pose. Diagonal covariance is the
/// normal configuration surface; full symmetric PSD matrices are accepted
/// and factored via (pivot-tolerant) Cholesky.
struct PoseDistribution {
  Pose6 mean;
  std::array<double, 36> covariance{};  // row-major 6x6, m^2 / rad^2

  static PoseDistribution diagonal(const Pose6& mean,
                                   const std::array<double, 6>& variances);
  void validate() const;
};

/// Contact model parameters mirroring the solref/solimp-style knobs that
/// get randomized per trial.
struct ContactParams {
  double time_constant = 0.05;    // s, > 0
  double damping_ratio = 1.0;     // > 0
  double impedance = 0.9;         // in (0, 1)
  double sliding_friction = 0.3;  // >= 0, Coulomb

  void validate() const;
  bool operator==(const ContactParams& o) const = default;
};

/// Outcome of a single insertion trial.
struct TrialResult {
  std::string trial_id;
  bool success = false;
  double duration = 0.0;  // s
  WrenchSeries wrench_series;
  double max_force_magnitude = 0.0;  // N, max |F(n)| over the series
  Pose6 start_pose;
  ContactParams contact_params;
  uint64_t seed = 0;
  std::string fail_reason;  // empty on success
};

/// Lower-triangular factor L with covariance = L * L^T. Accepts positive
/// semidefinite input (zero-variance axes produce zero rows).
/// Throws ValidationError when the matrix is asymmetric or indefinite.
std::array<double, 36> cholesky6(const std::array<double, 36>& cov);

/// Draw a pose from the distribution: mean + L*z with z six independent
/// standard normals. Orientation components are wrapped into (-pi, pi].
Pose6 sample_pose(const PoseDistribution& dist, RngStream& rng);

/// Perturb the target position by i.i.d. N(0, repeatability_std^2) per
/// axis; orientation passes through untouched.
Pose6 add_repeatability_error(const Pose6& target, double repeatability_std,
                              RngStream& rng);

}  // namespace pegbench
