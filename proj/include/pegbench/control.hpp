#pragma once

#include <array>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>

#include "pegbench/core.hpp"

namespace pegbench {

/// Raised by a controller when it can no longer produce commands (remote
/// policy timeout, protocol error). The trial runner converts this into a
/// failed trial carrying the message as diagnostic.
class ControllerFault : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// What a controller sees each tick. The wrench follows the project-wide
/// convention: force/torque the end effector applies to the environment.
struct ControllerObservation {
  Pose6 ee_pose;
  Wrench wrench;
  double time = 0.0;
};

/// Cartesian residual returned by a policy: translation meters, rotation
/// radians, applied per query period.
struct PolicyAction {
  std::array<double, 6> pose_correction{};
};

/// Safety bounds and query cadence for residual policies.
struct PolicyClamp {
  double max_translation = 0.002;                  // m per query
  double max_rotation = 0.5 * kPi / 180.0;         // rad per query
};

PolicyAction clamp_action(const PolicyAction& a, const PolicyClamp& clamp);

/// Diagonal admittance law gains (Eq.-style virtual mass-damper-spring).
struct AdmittanceGains {
  std::array<double, 6> mass{1, 1, 1, 1, 1, 1};        // > 0
  std::array<double, 6> damping{0, 0, 0, 0, 0, 0};     // >= 0
  std::array<double, 6> stiffness{0, 0, 0, 0, 0, 0};   // >= 0
  Wrench desired;  // w_d, applied-to-environment convention

  void validate() const;
};

/// One explicit-Euler admittance update:
///   acc = (w_d - w_a - D*xd - C*x) / M      (per axis)
///   xd' = xd + acc*dt
///   x'  = x + xd'*dt
/// where w_a is the observed applied wrench and x is the accumulated
/// deviation from the nominal (moving-setpoint) trajectory. Returns the
/// commanded twist xd'.
Twist6 admittance_step(const ControllerObservation& obs,
                       const AdmittanceGains& gains,
                       std::array<double, 6>& x_state,
                       std::array<double, 6>& xdot_state, double dt);

/// Straight-line move toward a target pose, linear speed capped at
/// speed_limit and angular speed at ang_speed_limit, both channels
/// synchronized to arrive together. Wrench input is ignored by definition.
Twist6 position_controller_step(const ControllerObservation& obs,
                                const Pose6& target, double speed_limit,
                                double ang_speed_limit = 0.2);

/// Force-reactive scripted stand-in for a learned residual policy:
/// descend a fixed step per query; when the lateral applied force exceeds
/// the threshold, also move opposite that force by gain*|F_xy|, clamped.
struct ScriptedPolicyConfig {
  double descend_step = 0.0003;    // m per query
  double force_threshold = 0.5;    // N
  double lateral_gain = 0.0005;    // m per N
  PolicyClamp clamp;
};

PolicyAction scripted_residual_policy(const ControllerObservation& obs,
                                      const ScriptedPolicyConfig& cfg = {});

/// Per-trial controller interface driven by the trial runner.
class Controller {
 public:
  virtual ~Controller() = default;
  /// May throw ControllerFault.
  virtual Twist6 step(const ControllerObservation& obs, double dt) = 0;
};

class PositionController : public Controller {
 public:
  PositionController(const Pose6& target, double speed_limit,
                     double ang_speed_limit = 0.2)
      : target_(target),
        speed_limit_(speed_limit),
        ang_speed_limit_(ang_speed_limit) {}

  Twist6 step(const ControllerObservation& obs, double dt) override {
    (void)dt;
    return position_controller_step(obs, target_, speed_limit_,
                                    ang_speed_limit_);
  }

 private:
  Pose6 target_;
  double speed_limit_;
  double ang_speed_limit_;
};

class AdmittanceController : public Controller {
 public:
  explicit AdmittanceController(const AdmittanceGains& gains)
      : gains_(gains) {
    gains_.validate();
  }

  Twist6 step(const ControllerObservation& obs, double dt) override {
    return admittance_step(obs, gains_, x_, xdot_, dt);
  }

 private:
  AdmittanceGains gains_;
  std::array<double, 6> x_{};
  std::array<double, 6> xdot_{};
};

/// Queries a policy function every `period` seconds of simulation time and
/// holds the resulting twist (clamped correction / period) in between.
/// The policy function may be the local scripted policy or a remote policy
/// channel; any exception it throws is surfaced as ControllerFault.
class ResidualPolicyController : public Controller {
 public:
  using PolicyFn = std::function<PolicyAction(const ControllerObservation&)>;

  ResidualPolicyController(PolicyFn policy, double period,
                           const PolicyClamp& clamp = {})
      : policy_(std::move(policy)), period_(period), clamp_(clamp) {
    if (!(period_ > 0.0))
      throw ValidationError("policy period must be > 0");
  }

  Twist6 step(const ControllerObservation& obs, double dt) override;

 private:
  PolicyFn policy_;
  double period_;
  PolicyClamp clamp_;
  Twist6 held_{};
  double next_query_ = 0.0;
  bool queried_ = false;
};

}  // namespace pegbench
