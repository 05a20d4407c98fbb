#include "pegbench/control.hpp"

#include <algorithm>
#include <cmath>

namespace pegbench {

void AdmittanceGains::validate() const {
  for (double m : mass)
    if (!(m > 0.0)) throw ValidationError("admittance mass must be > 0");
  for (double d : damping)
    if (!(d >= 0.0)) throw ValidationError("admittance damping must be >= 0");
  for (double c : stiffness)
    if (!(c >= 0.0))
      throw ValidationError("admittance stiffness must be >= 0");
}

PolicyAction clamp_action(const PolicyAction& a, const PolicyClamp& clamp) {
  PolicyAction out = a;
  Vec3 t{out.pose_correction[0], out.pose_correction[1],
         out.pose_correction[2]};
  double n = t.norm();
  if (n > clamp.max_translation && n > 0.0) t = t * (clamp.max_translation / n);
  out.pose_correction[0] = t.x;
  out.pose_correction[1] = t.y;
  out.pose_correction[2] = t.z;
  for (int i = 3; i < 6; ++i)
    out.pose_correction[i] = std::clamp(out.pose_correction[i],
                                        -clamp.max_rotation,
                                        clamp.max_rotation);
  return out;
}

Twist6 admittance_step(const ControllerObservation& obs,
                       const AdmittanceGains& gains,
                       std::array<double, 6>& x_state,
                       std::array<double, 6>& xdot_state, double dt) {
  if (!(dt > 0.0)) throw ValidationError("admittance dt must be > 0");
  const std::array<double, 6> wd = {gains.desired.force.x,
                                    gains.desired.force.y,
                                    gains.desired.force.z,
                                    gains.desired.torque.x,
                                    gains.desired.torque.y,
                                    gains.desired.torque.z};
  const std::array<double, 6> wa = {obs.wrench.force.x,  obs.wrench.force.y,
                                    obs.wrench.force.z,  obs.wrench.torque.x,
                                    obs.wrench.torque.y, obs.wrench.torque.z};
  std::array<double, 6> out;
  for (int i = 0; i < 6; ++i) {
    double acc = (wd[i] - wa[i] - gains.damping[i] * xdot_state[i] -
                  gains.stiffness[i] * x_state[i]) /
                 gains.mass[i];
    xdot_state[i] += acc * dt;
    x_state[i] += xdot_state[i] * dt;
    out[i] = xdot_state[i];
  }
  return Twist6::from_flat(out);
}

Twist6 position_controller_step(const ControllerObservation& obs,
                                const Pose6& target, double speed_limit,
                                double ang_speed_limit) {
  constexpr double kPosTol = 1e-7;  // m
  constexpr double kAngTol = 1e-6;  // rad

  Vec3 dp = target.position - obs.ee_pose.position;
  Vec3 da{wrap_angle(target.orientation.x - obs.ee_pose.orientation.x),
          wrap_angle(target.orientation.y - obs.ee_pose.orientation.y),
          wrap_angle(target.orientation.z - obs.ee_pose.orientation.z)};

  double dist = dp.norm();
  double ang = da.norm();
  if (dist <= kPosTol && ang <= kAngTol) return {};

  // Time to target if each channel ran at its limit; take the slower one so
  // the motion is a straight line in the combined space.
  double t_lin = speed_limit > 0.0 ? dist / speed_limit : 0.0;
  double t_ang = ang_speed_limit > 0.0 ? ang / ang_speed_limit : 0.0;
  double t = std::max(t_lin, t_ang);
  if (t <= 0.0) return {};
  return {dp / t, da / t};
}

PolicyAction scripted_residual_policy(const ControllerObservation& obs,
                                      const ScriptedPolicyConfig& cfg) {
  PolicyAction a;
  a.pose_correction[2] = -cfg.descend_step;

  double fx = obs.wrench.force.x;
  double fy = obs.wrench.force.y;
  double lateral = std::sqrt(fx * fx + fy * fy);
  if (lateral > cfg.force_threshold) {
    // Displacement opposite the lateral force, magnitude gain * |F_xy|.
    a.pose_correction[0] = -fx * cfg.lateral_gain;
    a.pose_correction[1] = -fy * cfg.lateral_gain;
  }
  return clamp_action(a, cfg.clamp);
}

Twist6 ResidualPolicyController::step(const ControllerObservation& obs,
                                      double dt) {
  (void)dt;
  if (!queried_ || obs.time >= next_query_) {
    PolicyAction action;
    try {
      action = policy_(obs);
    } catch (const ControllerFault&) {
      throw;
    } catch (const std::exception& e) {
      throw ControllerFault(std::string("policy failure: ") + e.what());
    }
    action = clamp_action(action, clamp_);
    held_ = Twist6{{action.pose_correction[0] / period_,
                    action.pose_correction[1] / period_,
                    action.pose_correction[2] / period_},
                   {action.pose_correction[3] / period_,
                    action.pose_correction[4] / period_,
                    action.pose_correction[5] / period_}};
    queried_ = true;
    next_query_ = obs.time + period_;
  }
  return held_;
}

}  // namespace pegbench
