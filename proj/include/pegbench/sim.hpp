#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pegbench/control.hpp"
#include "pegbench/core.hpp"
#include "pegbench/decomp.hpp"

namespace pegbench {

/// Peg-in-hole scene. World frame: hole axis is +z, the opening plane is
/// z = 0, the bore occupies z in [-bore_depth, 0]. The peg body frame has
/// its tip (bottom face center) at the origin, axis +z; insertion descends
/// toward -z. The hole defaults to an analytic bore surface; a sphere-set
/// hole (world frame) switches contact detection to sphere-vs-sphere.
struct SceneSpec {
  CylinderSpec peg;
  SphereSet peg_spheres;
  double bore_radius = 0.0;
  double bore_depth = 0.0;
  double target_depth = 0.0;
  std::optional<SphereSet> hole_spheres;

  double clearance() const { return bore_radius - peg.radius; }
  void validate() const;
};

/// One detected contact. Normal points from the hole surface into the peg
/// (direction of the force the environment exerts on the peg); penetration
/// is measured from the peg sphere center to the hole surface, since
/// centers define the effective contact surfaces.
struct ContactPoint {
  Vec3 position;
  Vec3 normal;
  double penetration = 0.0;
  Vec3 relative_velocity;  // peg point velocity relative to hole, m/s
};

struct SimConfig {
  double dt = 1e-3;                     // s
  double effective_mass = 1.0;          // kg, virtual mass for gains
  double force_abort_limit = 50.0;      // N
  double time_limit = 20.0;             // s simulated
  double sensor_noise_force_std = 0.0;  // N per channel
  double sensor_noise_torque_std = 0.0; // N*m per channel

  void validate() const;
};

struct SimState {
  Pose6 ee_pose;     // peg tip frame in world
  Twist6 ee_twist;
  double time = 0.0;
  Wrench last_wrench;  // measured (applied convention), noise included
  int contact_count = 0;
  bool force_abort = false;
  bool timed_out = false;

  double insertion_depth() const { return -ee_pose.position.z; }
};

/// Spring-damper gains from the solref/solimp-style parameters:
///   k = impedance * effective_mass / time_constant^2
///   b = impedance * 2 * damping_ratio * effective_mass / time_constant
struct ContactGains {
  double stiffness = 0.0;  // N/m
  double damping = 0.0;    // N*s/m
};

ContactGains derive_contact_gains(const ContactParams& params,
                                  double effective_mass);

/// All current contacts of the peg spheres against the hole (analytic bore
/// wall/floor/top face, or hole spheres when provided). Contacts with zero
/// penetration are omitted.
std::vector<ContactPoint> detect_contacts(const SimState& state,
                                          const SceneSpec& scene);

/// Spring-damper normal force with viscous-capped Coulomb friction:
///   F_n = max(0, k*pen + b*approach_speed)  along the normal, never
///   attractive; tangential opposes sliding with magnitude
///   min(b*|v_t|, friction*F_n).
Vec3 contact_force(const ContactPoint& cp, const ContactGains& gains,
                   double friction);

/// Quasi-static stepping: the commanded twist is tracked exactly; contact
/// forces are measured at the end-effector frame but never move the peg.
/// Owns a z-bucket broad phase over hole spheres when present.
class Simulator {
 public:
  Simulator(SceneSpec scene, ContactParams params, SimConfig cfg);

  SimState initial_state(const Pose6& start) const;

  /// Advance one step under the commanded twist. Returns the measured
  /// wrench (stored in the state as well); draws sensor noise from
  /// noise_rng when the configured noise std is > 0. Throws
  /// ControllerFault on non-finite commands.
  Wrench step(SimState& state, const Twist6& commanded, RngStream* noise_rng);

  std::vector<ContactPoint> contacts(const SimState& state) const;

  const SceneSpec& scene() const { return scene_; }
  const SimConfig& config() const { return cfg_; }
  const ContactGains& gains() const { return gains_; }
  double friction() const { return params_.sliding_friction; }

 private:
  SceneSpec scene_;
  ContactParams params_;
  SimConfig cfg_;
  ContactGains gains_;

  // Axial broad phase over hole spheres: indices bucketed by center z.
  std::vector<std::vector<int>> z_buckets_;
  double bucket_z0_ = 0.0;
  double bucket_width_ = 0.0;
  double hole_max_radius_ = 0.0;
};

/// One complete insertion trial: controller observes (pose, wrench, time),
/// commands a twist, the simulator steps, until the target depth is
/// reached, the force limit trips, or the time limit expires. Controller
/// faults (including NaN commands) mark the trial failed with a diagnostic.
TrialResult run_trial(const SceneSpec& scene, const ContactParams& params,
                      Controller& controller, const Pose6& start,
                      const SimConfig& cfg, RngStream& noise_rng,
                      const std::string& trial_id = "trial",
                      uint64_t seed = 0);

struct BenchResult {
  double elapsed_seconds = 0.0;
  double steps_per_second = 0.0;
  double mean_contact_count = 0.0;
};

/// Wall-clock timing of pure physics stepping: fixed commanded twist, no
/// controller, no I/O. The peg starts partially inserted and laterally
/// displaced to the clearance so wall contacts stay engaged.
BenchResult bench_steps(const SceneSpec& scene, const ContactParams& params,
                        const SimConfig& cfg, int n_steps);

}  // namespace pegbench
