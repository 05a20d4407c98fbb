#include "pegbench/sim.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace pegbench {

void SceneSpec::validate() const {
  peg.validate();
  peg_spheres.validate();
  if (!(bore_radius > 0.0)) throw ValidationError("bore radius must be > 0");
  if (!(bore_depth > 0.0)) throw ValidationError("bore depth must be > 0");
  if (clearance() < 0.0)
    throw ValidationError("clearance = bore_radius - peg_radius must be >= 0");
  if (!(target_depth > 0.0))
    throw ValidationError("target depth must be > 0");
  if (target_depth > bore_depth)
    throw ValidationError("target depth must not exceed bore depth");
  if (hole_spheres) hole_spheres->validate();
}

void SimConfig::validate() const {
  if (!(dt > 0.0)) throw ValidationError("sim dt must be > 0");
  if (!(effective_mass > 0.0))
    throw ValidationError("effective mass must be > 0");
  if (!(force_abort_limit > 0.0))
    throw ValidationError("force abort limit must be > 0");
  if (!(time_limit > 0.0)) throw ValidationError("time limit must be > 0");
  if (sensor_noise_force_std < 0.0 || sensor_noise_torque_std < 0.0)
    throw ValidationError("sensor noise std must be >= 0");
}

ContactGains derive_contact_gains(const ContactParams& params,
                                  double effective_mass) {
  params.validate();
  if (!(effective_mass > 0.0))
    throw ValidationError("effective mass must be > 0");
  const double tau = params.time_constant;
  ContactGains g;
  g.stiffness = params.impedance * effective_mass / (tau * tau);
  g.damping =
      params.impedance * 2.0 * params.damping_ratio * effective_mass / tau;
  return g;
}

namespace {

// Contact of one peg sphere center against the analytic hole solid (block
// top face at z = 0, bore wall at r = bore_radius down to -depth, floor at
// z = -depth). `wall_enabled` is false when a sphere-set hole provides the
// wall instead. Returns penetration <= 0 when free.
bool analytic_hole_contact(const Vec3& c, double bore_radius, double depth,
                           bool wall_enabled, ContactPoint& out) {
  const double z = c.z;
  if (z >= 0.0) return false;
  const double r = c.xy_norm();

  if (r < bore_radius) {
    if (z > -depth) return false;  // free inside the cavity
    double pen = -depth - z;
    if (pen <= 0.0) return false;
    out.position = {c.x, c.y, -depth};
    out.normal = {0.0, 0.0, 1.0};
    out.penetration = pen;
    return true;
  }

  // Center inside the block material beside the bore: nearest free surface
  // is either the top face or (within the bore's depth span) the wall.
  double pen_top = -z;
  double pen_wall = r - bore_radius;
  if (wall_enabled && z > -depth && pen_wall < pen_top) {
    if (pen_wall <= 0.0) return false;
    Vec3 inward{-c.x / r, -c.y / r, 0.0};
    out.position = c + inward * pen_wall;
    out.normal = inward;
    out.penetration = pen_wall;
    return true;
  }
  if (pen_top <= 0.0) return false;
  out.position = {c.x, c.y, 0.0};
  out.normal = {0.0, 0.0, 1.0};
  out.penetration = pen_top;
  return true;
}

Vec3 point_velocity(const Twist6& twist, const Vec3& point,
                    const Vec3& ee_pos) {
  return twist.linear + twist.angular.cross(point - ee_pos);
}

void detect_impl(const SimState& state, const SceneSpec& scene,
                 const std::vector<std::vector<int>>* z_buckets,
                 double bucket_z0, double bucket_width,
                 double hole_max_radius, std::vector<ContactPoint>& out) {
  const Mat3 rot = state.ee_pose.rotation();
  const Vec3& pos = state.ee_pose.position;
  const bool sphere_hole = scene.hole_spheres.has_value();

  for (const Sphere& s : scene.peg_spheres.spheres) {
    Vec3 c = rot * s.center + pos;

    ContactPoint cp;
    if (analytic_hole_contact(c, scene.bore_radius, scene.bore_depth,
                              !sphere_hole, cp)) {
      cp.relative_velocity = point_velocity(state.ee_twist, c, pos);
      out.push_back(cp);
    }

    if (!sphere_hole) continue;

    const auto& holes = scene.hole_spheres->spheres;
    auto test_pair = [&](int j) {
      const Sphere& h = holes[static_cast<size_t>(j)];
      Vec3 diff = c - h.center;
      double d = diff.norm();
      double reach = s.radius + h.radius;
      if (d >= reach || d <= 0.0) return;
      ContactPoint scp;
      scp.penetration = reach - d;
      scp.normal = diff / d;
      scp.position = h.center + scp.normal * (h.radius - scp.penetration * 0.5);
      scp.relative_velocity = point_velocity(state.ee_twist, c, pos);
      out.push_back(scp);
    };

    if (z_buckets && bucket_width > 0.0) {
      double reach = s.radius + hole_max_radius;
      int lo = static_cast<int>(
          std::floor((c.z - reach - bucket_z0) / bucket_width));
      int hi = static_cast<int>(
          std::floor((c.z + reach - bucket_z0) / bucket_width));
      lo = std::max(lo, 0);
      hi = std::min(hi, static_cast<int>(z_buckets->size()) - 1);
      for (int b = lo; b <= hi; ++b)
        for (int j : (*z_buckets)[static_cast<size_t>(b)]) test_pair(j);
    } else {
      for (int j = 0; j < static_cast<int>(holes.size()); ++j) test_pair(j);
    }
  }
}

}  // namespace

std::vector<ContactPoint> detect_contacts(const SimState& state,
                                          const SceneSpec& scene) {
  std::vector<ContactPoint> out;
  detect_impl(state, scene, nullptr, 0.0, 0.0, 0.0, out);
  return out;
}

Vec3 contact_force(const ContactPoint& cp, const ContactGains& gains,
                   double friction) {
  const double v_n = cp.relative_velocity.dot(cp.normal);
  const double approach = -v_n;  // positive when closing
  double fn = gains.stiffness * cp.penetration + gains.damping * approach;
  if (fn <= 0.0) return {};  // never attractive

  Vec3 f = cp.normal * fn;
  Vec3 v_t = cp.relative_velocity - cp.normal * v_n;
  double vt_mag = v_t.norm();
  if (vt_mag > 0.0) {
    double ft = std::min(gains.damping * vt_mag, friction * fn);
    f -= v_t * (ft / vt_mag);
  }
  return f;
}

Simulator::Simulator(SceneSpec scene, ContactParams params, SimConfig cfg)
    : scene_(std::move(scene)), params_(params), cfg_(cfg) {
  scene_.validate();
  params_.validate();
  cfg_.validate();
  gains_ = derive_contact_gains(params_, cfg_.effective_mass);

  if (scene_.hole_spheres) {
    const auto& holes = scene_.hole_spheres->spheres;
    double max_r = 0.0;
    double z_min = 0.0, z_max = 0.0;
    for (const Sphere& h : holes) {
      max_r = std::max(max_r, h.radius);
      z_min = std::min(z_min, h.center.z);
      z_max = std::max(z_max, h.center.z);
    }
    hole_max_radius_ = max_r;
    bucket_width_ = std::max(4.0 * max_r, 1e-4);
    bucket_z0_ = z_min - bucket_width_;
    int n = static_cast<int>(
                std::floor((z_max - bucket_z0_) / bucket_width_)) +
            2;
    z_buckets_.assign(static_cast<size_t>(n), {});
    for (int j = 0; j < static_cast<int>(holes.size()); ++j) {
      int b = static_cast<int>(
          std::floor((holes[static_cast<size_t>(j)].center.z - bucket_z0_) /
                     bucket_width_));
      b = std::clamp(b, 0, n - 1);
      z_buckets_[static_cast<size_t>(b)].push_back(j);
    }
  }
}

SimState Simulator::initial_state(const Pose6& start) const {
  SimState s;
  s.ee_pose = start.wrapped();
  return s;
}

std::vector<ContactPoint> Simulator::contacts(const SimState& state) const {
  std::vector<ContactPoint> out;
  detect_impl(state, scene_,
              scene_.hole_spheres ? &z_buckets_ : nullptr, bucket_z0_,
              bucket_width_, hole_max_radius_, out);
  return out;
}

Wrench Simulator::step(SimState& state, const Twist6& commanded,
                       RngStream* noise_rng) {
  if (!commanded.finite())
    throw ControllerFault("non-finite commanded twist");

  state.ee_twist = commanded;
  state.ee_pose.position += commanded.linear * cfg_.dt;
  state.ee_pose.orientation.x =
      wrap_angle(state.ee_pose.orientation.x + commanded.angular.x * cfg_.dt);
  state.ee_pose.orientation.y =
      wrap_angle(state.ee_pose.orientation.y + commanded.angular.y * cfg_.dt);
  state.ee_pose.orientation.z =
      wrap_angle(state.ee_pose.orientation.z + commanded.angular.z * cfg_.dt);
  state.time += cfg_.dt;

  std::vector<ContactPoint> cps = contacts(state);
  Vec3 f_total, t_total;
  for (const ContactPoint& cp : cps) {
    Vec3 f = contact_force(cp, gains_, params_.sliding_friction);
    f_total += f;
    t_total += (cp.position - state.ee_pose.position).cross(f);
  }

  // Measured wrench: what the end effector applies to the environment.
  Wrench measured{-f_total, -t_total};
  if (noise_rng && cfg_.sensor_noise_force_std > 0.0) {
    measured.force.x += noise_rng->normal(0.0, cfg_.sensor_noise_force_std);
    measured.force.y += noise_rng->normal(0.0, cfg_.sensor_noise_force_std);
    measured.force.z += noise_rng->normal(0.0, cfg_.sensor_noise_force_std);
  }
  if (noise_rng && cfg_.sensor_noise_torque_std > 0.0) {
    measured.torque.x += noise_rng->normal(0.0, cfg_.sensor_noise_torque_std);
    measured.torque.y += noise_rng->normal(0.0, cfg_.sensor_noise_torque_std);
    measured.torque.z += noise_rng->normal(0.0, cfg_.sensor_noise_torque_std);
  }

  state.last_wrench = measured;
  state.contact_count = static_cast<int>(cps.size());
  if (measured.force.norm() > cfg_.force_abort_limit) state.force_abort = true;
  if (state.time >= cfg_.time_limit) state.timed_out = true;
  return measured;
}

TrialResult run_trial(const SceneSpec& scene, const ContactParams& params,
                      Controller& controller, const Pose6& start,
                      const SimConfig& cfg, RngStream& noise_rng,
                      const std::string& trial_id, uint64_t seed) {
  Simulator sim(scene, params, cfg);
  SimState state = sim.initial_state(start);

  TrialResult result;
  result.trial_id = trial_id;
  result.seed = seed;
  result.start_pose = state.ee_pose;
  result.contact_params = params;
  result.wrench_series.dt = cfg.dt;
  result.wrench_series.trial_id = trial_id;

  double max_force = 0.0;
  try {
    for (;;) {
      ControllerObservation obs{state.ee_pose, state.last_wrench, state.time};
      Twist6 twist = controller.step(obs, cfg.dt);
      Wrench w = sim.step(state, twist, &noise_rng);
      result.wrench_series.samples.push_back(w);
      max_force = std::max(max_force, w.force.norm());

      bool tip_in_bore =
          state.ee_pose.position.xy_norm() < scene.bore_radius;
      if (state.insertion_depth() >= scene.target_depth && tip_in_bore) {
        result.success = true;
        break;
      }
      if (state.force_abort) {
        result.fail_reason = "force abort";
        break;
      }
      if (state.timed_out) {
        result.fail_reason = "timeout";
        break;
      }
    }
  } catch (const ControllerFault& e) {
    result.success = false;
    result.fail_reason = e.what();
  }

  result.duration = state.time;
  result.max_force_magnitude = max_force;
  return result;
}

BenchResult bench_steps(const SceneSpec& scene, const ContactParams& params,
                        const SimConfig& cfg, int n_steps) {
  if (n_steps < 1) throw ValidationError("bench step count must be >= 1");

  Simulator sim(scene, params, cfg);

  // Canonical benchmark pose: partially inserted, pressed 0.05 mm past the
  // lateral clearance so wall contacts stay engaged; slow descent plus yaw
  // spin keeps sliding friction exercised.
  Pose6 start;
  start.position = {scene.clearance() + 5e-5, 0.0, -0.3 * scene.bore_depth};
  SimState state = sim.initial_state(start);
  Twist6 twist{{0.0, 0.0, -0.0005}, {0.0, 0.0, 0.05}};

  long long contact_sum = 0;
  auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < n_steps; ++i) {
    sim.step(state, twist, nullptr);
    contact_sum += state.contact_count;
  }
  auto t1 = std::chrono::steady_clock::now();

  BenchResult r;
  r.elapsed_seconds = std::chrono::duration<double>(t1 - t0).count();
  double elapsed = std::max(r.elapsed_seconds, 1e-9);
  r.steps_per_second = static_cast<double>(n_steps) / elapsed;
  r.mean_contact_count =
      static_cast<double>(contact_sum) / static_cast<double>(n_steps);
  return r;
}

}  // namespace pegbench
