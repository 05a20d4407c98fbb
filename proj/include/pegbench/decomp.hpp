#pragma once

#include <string>
#include <vector>

#include "pegbench/core.hpp"

namespace pegbench {

struct Sphere {
  Vec3 center;          // m, body frame
  double radius = 0.0;  // m, > 0

  bool operator==(const Sphere& o) const = default;
};

/// Sphere-decomposed collision geometry. By convention centers lie exactly
/// on the nominal body surface; the simulator treats the center locus as
/// the effective contact surface and owns any radius offset bookkeeping.
struct SphereSet {
  std::vector<Sphere> spheres;
  std::string frame;

  void validate() const;
  bool operator==(const SphereSet& o) const = default;
};

/// Surface roughness to impose on a sphere set by normal displacement.
/// Ra is the arithmetic average roughness: E[|displacement|] = Ra.
struct RoughnessSpec {
  enum class Distribution { gaussian, uniform };
  double Ra = 0.0;  // m, >= 0
  Distribution distribution = Distribution::gaussian;

  void validate() const;
};

struct CylinderSpec {
  double radius = 0.0;  // m, > 0
  double height = 0.0;  // m, > 0; axis is +z, base at z = 0

  void validate() const;
};

/// Near-uniform sphere decomposition of a cylinder's lateral surface plus
/// its bottom rim. Centers sit exactly at distance spec.radius from the
/// axis; rim spheres at z = 0, lateral rows over (0, height]. Placement is
/// a deterministic ring lattice; rng only supplies a global azimuth phase.
SphereSet decompose_cylinder_lateral(const CylinderSpec& spec, int count,
                                     double sphere_radius, RngStream& rng);

/// Ring-lattice decomposition of a bore's inner wall (chamfer-free).
/// Centers sit at distance bore_radius from the hole axis, z in [-depth, 0]
/// (z = 0 is the opening plane).
SphereSet hole_surface_spheres(double bore_radius, double depth, int count,
                               double sphere_radius, RngStream& rng);

/// Outward (or inward, for bores) unit radial normals for a lateral-surface
/// sphere set, one per sphere.
std::vector<Vec3> radial_normals(const SphereSet& set, bool outward = true);

/// Displace each center along its surface normal by a zero-mean draw with
/// E[|delta|] = spec.Ra (gaussian sigma = Ra*sqrt(pi/2); uniform over
/// [-2Ra, 2Ra]). Radii and count are preserved.
SphereSet apply_roughness(const SphereSet& set, const RoughnessSpec& spec,
                          const std::vector<Vec3>& surface_normals,
                          RngStream& rng);

/// CSV round trip: one `cx,cy,cz,radius` line per sphere (SI meters),
/// `#`-prefixed comments allowed, optional `# frame: <name>` header.
SphereSet load_sphere_set(const std::string& path);
void save_sphere_set(const SphereSet& set, const std::string& path);

}  // namespace pegbench
