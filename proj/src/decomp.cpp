#include "pegbench/decomp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace pegbench {

void SphereSet::validate() const {
  if (spheres.empty()) throw ValidationError("sphere set is empty");
  for (const Sphere& s : spheres)
    if (!(s.radius > 0.0))
      throw ValidationError("sphere radius must be > 0");
}

void RoughnessSpec::validate() const {
  if (!(Ra >= 0.0)) throw ValidationError("roughness Ra must be >= 0");
}

void CylinderSpec::validate() const {
  if (!(radius > 0.0)) throw ValidationError("cylinder radius must be > 0");
  if (!(height > 0.0)) throw ValidationError("cylinder height must be > 0");
}

namespace {

// Evenly spaced rings over a z band, points evenly spaced in azimuth with a
// half-spacing stagger between adjacent rings. Returns exactly `count`
// centers at distance `radius` from the z axis.
void ring_lattice(double radius, double z_lo, double z_hi, int count,
                  double phase, std::vector<Sphere>& out,
                  double sphere_radius) {
  const double band = z_hi - z_lo;
  int n_rows = 1;
  if (band > 0.0 && count > 1) {
    double spacing = std::sqrt(2.0 * kPi * radius * band /
                               static_cast<double>(count));
    n_rows = std::max(1, static_cast<int>(std::lround(band / spacing)));
    n_rows = std::min(n_rows, count);
  }

  int base = count / n_rows;
  int extra = count % n_rows;
  for (int row = 0; row < n_rows; ++row) {
    int n_here = base + (row < extra ? 1 : 0);
    if (n_here == 0) continue;
    double z = z_lo + (row + 0.5) * band / n_rows;
    double row_phase =
        phase + (row % 2 == 1 ? kPi / static_cast<double>(n_here) : 0.0);
    for (int i = 0; i < n_here; ++i) {
      double theta =
          row_phase + 2.0 * kPi * static_cast<double>(i) / n_here;
      out.push_back(Sphere{{radius * std::cos(theta),
                            radius * std::sin(theta), z},
                           sphere_radius});
    }
  }
}

}  // namespace

SphereSet decompose_cylinder_lateral(const CylinderSpec& spec, int count,
                                     double sphere_radius, RngStream& rng) {
  spec.validate();
  if (count < 1) throw ValidationError("sphere count must be >= 1");
  if (!(sphere_radius > 0.0))
    throw ValidationError("sphere radius must be > 0");

  const double phase = rng.uniform(0.0, 2.0 * kPi);

  SphereSet set;
  set.frame = "peg";
  set.spheres.reserve(static_cast<size_t>(count));

  // Bottom rim gets a share matching the lateral lattice spacing; the rest
  // tiles the lateral band above it.
  const double area = 2.0 * kPi * spec.radius * spec.height;
  const double spacing = std::sqrt(area / static_cast<double>(count));
  int n_rim = count == 1
                  ? 1
                  : std::clamp(static_cast<int>(std::lround(
                                   2.0 * kPi * spec.radius / spacing)),
                               3, count);

  for (int i = 0; i < n_rim; ++i) {
    double theta = phase + 2.0 * kPi * static_cast<double>(i) / n_rim;
    set.spheres.push_back(Sphere{{spec.radius * std::cos(theta),
                                  spec.radius * std::sin(theta), 0.0},
                                 sphere_radius});
  }
  if (count > n_rim)
    ring_lattice(spec.radius, 0.0, spec.height, count - n_rim, phase,
                 set.spheres, sphere_radius);
  return set;
}

SphereSet hole_surface_spheres(double bore_radius, double depth, int count,
                               double sphere_radius, RngStream& rng) {
  if (!(bore_radius > 0.0)) throw ValidationError("bore radius must be > 0");
  if (depth < 0.0) throw ValidationError("bore depth must be >= 0");
  if (count < 1) throw ValidationError("sphere count must be >= 1");
  if (!(sphere_radius > 0.0))
    throw ValidationError("sphere radius must be > 0");

  const double phase = rng.uniform(0.0, 2.0 * kPi);
  SphereSet set;
  set.frame = "hole";
  set.spheres.reserve(static_cast<size_t>(count));
  ring_lattice(bore_radius, -depth, 0.0, count, phase, set.spheres,
               sphere_radius);
  return set;
}

std::vector<Vec3> radial_normals(const SphereSet& set, bool outward) {
  std::vector<Vec3> normals;
  normals.reserve(set.spheres.size());
  const double sign = outward ? 1.0 : -1.0;
  for (const Sphere& s : set.spheres) {
    double r = s.center.xy_norm();
    if (r <= 0.0)
      throw ValidationError("sphere on the axis has no radial normal");
    normals.push_back(Vec3{s.center.x / r, s.center.y / r, 0.0} * sign);
  }
  return normals;
}

SphereSet apply_roughness(const SphereSet& set, const RoughnessSpec& spec,
                          const std::vector<Vec3>& surface_normals,
                          RngStream& rng) {
  spec.validate();
  if (surface_normals.size() != set.spheres.size())
    throw ValidationError("roughness normals count does not match spheres");

  const double sigma = spec.Ra * std::sqrt(kPi / 2.0);
  SphereSet out = set;
  for (size_t i = 0; i < out.spheres.size(); ++i) {
    double delta =
        spec.distribution == RoughnessSpec::Distribution::gaussian
            ? rng.normal(0.0, sigma)
            : rng.uniform(-2.0 * spec.Ra, 2.0 * spec.Ra);
    out.spheres[i].center += surface_normals[i] * delta;
  }
  return out;
}

SphereSet load_sphere_set(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open sphere set file: " + path);

  SphereSet set;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      const std::string kFrame = "# frame:";
      if (line.compare(first, kFrame.size(), kFrame) == 0) {
        std::string name = line.substr(first + kFrame.size());
        size_t b = name.find_first_not_of(" \t");
        size_t e = name.find_last_not_of(" \t\r");
        if (b != std::string::npos) set.frame = name.substr(b, e - b + 1);
      }
      continue;
    }

    double v[4];
    const char* p = line.c_str() + first;
    for (int i = 0; i < 4; ++i) {
      char* end = nullptr;
      v[i] = std::strtod(p, &end);
      if (end == p)
        throw ValidationError("sphere set parse error at line " +
                              std::to_string(line_no) + ": expected number");
      p = end;
      if (i < 3) {
        while (*p == ' ' || *p == '\t') ++p;
        if (*p != ',')
          throw ValidationError("sphere set parse error at line " +
                                std::to_string(line_no) + ": expected ','");
        ++p;
      }
    }
    while (*p == ' ' || *p == '\t' || *p == '\r') ++p;
    if (*p != '\0')
      throw ValidationError("sphere set parse error at line " +
                            std::to_string(line_no) + ": trailing content");
    if (!(v[3] > 0.0))
      throw ValidationError("sphere set parse error at line " +
                            std::to_string(line_no) + ": radius must be > 0");
    set.spheres.push_back(Sphere{{v[0], v[1], v[2]}, v[3]});
  }
  if (set.spheres.empty())
    throw ValidationError("sphere set file has no sphere records: " + path);
  return set;
}

void save_sphere_set(const SphereSet& set, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write sphere set file: " + path);
  if (!set.frame.empty()) out << "# frame: " << set.frame << "\n";
  char buf[160];
  for (const Sphere& s : set.spheres) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", s.center.x,
                  s.center.y, s.center.z, s.radius);
    out << buf;
  }
  if (!out) throw ValidationError("write failed: " + path);
}

}  // namespace pegbench
