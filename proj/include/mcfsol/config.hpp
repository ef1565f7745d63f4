#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "mcfsol/shooting.hpp"
#include "mcfsol/spectral.hpp"

namespace mcfsol {

struct SpaceConfig {
  // euclidean-cone, hyperbolic-horo, hyperbolic-hyper, sphere-cone, product,
  // schwarzschild, ads, rn, table
  std::string kind;
  int dim_m = 2;
  double mass = 0.5;
  int kbar = 0;
  double charge = 0.0;
  double h0 = 1.0;
  std::string table;  // csv with columns t,h
  std::optional<double> fiber_curvature;
  std::optional<std::array<double, 2>> window;
  std::optional<double> base_point;

  bool operator==(const SpaceConfig&) const = default;
};

struct SolitonConfig {
  double c = 0.0;
  bool operator==(const SolitonConfig&) const = default;
};

struct SlicesConfig {
  int nodes = 4096;
  double dip_tolerance = 1e-8;
  bool operator==(const SlicesConfig&) const = default;
};

struct ShootConfig {
  double u0 = 0.0;
  double rho_max = 10.0;
  int grid = 1000;
  std::string fiber = "auto";  // auto, flat, hyperbolic, spherical
  int shots = 20;
  std::vector<double> u0_grid;  // overrides shots when non-empty
  bool operator==(const ShootConfig&) const = default;
};

struct CurveConfig {
  double k = 1.0;
  std::array<double, 2> tau{-1.5, 1.5};
  int samples = 2001;
  bool operator==(const CurveConfig&) const = default;
};

struct SpectrumConfig {
  std::string target = "none";  // none, slice, equator, horosphere
  double t0 = 0.0;
  std::array<double, 2> interval{0.0, 1.0};
  std::string boundary = "dirichlet";
  int grid_n = 256;
  std::string weight = "power:0";
  std::optional<double> q;            // constant potential when target = none
  std::optional<std::string> potential;  // profile spec when target = none
  bool operator==(const SpectrumConfig&) const = default;
};

struct OscillateConfig {
  std::string v = "power:2";
  std::string A = "power:-2:1";
  double R = 1.0;
  std::optional<std::array<double, 2>> window;  // default [2R, 1e4]
  int min_zeros = 3;
  int samples = 2001;
  std::vector<double> kinks;
  bool operator==(const OscillateConfig&) const = default;
};

struct GrowthConfig {
  std::string kind = "ball-volume";
  std::string profile = "power:2";
  double r_min = 1.0;
  double r_max = 1e4;
  bool operator==(const GrowthConfig&) const = default;
};

struct OutputConfig {
  std::string path = ".";
  std::string format = "json";
  bool operator==(const OutputConfig&) const = default;
};

struct RunConfig {
  std::optional<SpaceConfig> space;
  std::optional<SolitonConfig> soliton;
  std::optional<SlicesConfig> slices;
  std::optional<ShootConfig> shoot;
  std::optional<CurveConfig> curve;
  std::optional<SpectrumConfig> spectrum;
  std::optional<OscillateConfig> oscillate;
  std::optional<GrowthConfig> growth;
  OutputConfig output;

  bool operator==(const RunConfig&) const = default;
};

/// Parses the TOML subset used by run files: [tables], key = value with
/// strings, numbers, booleans and flat arrays. Throws ParseError for syntax
/// problems and ValidationError for unknown keys or bad values, both naming
/// the line.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Canonical text: every key of every present table, in a fixed order.
std::string serialize_config(const RunConfig& config);

AmbientSpace build_space(const SpaceConfig& space);
SolitonProblem build_problem(const RunConfig& config);
FiberGeometry fiber_from_name(const std::string& name, const SolitonProblem& problem);
Boundary boundary_from_name(const std::string& name);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double x);

}  // namespace mcfsol
