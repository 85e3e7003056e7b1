#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "beamspec/evolution.hpp"
#include "beamspec/quadrature.hpp"

namespace beamspec::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TimeWindow {
  double t0 = 0.0;
  double t1 = 1.0;
  int frames = 11;
};

/// One JSON document describing a run. Every field has a default, so `{}`
/// is a valid config.
struct RunConfig {
  std::string support = "aa";
  double length = 1.0;
  MaterialParams material;  // empty: sigma must come from the CLI
  std::optional<double> wave_speed;  // string comparison only
  int n_modes = 10;
  InitialState initial{ZeroProfile{}, ZeroProfile{}};
  TimeWindow time;
  int grid_points = 101;
  std::optional<QuadratureSettings> quadrature;
};

/// Throws ConfigError naming the offending field, e.g.
/// "initial.u0.width: expected a number".
RunConfig parse_config(const nlohmann::json& doc);

/// Parses text first; syntax errors report line and column.
RunConfig parse_config_text(std::string_view text);

RunConfig load_config(const std::string& path);

nlohmann::json to_json(const RunConfig& cfg);

/// Checks the cross-field invariants (N <= 25, frames >= 1, ...).
void validate(const RunConfig& cfg);

/// 17 significant digits, so values survive a text round trip.
std::string format_double(double v);

/// Entry point shared by the executable and the tests. Returns the exit
/// status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace beamspec::cli
