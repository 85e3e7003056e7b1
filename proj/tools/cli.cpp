#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <variant>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "beamspec/fdoracle.hpp"
#include "beamspec/modes.hpp"
#include "beamspec/spectrum.hpp"
#include "beamspec/string_wave.hpp"
#include "beamspec/supports.hpp"

namespace beamspec::cli {

using nlohmann::json;

// ---------------------------------------------------------------- config

namespace {

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError(path + ": " + what);
}

void expect_object(const json& j, const std::string& path, std::initializer_list<const char*> keys) {
  if (!j.is_object()) fail(path.empty() ? "config" : path, "expected an object");
  for (const auto& [key, _] : j.items()) {
    if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return key == k; })) {
      fail(join(path, key), "unknown field");
    }
  }
}

double number_at(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(path, "expected a finite number");
  return v;
}

int integer_at(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  const auto v = j.get<long long>();
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    fail(path, "integer out of range");
  }
  return static_cast<int>(v);
}

std::vector<double> numbers_at(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(number_at(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

template <class T, class Read>
void read_optional(const json& obj, const char* key, const std::string& path, T& target, Read read) {
  if (obj.contains(key)) target = read(obj.at(key), join(path, key));
}

Profile parse_profile(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  if (!j.contains("kind")) fail(join(path, "kind"), "missing");
  if (!j.at("kind").is_string()) fail(join(path, "kind"), "expected a string");
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "zero") {
    expect_object(j, path, {"kind"});
    return ZeroProfile{};
  }
  if (kind == "sine") {
    expect_object(j, path, {"kind", "k", "amplitude"});
    SineProfile p;
    read_optional(j, "k", path, p.k, integer_at);
    read_optional(j, "amplitude", path, p.amplitude, number_at);
    return p;
  }
  if (kind == "pluck") {
    expect_object(j, path, {"kind", "x0", "height"});
    PluckProfile p;
    read_optional(j, "x0", path, p.x0, number_at);
    read_optional(j, "height", path, p.height, number_at);
    return p;
  }
  if (kind == "gaussian") {
    expect_object(j, path, {"kind", "center", "width", "amplitude"});
    GaussianProfile p;
    read_optional(j, "center", path, p.center, number_at);
    read_optional(j, "width", path, p.width, number_at);
    read_optional(j, "amplitude", path, p.amplitude, number_at);
    return p;
  }
  if (kind == "mode") {
    expect_object(j, path, {"kind", "n", "amplitude"});
    ModeProfile p;
    read_optional(j, "n", path, p.n, integer_at);
    read_optional(j, "amplitude", path, p.amplitude, number_at);
    return p;
  }
  if (kind == "samples") {
    expect_object(j, path, {"kind", "x", "values"});
    SampledProfile p;
    if (!j.contains("x")) fail(join(path, "x"), "missing");
    if (!j.contains("values")) fail(join(path, "values"), "missing");
    p.x = numbers_at(j.at("x"), join(path, "x"));
    p.values = numbers_at(j.at("values"), join(path, "values"));
    return p;
  }
  fail(join(path, "kind"), "unknown profile kind '" + kind +
                               "' (expected zero, sine, pluck, gaussian, mode or samples)");
}

json profile_to_json(const Profile& profile) {
  return std::visit(
      [](const auto& p) -> json {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, ZeroProfile>) {
          return {{"kind", "zero"}};
        } else if constexpr (std::is_same_v<T, SineProfile>) {
          return {{"kind", "sine"}, {"k", p.k}, {"amplitude", p.amplitude}};
        } else if constexpr (std::is_same_v<T, PluckProfile>) {
          return {{"kind", "pluck"}, {"x0", p.x0}, {"height", p.height}};
        } else if constexpr (std::is_same_v<T, GaussianProfile>) {
          return {{"kind", "gaussian"},
                  {"center", p.center},
                  {"width", p.width},
                  {"amplitude", p.amplitude}};
        } else if constexpr (std::is_same_v<T, ModeProfile>) {
          return {{"kind", "mode"}, {"n", p.n}, {"amplitude", p.amplitude}};
        } else {
          return {{"kind", "samples"}, {"x", p.x}, {"values", p.values}};
        }
      },
      profile);
}

}  // namespace

RunConfig parse_config(const json& doc) {
  expect_object(doc, "", {"support", "length", "material", "wave_speed", "n_modes", "initial",
                          "time", "grid", "quadrature"});
  RunConfig cfg;
  if (doc.contains("support")) {
    if (!doc.at("support").is_string()) fail("support", "expected a string");
    cfg.support = doc.at("support").get<std::string>();
    try {
      parse_case(cfg.support);
    } catch (const std::invalid_argument& e) {
      fail("support", e.what());
    }
  }
  read_optional(doc, "length", "", cfg.length, number_at);
  if (doc.contains("material")) {
    const auto& m = doc.at("material");
    expect_object(m, "material", {"sigma", "E", "I", "rho", "area"});
    cfg.material = {};
    read_optional(m, "sigma", "material", cfg.material.sigma, number_at);
    read_optional(m, "E", "material", cfg.material.elasticity, number_at);
    read_optional(m, "I", "material", cfg.material.area_moment, number_at);
    read_optional(m, "rho", "material", cfg.material.density, number_at);
    read_optional(m, "area", "material", cfg.material.area, number_at);
  }
  read_optional(doc, "wave_speed", "", cfg.wave_speed, number_at);
  read_optional(doc, "n_modes", "", cfg.n_modes, integer_at);
  if (doc.contains("initial")) {
    const auto& init = doc.at("initial");
    expect_object(init, "initial", {"u0", "v0"});
    if (init.contains("u0")) cfg.initial.u0 = parse_profile(init.at("u0"), "initial.u0");
    if (init.contains("v0")) cfg.initial.v0 = parse_profile(init.at("v0"), "initial.v0");
  }
  if (doc.contains("time")) {
    const auto& t = doc.at("time");
    expect_object(t, "time", {"t0", "t1", "frames"});
    read_optional(t, "t0", "time", cfg.time.t0, number_at);
    read_optional(t, "t1", "time", cfg.time.t1, number_at);
    read_optional(t, "frames", "time", cfg.time.frames, integer_at);
  }
  if (doc.contains("grid")) {
    const auto& g = doc.at("grid");
    expect_object(g, "grid", {"points"});
    read_optional(g, "points", "grid", cfg.grid_points, integer_at);
  }
  if (doc.contains("quadrature")) {
    const auto& q = doc.at("quadrature");
    expect_object(q, "quadrature", {"panels", "nodes_per_panel"});
    QuadratureSettings s;
    read_optional(q, "panels", "quadrature", s.panels, integer_at);
    read_optional(q, "nodes_per_panel", "quadrature", s.nodes_per_panel, integer_at);
    cfg.quadrature = s;
  }
  validate(cfg);
  return cfg;
}

void validate(const RunConfig& cfg) {
  if (!(cfg.length > 0.0)) fail("length", "must be positive");
  if (cfg.n_modes < 1 || cfg.n_modes > kMaxModes) {
    fail("n_modes", "must lie in [1, " + std::to_string(kMaxModes) + "]");
  }
  if (cfg.wave_speed && !(*cfg.wave_speed > 0.0)) fail("wave_speed", "must be positive");
  if (cfg.time.frames < 1) fail("time.frames", "must be at least 1");
  if (cfg.time.t1 < cfg.time.t0) fail("time.t1", "must not precede time.t0");
  if (cfg.grid_points < 2) fail("grid.points", "must be at least 2");
  if (cfg.quadrature) {
    try {
      beamspec::validate(*cfg.quadrature);
    } catch (const std::invalid_argument& e) {
      fail("quadrature", e.what());
    }
  }
  auto check_profile = [&](const Profile& p, const char* path) {
    try {
      beamspec::validate(p, cfg.length, cfg.n_modes);
    } catch (const std::invalid_argument& e) {
      fail(path, e.what());
    }
  };
  check_profile(cfg.initial.u0, "initial.u0");
  check_profile(cfg.initial.v0, "initial.v0");
}

RunConfig parse_config_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    // Byte offset to line/column.
    const auto upto = text.substr(0, std::min<std::size_t>(e.byte ? e.byte - 1 : 0, text.size()));
    const auto line = 1 + std::count(upto.begin(), upto.end(), '\n');
    const auto last_nl = upto.rfind('\n');
    const auto column = last_nl == std::string_view::npos ? upto.size() + 1 : upto.size() - last_nl;
    std::ostringstream msg;
    msg << "line " << line << ", column " << column << ": invalid JSON (" << e.what() << ")";
    throw ConfigError(msg.str());
  }
  return parse_config(doc);
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path + ": cannot open config file");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config_text(buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

json to_json(const RunConfig& cfg) {
  json material = json::object();
  if (cfg.material.sigma) material["sigma"] = *cfg.material.sigma;
  if (cfg.material.elasticity) material["E"] = *cfg.material.elasticity;
  if (cfg.material.area_moment) material["I"] = *cfg.material.area_moment;
  if (cfg.material.density) material["rho"] = *cfg.material.density;
  if (cfg.material.area) material["area"] = *cfg.material.area;
  json doc = {
      {"support", cfg.support},
      {"length", cfg.length},
      {"material", material},
      {"n_modes", cfg.n_modes},
      {"initial", {{"u0", profile_to_json(cfg.initial.u0)}, {"v0", profile_to_json(cfg.initial.v0)}}},
      {"time", {{"t0", cfg.time.t0}, {"t1", cfg.time.t1}, {"frames", cfg.time.frames}}},
      {"grid", {{"points", cfg.grid_points}}},
  };
  if (cfg.wave_speed) doc["wave_speed"] = *cfg.wave_speed;
  if (cfg.quadrature) {
    doc["quadrature"] = {{"panels", cfg.quadrature->panels},
                         {"nodes_per_panel", cfg.quadrature->nodes_per_panel}};
  }
  return doc;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------- output

namespace {

using Cell = std::variant<double, long, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string cell_text(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  if (const auto* i = std::get_if<long>(&c)) return std::to_string(*i);
  return std::get<std::string>(c);
}

json cell_json(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return *d;
  if (const auto* i = std::get_if<long>(&c)) return *i;
  return std::get<std::string>(c);
}

void write_csv(const Table& t, std::ostream& os) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell_text(row[i]);
    os << '\n';
  }
}

json table_json(const Table& t) {
  json records = json::array();
  for (const auto& row : t.rows) {
    json r = json::object();
    for (std::size_t i = 0; i < row.size(); ++i) r[t.columns[i]] = cell_json(row[i]);
    records.push_back(std::move(r));
  }
  return records;
}

enum class Format { Csv, Json };

void write_table(const Table& t, Format f, std::ostream& os) {
  if (f == Format::Csv) {
    write_csv(t, os);
  } else {
    os << table_json(t).dump(2) << '\n';
  }
}

void with_file(const std::string& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error(path + ": cannot open for writing");
  body(os);
  if (!os) throw std::runtime_error(path + ": write failed");
}

// "out/run.csv" -> ("out/run", ".csv")
std::pair<std::string, std::string> split_extension(const std::string& path) {
  const auto slash = path.find_last_of('/');
  const auto dot = path.find_last_of('.');
  if (dot == std::string::npos || dot == 0 || (slash != std::string::npos && dot <= slash + 1)) {
    return {path, ""};
  }
  return {path.substr(0, dot), path.substr(dot)};
}

// "out/run.csv" + "traveling" -> "out/run.traveling.csv"
std::string sibling_path(const std::string& path, const std::string& tag) {
  const auto [stem, ext] = split_extension(path);
  return stem + "." + tag + ext;
}

// ---------------------------------------------------------------- options

struct Options {
  std::optional<std::string> support;
  std::optional<double> length;
  std::optional<int> count;
  MaterialParams material;
  std::optional<double> wave_speed;
  std::optional<std::string> config;
  std::optional<std::string> out;
  std::string format = "csv";
  std::optional<int> quad_panels;
  std::optional<int> quad_nodes;
  std::vector<int> grid;
};

bool any_material(const MaterialParams& m) {
  return m.sigma || m.elasticity || m.area_moment || m.density || m.area;
}

// Config file first, then command-line overrides.
RunConfig merged_config(const Options& o) {
  RunConfig cfg = o.config ? load_config(*o.config) : RunConfig{};
  if (o.support) cfg.support = *o.support;
  if (o.length) cfg.length = *o.length;
  if (o.count) cfg.n_modes = *o.count;
  if (any_material(o.material)) cfg.material = o.material;
  if (o.wave_speed) cfg.wave_speed = *o.wave_speed;
  if (o.quad_panels || o.quad_nodes) {
    QuadratureSettings q = cfg.quadrature.value_or(QuadratureSettings::for_modes(cfg.n_modes));
    if (o.quad_panels) q.panels = *o.quad_panels;
    if (o.quad_nodes) q.nodes_per_panel = *o.quad_nodes;
    cfg.quadrature = q;
  }
  parse_case(cfg.support);
  validate(cfg);
  return cfg;
}

QuadratureSettings quadrature_of(const RunConfig& cfg) {
  return cfg.quadrature.value_or(QuadratureSettings::for_modes(cfg.n_modes));
}

Format format_of(const Options& o) { return o.format == "json" ? Format::Json : Format::Csv; }

void emit(const Options& o, std::ostream& out, const std::function<void(std::ostream&)>& body) {
  if (o.out) {
    with_file(*o.out, body);
    spdlog::info("wrote {}", *o.out);
  } else {
    body(out);
  }
}

Eigen::VectorXd frame_times(const TimeWindow& w) {
  if (w.frames == 1) return Eigen::VectorXd::Constant(1, w.t0);
  return Eigen::VectorXd::LinSpaced(w.frames, w.t0, w.t1);
}

// ---------------------------------------------------------------- commands

std::string shape_kind(const ShapeForm& form) {
  if (const auto* t = std::get_if<TrigShape>(&form)) {
    return t->kind == TrigShape::Kind::Sine ? "sine" : "cosine";
  }
  return std::holds_alternative<GeneralShape>(form) ? "general" : "polynomial";
}

Eigen::Vector4d shape_coefficients(const ShapeForm& form) {
  if (const auto* t = std::get_if<TrigShape>(&form)) {
    return {t->amplitude, t->wavenumber, 0.0, 0.0};
  }
  if (const auto* g = std::get_if<GeneralShape>(&form)) return g->coeffs;
  const auto& p = std::get<PolynomialShape>(form);
  return {p.a, p.b, 0.0, 0.0};
}

int cmd_modes(const Options& o, std::ostream& out) {
  RunConfig cfg = merged_config(o);
  const ResolvedCase rc = parse_case(cfg.support);
  const auto modes = build_modes(rc, {cfg.length}, cfg.n_modes);
  const bool with_omega = any_material(cfg.material);
  const double sigma = with_omega ? resolve_sigma(cfg.material) : 0.0;
  spdlog::debug("modes: support {} length {} count {}", cfg.support, cfg.length, cfg.n_modes);

  Table t;
  t.columns = {"n", "kappa", "eigenvalue"};
  if (with_omega) t.columns.push_back("omega");
  for (const char* c : {"bv_residual", "shape", "reflected", "c0", "c1", "c2", "c3"}) {
    t.columns.push_back(c);
  }
  for (const auto& m : modes) {
    std::vector<Cell> row{long(m.record.index), m.record.kappa, m.record.eigenvalue};
    if (with_omega) row.emplace_back(omega(m, sigma));
    row.emplace_back(bv_residual(m));
    row.emplace_back(shape_kind(m.shape.form));
    row.emplace_back(long(m.shape.reflected));
    const Eigen::Vector4d c = shape_coefficients(m.shape.form);
    for (int i = 0; i < 4; ++i) row.emplace_back(c(i));
    t.rows.push_back(std::move(row));
  }
  emit(o, out, [&](std::ostream& os) { write_table(t, format_of(o), os); });
  return 0;
}

int cmd_evolve(const Options& o, std::ostream& out) {
  RunConfig cfg = merged_config(o);
  const double sigma = resolve_sigma(cfg.material);
  const ResolvedCase rc = parse_case(cfg.support);
  const auto modes = build_modes(rc, {cfg.length}, cfg.n_modes);
  const auto coeffs = project(cfg.initial, modes, quadrature_of(cfg));
  const Eigen::VectorXd xs = uniform_grid(cfg.length, cfg.grid_points);
  const Eigen::VectorXd times = frame_times(cfg.time);

  std::vector<SolutionFrame> frames;
  std::vector<double> energy;
  for (Eigen::Index i = 0; i < times.size(); ++i) {
    frames.push_back(evaluate_solution(coeffs, modes, sigma, xs, times(i)));
    energy.push_back(modal_energy(coeffs, modes, sigma, times(i)));
  }

  emit(o, out, [&](std::ostream& os) {
    if (format_of(o) == Format::Csv) {
      os << "t,x,u,v\n";
      for (const auto& f : frames) {
        for (Eigen::Index j = 0; j < f.x.size(); ++j) {
          os << format_double(f.t) << ',' << format_double(f.x(j)) << ','
             << format_double(f.displacement(j)) << ',' << format_double(f.velocity(j)) << '\n';
        }
      }
    } else {
      json records = json::array();
      for (const auto& f : frames) {
        records.push_back({{"t", f.t},
                           {"x", std::vector<double>(f.x.begin(), f.x.end())},
                           {"u", std::vector<double>(f.displacement.begin(), f.displacement.end())},
                           {"v", std::vector<double>(f.velocity.begin(), f.velocity.end())}});
      }
      os << records.dump(2) << '\n';
    }
  });

  const int keep = std::max(0, cfg.n_modes - 2);
  const double tail = tail_magnitude(coeffs, keep);
  double drift = 0.0;
  json per_frame = json::array();
  for (std::size_t i = 0; i < energy.size(); ++i) {
    per_frame.push_back({{"t", times(Eigen::Index(i))}, {"energy", energy[i]}});
    if (energy.front() > 0.0) {
      drift = std::max(drift, std::abs(energy[i] - energy.front()) / energy.front());
    }
  }
  spdlog::info("energy drift {:.3e}, tail magnitude {:.3e}", drift, tail);
  if (o.out) {
    const json sidecar = {{"support", cfg.support},
                          {"length", cfg.length},
                          {"sigma", sigma},
                          {"n_modes", cfg.n_modes},
                          {"energy", per_frame},
                          {"energy_relative_drift", drift},
                          {"tail_first_mode", keep + 1},
                          {"tail_magnitude", tail}};
    with_file(split_extension(*o.out).first + ".sidecar.json",
              [&](std::ostream& os) { os << sidecar.dump(2) << '\n'; });
  } else {
    spdlog::warn("no --out given; energy sidecar not written");
  }
  return 0;
}

int cmd_compare(const Options& o, std::ostream& out) {
  RunConfig cfg = merged_config(o);
  if (!cfg.wave_speed) throw ConfigError("wave_speed: required by compare (--wave-speed)");
  if (!any_material(cfg.material)) throw ConfigError("material: compare needs sigma");
  const double sigma = resolve_sigma(cfg.material);
  const StringConfig string_cfg{cfg.length, *cfg.wave_speed};
  const BeamMedium beam{cfg.length, sigma};
  const int n_modes = cfg.n_modes;

  Table dispersion;
  dispersion.columns = {"n", "omega_wave", "wave_speed", "omega_beam", "beam_speed", "speed_ratio"};
  const auto rows = dispersion_table(string_cfg, sigma, n_modes);
  for (const auto& r : rows) {
    dispersion.rows.push_back({long(r.n), r.omega_wave, r.wave_speed, r.omega_beam, r.beam_speed,
                               r.beam_speed / rows.front().beam_speed});
  }

  const auto coeffs = fourier_coefficients(cfg.initial, string_cfg, quadrature_of(cfg), n_modes);
  const Eigen::VectorXd xs = uniform_grid(cfg.length, cfg.grid_points);
  const Eigen::VectorXd times = frame_times(cfg.time);
  Table traveling;
  traveling.columns = {"medium", "n", "t", "x", "standing", "left", "right", "residual"};
  double worst = 0.0;
  auto trace = [&](const std::string& medium, int n, double speed, auto split) {
    for (Eigen::Index i = 0; i < times.size(); ++i) {
      for (Eigen::Index j = 0; j < xs.size(); ++j) {
        const double standing = standing_term(n, coeffs, cfg.length, speed, xs(j), times(i));
        const TravelingSplit s = split(xs(j), times(i));
        const double residual = std::abs(standing - (s.left + s.right));
        worst = std::max(worst, residual);
        traveling.rows.push_back(
            {medium, long(n), times(i), xs(j), standing, s.left, s.right, residual});
      }
    }
  };
  for (int n = 1; n <= n_modes; ++n) {
    trace("string", n, string_cfg.wave_speed, [&](double x, double t) {
      return traveling_decomposition(n, coeffs, string_cfg, x, t);
    });
  }
  for (int n = 1; n <= n_modes; ++n) {
    trace("beam", n, beam_wave_speed(n, beam), [&](double x, double t) {
      return traveling_decomposition(n, coeffs, beam, x, t);
    });
  }
  spdlog::info("largest traveling-wave reconstruction residual {:.3e}", worst);

  const Format f = format_of(o);
  if (o.out) {
    with_file(*o.out, [&](std::ostream& os) { write_table(dispersion, f, os); });
    with_file(sibling_path(*o.out, "traveling"),
              [&](std::ostream& os) { write_table(traveling, f, os); });
  } else if (f == Format::Json) {
    out << json{{"dispersion", table_json(dispersion)}, {"traveling", table_json(traveling)}}.dump(2)
        << '\n';
  } else {
    write_csv(dispersion, out);
    out << '\n';
    write_csv(traveling, out);
  }
  return 0;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  std::vector<CaseName> cases;
  if (!o.support || *o.support == "all") {
    for (const auto& c : all_cases()) cases.push_back(c.name);
  } else {
    // A mirrored name has the spectrum of its partner.
    cases.push_back(parse_case(*o.support).name);
  }
  const double length = o.length.value_or(1.0);
  if (!(length > 0.0)) throw ConfigError("length: must be positive");
  const std::vector<int> grids = o.grid.empty() ? std::vector<int>{50, 100, 200, 400} : o.grid;

  Table t;
  t.columns = {"support", "m",      "n",               "spectral",          "discrete",
               "relative_error", "kernel", "expected_kernel", "adjoint_deviation", "order",
               "status"};
  bool all_passed = true;
  for (CaseName name : cases) {
    const VerifyReport r = verify_case(support_case(name), length, grids);
    const std::string status = r.passed() ? "pass" : "fail";
    all_passed = all_passed && r.passed();
    for (const auto& row : r.rows) {
      for (Eigen::Index k = 0; k < 3; ++k) {
        t.rows.push_back({std::string(to_string(name)), long(row.interior), long(k + 1),
                          row.spectral(k), row.discrete(k), row.relative_error(k), long(row.kernel),
                          long(r.expected_kernel), r.adjoint_deviation, r.order, status});
      }
    }
    err << to_string(name) << ": " << (r.passed() ? "PASS" : "FAIL") << " kernel "
        << r.rows.back().kernel << "/" << r.expected_kernel << " (" << (r.kernel_ok ? "ok" : "bad")
        << "), accuracy " << (r.accuracy_ok ? "ok" : "bad") << ", order "
        << (std::isnan(r.order) ? std::string("n/a") : format_double(r.order)) << " ("
        << (r.order_ok ? "ok" : "bad") << "), adjoint " << (r.adjoint_ok ? "exact" : "inexact")
        << '\n';
  }
  emit(o, out, [&](std::ostream& os) { write_table(t, format_of(o), os); });
  return all_passed ? 0 : 1;
}

void setup_logging() {
  auto logger = spdlog::get("beamspec");
  if (!logger) {
    logger = spdlog::stderr_logger_mt("beamspec");
    spdlog::set_default_logger(logger);
  }
  spdlog::level::level_enum level = spdlog::level::warn;
  if (const char* env = std::getenv("BEAMSPEC_LOG")) level = spdlog::level::from_str(env);
  spdlog::set_level(level);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  setup_logging();

  CLI::App app{"Free vibrations of an Euler-Bernoulli beam by eigenfunction expansion"};
  app.name("beamspec");
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--support", o.support, "Support case (aa ... cc, add1..add3, ba, ca, cb)");
    sub->add_option("--length", o.length, "Beam length")->check(CLI::PositiveNumber);
    sub->add_option("--out", o.out, "Output file (default: stdout)");
    sub->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
  };
  auto add_model = [&](CLI::App* sub) {
    sub->add_option("--count", o.count, "Number of modes N (at most 25)");
    auto* sigma = sub->add_option("--sigma", o.material.sigma, "sqrt(E I / (rho A))");
    auto* e = sub->add_option("--E", o.material.elasticity, "Young's modulus");
    auto* i = sub->add_option("--I", o.material.area_moment, "Second moment of area");
    auto* rho = sub->add_option("--rho", o.material.density, "Density");
    auto* area = sub->add_option("--area", o.material.area, "Cross-sectional area");
    for (auto* opt : {e, i, rho, area}) sigma->excludes(opt);
    sub->add_option("--config", o.config, "JSON run configuration");
    sub->add_option("--quad-panels", o.quad_panels, "Quadrature panels");
    sub->add_option("--quad-nodes", o.quad_nodes, "Gauss nodes per panel");
  };

  auto* modes = app.add_subcommand("modes", "Eigenvalues and mode shapes");
  add_common(modes);
  add_model(modes);
  auto* evolve = app.add_subcommand("evolve", "Time frames of the modal solution");
  add_common(evolve);
  add_model(evolve);
  auto* compare = app.add_subcommand("compare", "String versus simply supported beam");
  add_common(compare);
  add_model(compare);
  compare->add_option("--wave-speed", o.wave_speed, "String wave speed c");
  auto* verify = app.add_subcommand("verify", "Finite-difference cross-check");
  add_common(verify);
  verify->add_option("--grid", o.grid, "Interior grid sizes m")->delimiter(',');

  std::vector<const char*> argv{"beamspec"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*modes) return cmd_modes(o, out);
    if (*evolve) return cmd_evolve(o, out);
    if (*compare) return cmd_compare(o, out);
    return cmd_verify(o, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace beamspec::cli
