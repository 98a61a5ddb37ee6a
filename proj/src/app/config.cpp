#include "qlinear/app/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>

#include "qlinear/core/errors.hpp"
#include "qlinear/tunneling/scenarios.hpp"

namespace qlinear::app {
namespace {

namespace pt = boost::property_tree;

struct Field {
  const char* section;
  const char* key;
  std::function<std::string(const ExperimentConfig&)> get;
  std::function<void(ExperimentConfig&, const std::string&)> set;
};

[[noreturn]] void bad_value(const std::string& field, const std::string& value,
                            const char* expected) {
  throw ValidationError("config: " + field + " = '" + value + "' is not " + expected);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

double to_double(const std::string& field, const std::string& raw) {
  const std::string s = trim(raw);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty() || !std::isfinite(v)) {
    bad_value(field, raw, "a finite number");
  }
  return v;
}

std::uint64_t to_unsigned(const std::string& field, const std::string& raw) {
  const std::string s = trim(raw);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    bad_value(field, raw, "a non-negative integer");
  }
  return v;
}

bool to_bool(const std::string& field, const std::string& raw) {
  const std::string s = trim(raw);
  if (s == "true") return true;
  if (s == "false") return false;
  bad_value(field, raw, "true or false");
}

std::vector<double> to_list(const std::string& field, const std::string& raw) {
  std::vector<double> out;
  std::stringstream ss(raw);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(field, item));
  if (out.empty()) bad_value(field, raw, "a comma-separated list of numbers");
  return out;
}

template <class Access>
Field real(const char* section, const char* key, Access access) {
  const std::string name = std::string(section) + "." + key;
  return {section, key, [access](const ExperimentConfig& c) {
            return format_double(access(c));
          },
          [access, name](ExperimentConfig& c, const std::string& v) {
            access(c) = to_double(name, v);
          }};
}

template <class Access>
Field count(const char* section, const char* key, Access access) {
  const std::string name = std::string(section) + "." + key;
  return {section, key, [access](const ExperimentConfig& c) {
            return std::to_string(access(c));
          },
          [access, name](ExperimentConfig& c, const std::string& v) {
            using T = std::remove_reference_t<decltype(access(c))>;
            access(c) = static_cast<T>(to_unsigned(name, v));
          }};
}

template <class Access>
Field text(const char* section, const char* key, Access access) {
  return {section, key,
          [access](const ExperimentConfig& c) { return access(c); },
          [access](ExperimentConfig& c, const std::string& v) { access(c) = trim(v); }};
}

template <class Access>
Field flag(const char* section, const char* key, Access access) {
  const std::string name = std::string(section) + "." + key;
  return {section, key, [access](const ExperimentConfig& c) {
            return std::string(access(c) ? "true" : "false");
          },
          [access, name](ExperimentConfig& c, const std::string& v) {
            access(c) = to_bool(name, v);
          }};
}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      text("units", "system", [](auto& c) -> auto& { return c.unit_system; }),
      real("units", "mass_kg", [](auto& c) -> auto& { return c.mass_kg; }),
      real("grid", "x_min_m", [](auto& c) -> auto& { return c.x_min; }),
      real("grid", "x_max_m", [](auto& c) -> auto& { return c.x_max; }),
      count("grid", "n", [](auto& c) -> auto& { return c.n; }),
      real("state", "x0_m", [](auto& c) -> auto& { return c.packet.x0; }),
      real("state", "p0_kgmps", [](auto& c) -> auto& { return c.packet.p0; }),
      real("state", "sigma_m", [](auto& c) -> auto& { return c.packet.sigma; }),
      text("potential", "kind", [](auto& c) -> auto& { return c.potential_kind; }),
      real("potential", "V0_Jpm", [](auto& c) -> auto& { return c.slope; }),
      real("potential", "x_start_m", [](auto& c) -> auto& { return c.barrier.x_start; }),
      real("potential", "x_peak_m", [](auto& c) -> auto& { return c.barrier.x_peak; }),
      real("potential", "peak_J", [](auto& c) -> auto& { return c.barrier.peak; }),
      {"potential", "descent_m",
       [](const ExperimentConfig& c) { return format_double(c.barrier.descent()); },
       [](ExperimentConfig& c, const std::string& v) {
         c.barrier.descent_width = to_double("potential.descent_m", v);
       }},
      real("solver", "dt_s", [](auto& c) -> auto& { return c.dt; }),
      real("solver", "duration_s", [](auto& c) -> auto& { return c.duration; }),
      count("solver", "record_every", [](auto& c) -> auto& { return c.record_every; }),
      real("solver", "absorber_fraction", [](auto& c) -> auto& { return c.absorber_fraction; }),
      real("solver", "absorber_p_max_kgmps", [](auto& c) -> auto& { return c.absorber_p_max; }),
      text("tunnel", "mode", [](auto& c) -> auto& { return c.scan_mode; }),
      {"tunnel", "values",
       [](const ExperimentConfig& c) {
         std::string s;
         for (std::size_t i = 0; i < c.scan_values.size(); ++i) {
           if (i) s += ", ";
           s += format_double(c.scan_values[i]);
         }
         return s;
       },
       [](ExperimentConfig& c, const std::string& v) { c.scan_values = to_list("tunnel.values", v); }},
      count("tunnel", "step_budget", [](auto& c) -> auto& { return c.step_budget; }),
      real("psg", "L_m", [](auto& c) -> auto& { return c.psg_L; }),
      real("psg", "V0_Jpm", [](auto& c) -> auto& { return c.psg_V0; }),
      real("psg", "v_mps", [](auto& c) -> auto& { return c.psg_v; }),
      flag("psg", "packet", [](auto& c) -> auto& { return c.psg_packet; }),
      count("psg", "sweep_points", [](auto& c) -> auto& { return c.psg_sweep_points; }),
      real("psg", "sweep_V0_max_Jpm", [](auto& c) -> auto& { return c.psg_sweep_V0_max; }),
      real("sg", "B0_T", [](auto& c) -> auto& { return c.sg_B0; }),
      real("sg", "moment_JpT", [](auto& c) -> auto& { return c.sg_moment; }),
      real("sg", "duration_s", [](auto& c) -> auto& { return c.sg_duration; }),
      text("spin", "input", [](auto& c) -> auto& { return c.spin_input; }),
      flag("spin", "psg", [](auto& c) -> auto& { return c.spin_psg; }),
      count("spin", "phase_points", [](auto& c) -> auto& { return c.spin_phase_points; }),
      text("output", "dir", [](auto& c) -> auto& { return c.out_dir; }),
      count("run", "seed", [](auto& c) -> auto& { return c.seed; }),
  };
  return table;
}

const Field* find_field(const std::string& section, const std::string& key) {
  for (const auto& f : fields()) {
    if (section == f.section && key == f.key) return &f;
  }
  return nullptr;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ec == std::errc() ? end : buf);
}

void ExperimentConfig::validate() const {
  if (unit_system != "natural" && unit_system != "si") {
    throw ValidationError("config: units.system must be 'natural' or 'si', got '" +
                          unit_system + "'");
  }
  if (!(mass_kg > 0.0)) throw ValidationError("config: units.mass_kg must be positive");
  if (!(x_max > x_min)) throw ValidationError("config: grid.x_max_m must exceed grid.x_min_m");
  if (n < SpatialGrid::kMinPoints || (n & (n - 1)) != 0) {
    throw ValidationError("config: grid.n must be a power of two >= 16");
  }
  if (!(packet.sigma > 0.0)) throw ValidationError("config: state.sigma_m must be positive");
  if (potential_kind != "free" && potential_kind != "linear" && potential_kind != "barrier") {
    throw ValidationError("config: potential.kind must be free, linear or barrier, got '" +
                          potential_kind + "'");
  }
  if (potential_kind == "barrier") {
    try {
      barrier.validate();
    } catch (const ValidationError& e) {
      throw ValidationError(std::string("config: [potential] ") + e.what());
    }
  }
  if (!(dt > 0.0)) throw ValidationError("config: solver.dt_s must be positive");
  if (!(duration >= 0.0)) throw ValidationError("config: solver.duration_s must be >= 0");
  if (record_every == 0) throw ValidationError("config: solver.record_every must be positive");
  if (!(absorber_fraction > 0.0 && absorber_fraction <= 0.25)) {
    throw ValidationError("config: solver.absorber_fraction must lie in (0, 0.25]");
  }
  if (absorber_p_max < 0.0) {
    throw ValidationError("config: solver.absorber_p_max_kgmps must be >= 0");
  }
  if (scan_mode != "delay" && scan_mode != "initial_width") {
    throw ValidationError("config: tunnel.mode must be delay or initial_width, got '" +
                          scan_mode + "'");
  }
  if (step_budget == 0) throw ValidationError("config: tunnel.step_budget must be positive");
  if (!(psg_L > 0.0)) throw ValidationError("config: psg.L_m must be positive");
  if (!(psg_v > 0.0)) throw ValidationError("config: psg.v_mps must be positive");
  if (psg_sweep_points < 2) throw ValidationError("config: psg.sweep_points must be >= 2");
  if (!(sg_moment > 0.0)) throw ValidationError("config: sg.moment_JpT must be positive");
  if (!(sg_duration >= 0.0)) throw ValidationError("config: sg.duration_s must be >= 0");
  if (spin_input != "z+" && spin_input != "z-" && spin_input != "x+" && spin_input != "x-") {
    throw ValidationError("config: spin.input must be one of z+, z-, x+, x-, got '" +
                          spin_input + "'");
  }
  if (spin_phase_points < 2) throw ValidationError("config: spin.phase_points must be >= 2");
  if (out_dir.empty()) throw ValidationError("config: output.dir must not be empty");
}

UnitSystem ExperimentConfig::units() const {
  return unit_system == "si" ? UnitSystem::si(mass_kg) : UnitSystem::natural();
}

SpatialGrid ExperimentConfig::grid() const { return SpatialGrid(x_min, x_max, n); }

Potential ExperimentConfig::potential() const {
  if (potential_kind == "free") return Potential::free();
  if (potential_kind == "linear") return Potential::linear(slope);
  return barrier.potential();
}

oracle::SolverConfig ExperimentConfig::solver() const {
  oracle::SolverConfig s;
  s.dt = dt;
  s.n_steps = static_cast<std::size_t>(std::llround(duration / dt));
  s.record_every = record_every;
  if (absorber_p_max > 0.0) {
    s.absorber = oracle::Absorber::for_momentum(absorber_p_max, absorber_fraction,
                                                x_max - x_min, units());
  }
  return s;
}

devices::PsgGeometry ExperimentConfig::psg() const {
  return {psg_L, psg_V0, psg_v, units()};
}

devices::SgSpec ExperimentConfig::sg(int axis) const {
  return {sg_B0, sg_moment, sg_duration, axis};
}

ExperimentConfig parse_config(const std::string& text) {
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
  ExperimentConfig c;
  for (const auto& [section, body] : tree) {
    if (body.empty()) {
      throw ValidationError("config: key '" + section + "' must sit inside a [section]");
    }
    for (const auto& [key, value] : body) {
      const Field* f = find_field(section, key);
      if (!f) throw ValidationError("config: unknown field " + section + "." + key);
      f->set(c, value.data());
    }
  }
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("config: cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const ExperimentConfig& c) {
  pt::ptree tree;
  for (const auto& f : fields()) {
    auto& section = tree.get_child_optional(f.section)
                        ? tree.get_child(f.section)
                        : tree.add_child(f.section, pt::ptree());
    section.push_back({f.key, pt::ptree(f.get(c))});
  }
  std::ostringstream out;
  pt::write_ini(out, tree);
  return out.str();
}

void save_config(const ExperimentConfig& c, const std::string& path) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path);
  if (!out) throw ValidationError("config: cannot write " + path);
  out << serialize_config(c);
}

ExperimentConfig default_config(const std::string& command) {
  ExperimentConfig c;
  if (command == "evolve") return c;
  if (command == "tunnel") {
    const auto s = tunneling::thin_barrier_scenario();
    c.x_min = s.grid.x_min();
    c.x_max = s.grid.x_max();
    c.n = s.grid.size();
    c.packet = s.packet;
    c.potential_kind = "barrier";
    c.barrier = s.barrier;
    c.barrier.descent_width = s.barrier.descent();
    c.dt = s.run.solver.dt;
    c.record_every = s.run.solver.record_every;
    c.absorber_p_max = 9.0;
    c.scan_values = tunneling::width_scan_delays();
    c.step_budget = s.run.solver.n_steps;
    return c;
  }
  if (command == "psg") {
    c.psg_V0 = std::sqrt(1.5 * std::numbers::pi);
    return c;
  }
  if (command == "spin") {
    c.psg_V0 = std::sqrt(1.5 * std::numbers::pi);
    return c;
  }
  throw ValidationError("config: no defaults for command '" + command + "'");
}

}  // namespace qlinear::app
