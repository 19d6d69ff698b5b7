#include "hopsim/config.hpp"

#include <yaml-cpp/yaml.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <set>
#include <sstream>

#include "hopsim/errors.hpp"

namespace hopsim {

namespace {

const std::set<std::string>& robot_keys() {
  static const std::set<std::string> keys = [] {
    std::set<std::string> k = {
        "schema_version", "kind", "gravity",
        "gantry_pivot_height", "gantry_arm_length", "link3_length", "link4_length",
        "counterweight_mass", "counterweight_arm",
        "knee_spring_stiffness", "knee_spring_rest_angle", "knee_spring_engagement",
        "belt_ratio", "rotor_inertia", "v_max", "i_max",
        "friction_enabled", "coulomb_smoothing",
        "baumgarte_alpha", "baumgarte_beta", "contact_pin_radial",
    };
    for (const std::string m : {"hip", "knee"}) {
      k.insert(m + "_gear_ratio");
      k.insert(m + "_torque_constant");
      k.insert(m + "_terminal_resistance");
      k.insert(m + "_gear_efficiency");
      k.insert(m + "_viscous_friction");
      k.insert(m + "_coulomb_friction");
    }
    for (int b = 1; b <= 4; ++b) {
      const std::string p = "link" + std::to_string(b) + "_";
      k.insert(p + "mass");
      for (const std::string c : {"com_x", "com_y", "com_z"}) k.insert(p + c);
      for (const std::string c : {"ixx", "iyy", "izz", "ixy", "ixz", "iyz"})
        k.insert(p + c);
    }
    return k;
  }();
  return keys;
}

const std::set<std::string>& gait_keys() {
  static const std::set<std::string> keys = {
      "schema_version", "kind",
      "stance_duration", "peak_vertical_force", "peak_horizontal_force", "bezier_degree",
      "p_ref_radial", "p_ref_forward", "p_ref_vertical",
      "kp_radial", "kp_forward", "kp_vertical",
      "kd_radial", "kd_forward", "kd_vertical",
      "filter_lambda", "control_period", "stance_timeout_factor",
      "speed_loop_enabled", "speed_loop_kp", "target_speed", "max_horizontal_force",
  };
  return keys;
}

std::string kind_of(const FlatConfig& cfg) {
  auto it = cfg.find("kind");
  return it == cfg.end() ? std::string() : it->second;
}

double parse_double(const std::string& key, const std::string& text) {
  try {
    size_t pos = 0;
    const double v = std::stod(text, &pos);
    if (pos != text.size()) throw std::invalid_argument("trailing characters");
    if (!std::isfinite(v)) throw ConfigError("non-finite value for '" + key + "'");
    return v;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    throw ConfigError("cannot parse '" + key + "' = '" + text + "' as a number");
  }
}

}  // namespace

FlatConfig load_config_file(const std::string& path) {
  YAML::Node root;
  try {
    root = YAML::LoadFile(path);
  } catch (const YAML::BadFile&) {
    throw ConfigError("cannot open config file: " + path);
  } catch (const YAML::Exception& e) {
    throw ConfigError("cannot parse config file " + path + ": " + e.what());
  }
  if (!root.IsMap()) throw ConfigError("config file must be a flat mapping: " + path);

  FlatConfig cfg;
  for (const auto& kv : root) {
    const std::string key = kv.first.as<std::string>();
    if (!kv.second.IsScalar())
      throw ConfigError("config key '" + key + "' must be a scalar (flat schema): " + path);
    cfg[key] = kv.second.as<std::string>();
  }

  auto it = cfg.find("schema_version");
  if (it == cfg.end())
    throw ConfigError("config file missing required schema_version: " + path);
  if (parse_double("schema_version", it->second) != kConfigSchemaVersion)
    throw ConfigError("unsupported schema_version '" + it->second + "' in " + path +
                      " (expected " + std::to_string(kConfigSchemaVersion) + ")");
  const std::string kind = kind_of(cfg);
  if (kind != "robot" && kind != "gait")
    throw ConfigError("config file must declare kind: robot or kind: gait — " + path);
  return cfg;
}

void apply_overrides(FlatConfig& cfg, const std::vector<std::string>& sets) {
  const auto& known = kind_of(cfg) == "robot" ? robot_keys() : gait_keys();
  for (const std::string& s : sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0)
      throw ConfigError("override must look like key=value, got '" + s + "'");
    const std::string key = s.substr(0, eq);
    if (!known.count(key) && !cfg.count(key))
      throw ConfigError("override names unknown key '" + key + "'");
    cfg[key] = s.substr(eq + 1);
  }
}

double cfg_double(const FlatConfig& cfg, const std::string& key) {
  auto it = cfg.find(key);
  if (it == cfg.end()) throw ConfigError("missing required config key '" + key + "'");
  return parse_double(key, it->second);
}

double cfg_double_or(const FlatConfig& cfg, const std::string& key, double fallback) {
  auto it = cfg.find(key);
  return it == cfg.end() ? fallback : parse_double(key, it->second);
}

bool cfg_bool_or(const FlatConfig& cfg, const std::string& key, bool fallback) {
  auto it = cfg.find(key);
  if (it == cfg.end()) return fallback;
  if (it->second == "true" || it->second == "1") return true;
  if (it->second == "false" || it->second == "0") return false;
  throw ConfigError("cannot parse '" + key + "' = '" + it->second + "' as a bool");
}

int cfg_int_or(const FlatConfig& cfg, const std::string& key, int fallback) {
  auto it = cfg.find(key);
  if (it == cfg.end()) return fallback;
  return static_cast<int>(parse_double(key, it->second));
}

std::string cfg_string_or(const FlatConfig& cfg, const std::string& key,
                          const std::string& fallback) {
  auto it = cfg.find(key);
  return it == cfg.end() ? fallback : it->second;
}

namespace {

struct RuleSink {
  ValidationReport report;

  void check(bool ok, const std::string& rule, const std::string& detail_on_fail) {
    report.items.push_back(
        {ok ? ValidationItem::Pass : ValidationItem::Fail, rule, ok ? "" : detail_on_fail});
  }
  void warn_if(bool bad, const std::string& rule, const std::string& detail) {
    report.items.push_back(
        {bad ? ValidationItem::Warn : ValidationItem::Pass, rule, bad ? detail : ""});
  }
};

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

void check_unknown_keys(const FlatConfig& cfg, const std::set<std::string>& known,
                        RuleSink& sink) {
  for (const auto& [key, value] : cfg) {
    (void)value;
    if (!known.count(key))
      sink.warn_if(true, "known keys", "unrecognized key '" + key + "'");
  }
}

}  // namespace

ValidationReport validate_robot_config(const FlatConfig& cfg) {
  RuleSink sink;
  try {
    check_unknown_keys(cfg, robot_keys(), sink);

    for (int b = 1; b <= 4; ++b) {
      const std::string p = "link" + std::to_string(b) + "_";
      const double mass = cfg_double(cfg, p + "mass");
      sink.check(mass > 0.0, p + "mass > 0", "got " + fmt(mass));

      Mat3 inertia;
      const double ixx = cfg_double(cfg, p + "ixx"), iyy = cfg_double(cfg, p + "iyy"),
                   izz = cfg_double(cfg, p + "izz"),
                   ixy = cfg_double_or(cfg, p + "ixy", 0.0),
                   ixz = cfg_double_or(cfg, p + "ixz", 0.0),
                   iyz = cfg_double_or(cfg, p + "iyz", 0.0);
      inertia << ixx, ixy, ixz, ixy, iyy, iyz, ixz, iyz, izz;
      Eigen::SelfAdjointEigenSolver<Mat3> eig(inertia);
      sink.check(eig.eigenvalues().minCoeff() > 0.0,
                 p + "inertia positive definite",
                 "min eigenvalue " + fmt(eig.eigenvalues().minCoeff()));
    }

    const double cw = cfg_double(cfg, "counterweight_mass");
    sink.check(cw >= 0.0, "counterweight_mass >= 0", "got " + fmt(cw));

    for (const std::string key :
         {"gantry_pivot_height", "gantry_arm_length", "link3_length", "link4_length",
          "counterweight_arm"}) {
      const double v = cfg_double(cfg, key);
      sink.check(v > 0.0, key + std::string(" > 0"), "got " + fmt(v));
    }

    const double l4 = cfg_double(cfg, "link4_length");
    sink.check(l4 >= kLink4Min && l4 <= kLink4Max,
               "link4_length within [0.060, 0.260] m", "got " + fmt(l4));
    const double arm = cfg_double(cfg, "gantry_arm_length");
    sink.check(arm >= kGantryArmMin && arm <= kGantryArmMax,
               "gantry_arm_length within [0.1, 1.1] m", "got " + fmt(arm));

    for (const std::string m : {"hip", "knee"}) {
      const double ratio = cfg_double(cfg, m + "_gear_ratio");
      sink.check(ratio > 0.0, m + "_gear_ratio > 0", "got " + fmt(ratio));
      sink.warn_if(ratio < kGearRatioMin || ratio > kGearRatioMax,
                   m + "_gear_ratio within catalog range [3.7, 188]",
                   "got " + fmt(ratio) + ", outside [3.7, 188]");
      const double kt = cfg_double(cfg, m + "_torque_constant");
      sink.check(kt > 0.0, m + "_torque_constant > 0", "got " + fmt(kt));
      const double r = cfg_double(cfg, m + "_terminal_resistance");
      sink.check(r > 0.0, m + "_terminal_resistance > 0", "got " + fmt(r));
      const double eff = cfg_double(cfg, m + "_gear_efficiency");
      sink.check(eff > 0.0 && eff <= 1.0, m + "_gear_efficiency in (0, 1]",
                 "got " + fmt(eff));
      const double visc = cfg_double_or(cfg, m + "_viscous_friction", 0.0);
      sink.check(visc >= 0.0, m + "_viscous_friction >= 0", "got " + fmt(visc));
      const double coul = cfg_double_or(cfg, m + "_coulomb_friction", 0.0);
      sink.check(coul >= 0.0, m + "_coulomb_friction >= 0", "got " + fmt(coul));
    }

    const double vmax = cfg_double_or(cfg, "v_max", 12.0);
    sink.check(vmax > 0.0, "v_max > 0", "got " + fmt(vmax));
    const double imax = cfg_double_or(cfg, "i_max", 30.0);
    sink.check(imax > 0.0, "i_max > 0", "got " + fmt(imax));
    const double rotor = cfg_double(cfg, "rotor_inertia");
    sink.check(rotor > 0.0, "rotor_inertia > 0", "got " + fmt(rotor));
    const double belt = cfg_double_or(cfg, "belt_ratio", 1.0);
    sink.check(belt > 0.0, "belt_ratio > 0", "got " + fmt(belt));

    const double k = cfg_double(cfg, "knee_spring_stiffness");
    sink.check(k >= 0.0, "knee_spring_stiffness >= 0", "got " + fmt(k));
    const std::string engagement =
        cfg_string_or(cfg, "knee_spring_engagement", "always");
    sink.check(engagement == "always" || engagement == "unilateral",
               "knee_spring_engagement in {always, unilateral}", "got " + engagement);

    const double g = cfg_double_or(cfg, "gravity", 9.81);
    sink.check(g >= 0.0, "gravity >= 0", "got " + fmt(g));
    const double smoothing = cfg_double_or(cfg, "coulomb_smoothing", 0.01);
    sink.check(smoothing > 0.0, "coulomb_smoothing > 0", "got " + fmt(smoothing));
    const double ba = cfg_double_or(cfg, "baumgarte_alpha", 50.0);
    const double bb = cfg_double_or(cfg, "baumgarte_beta", 50.0);
    sink.check(ba >= 0.0 && bb >= 0.0, "baumgarte gains >= 0",
               "got " + fmt(ba) + ", " + fmt(bb));
  } catch (const ConfigError& e) {
    sink.report.items.push_back({ValidationItem::Fail, "config readable", e.what()});
  }
  return sink.report;
}

ValidationReport validate_gait_config(const FlatConfig& cfg) {
  RuleSink sink;
  try {
    check_unknown_keys(cfg, gait_keys(), sink);

    const double ts = cfg_double_or(cfg, "stance_duration", 0.15);
    sink.check(ts > 0.0, "stance_duration > 0", "got " + fmt(ts));
    const double fv = cfg_double_or(cfg, "peak_vertical_force", 80.0);
    sink.check(fv >= 0.0, "peak_vertical_force >= 0", "got " + fmt(fv));
    const double fh = cfg_double_or(cfg, "peak_horizontal_force", 0.0);
    sink.check(fh >= 0.0, "peak_horizontal_force >= 0", "got " + fmt(fh));

    const int degree = cfg_int_or(cfg, "bezier_degree", 4);
    sink.check(degree == 4, "bezier_degree == 4 (only supported degree)",
               "got " + std::to_string(degree));

    for (const std::string axis : {"radial", "forward", "vertical"}) {
      const double kp = cfg_double_or(cfg, "kp_" + axis, 500.0);
      sink.check(kp >= 0.0, "kp_" + axis + " >= 0", "got " + fmt(kp));
      const double kd = cfg_double_or(cfg, "kd_" + axis, 50.0);
      sink.check(kd >= 0.0, "kd_" + axis + " >= 0", "got " + fmt(kd));
    }

    const double pr = cfg_double_or(cfg, "p_ref_radial", 0.0);
    sink.warn_if(pr != 0.0, "p_ref_radial reachable",
                 "radial foot offsets are outside the planar leg workspace; ignored");
    const double pz = cfg_double_or(cfg, "p_ref_vertical", -0.44);
    sink.check(pz < 0.0, "p_ref_vertical < 0 (foot below hip)", "got " + fmt(pz));

    const double lambda = cfg_double_or(cfg, "filter_lambda", 10.0);
    const double period = cfg_double_or(cfg, "control_period", 1e-3);
    sink.check(lambda > 0.0, "filter_lambda > 0", "got " + fmt(lambda));
    sink.check(period > 0.0, "control_period > 0", "got " + fmt(period));
    sink.check(lambda * period < 2.0, "filter stable: lambda * T < 2",
               "got " + fmt(lambda * period));

    const double timeout = cfg_double_or(cfg, "stance_timeout_factor", 2.0);
    sink.check(timeout > 1.0, "stance_timeout_factor > 1", "got " + fmt(timeout));

    const double max_h = cfg_double_or(cfg, "max_horizontal_force", 120.0);
    sink.check(max_h >= 0.0, "max_horizontal_force >= 0", "got " + fmt(max_h));
    const double loop_kp = cfg_double_or(cfg, "speed_loop_kp", 0.0);
    sink.check(loop_kp >= 0.0, "speed_loop_kp >= 0", "got " + fmt(loop_kp));
  } catch (const ConfigError& e) {
    sink.report.items.push_back({ValidationItem::Fail, "config readable", e.what()});
  }
  return sink.report;
}

ValidationReport validate_config_file(const std::string& path) {
  const FlatConfig cfg = load_config_file(path);
  return kind_of(cfg) == "robot" ? validate_robot_config(cfg) : validate_gait_config(cfg);
}

RobotParams robot_from_config(const FlatConfig& cfg) {
  if (kind_of(cfg) != "robot")
    throw ConfigError("expected a robot config (kind: robot)");
  const ValidationReport report = validate_robot_config(cfg);
  if (!report.ok()) {
    std::string msg = "robot config invalid:";
    for (const auto& item : report.items)
      if (item.level == ValidationItem::Fail)
        msg += "\n  " + item.rule + ": " + item.detail;
    throw ConfigError(msg);
  }

  RobotParams p;
  p.gravity = cfg_double_or(cfg, "gravity", 9.81);
  p.gantry_pivot_height = cfg_double(cfg, "gantry_pivot_height");
  p.gantry_arm_length = cfg_double(cfg, "gantry_arm_length");
  p.link3_length = cfg_double(cfg, "link3_length");
  p.link4_length = cfg_double(cfg, "link4_length");

  for (int b = 1; b <= 4; ++b) {
    const std::string pre = "link" + std::to_string(b) + "_";
    LinkInertial& link = p.links[b];
    link.mass = cfg_double(cfg, pre + "mass");
    link.com = Vec3(cfg_double(cfg, pre + "com_x"), cfg_double(cfg, pre + "com_y"),
                    cfg_double(cfg, pre + "com_z"));
    const double ixx = cfg_double(cfg, pre + "ixx"), iyy = cfg_double(cfg, pre + "iyy"),
                 izz = cfg_double(cfg, pre + "izz"),
                 ixy = cfg_double_or(cfg, pre + "ixy", 0.0),
                 ixz = cfg_double_or(cfg, pre + "ixz", 0.0),
                 iyz = cfg_double_or(cfg, pre + "iyz", 0.0);
    link.inertia << ixx, ixy, ixz, ixy, iyy, iyz, ixz, iyz, izz;
  }

  p.counterweight_mass = cfg_double(cfg, "counterweight_mass");
  p.counterweight_arm = cfg_double(cfg, "counterweight_arm");

  p.knee_spring.stiffness = cfg_double(cfg, "knee_spring_stiffness");
  p.knee_spring.rest_angle = cfg_double_or(cfg, "knee_spring_rest_angle", 0.0);
  p.knee_spring.engagement =
      cfg_string_or(cfg, "knee_spring_engagement", "always") == "unilateral"
          ? SpringEngagement::Unilateral
          : SpringEngagement::Always;

  auto load_motor = [&](const std::string& m) {
    MotorParams mp;
    mp.gear_ratio = cfg_double(cfg, m + "_gear_ratio");
    mp.torque_constant = cfg_double(cfg, m + "_torque_constant");
    mp.terminal_resistance = cfg_double(cfg, m + "_terminal_resistance");
    mp.gear_efficiency = cfg_double(cfg, m + "_gear_efficiency");
    mp.viscous_friction = cfg_double_or(cfg, m + "_viscous_friction", 0.0);
    mp.coulomb_friction = cfg_double_or(cfg, m + "_coulomb_friction", 0.0);
    mp.v_max = cfg_double_or(cfg, "v_max", 12.0);
    mp.i_max = cfg_double_or(cfg, "i_max", 30.0);
    mp.rotor_inertia = cfg_double(cfg, "rotor_inertia");
    return mp;
  };
  p.hip_motor = load_motor("hip");
  p.knee_motor = load_motor("knee");
  p.belt_ratio = cfg_double_or(cfg, "belt_ratio", 1.0);

  p.friction_enabled = cfg_bool_or(cfg, "friction_enabled", true);
  p.coulomb_smoothing = cfg_double_or(cfg, "coulomb_smoothing", 0.01);
  p.baumgarte_alpha = cfg_double_or(cfg, "baumgarte_alpha", 50.0);
  p.baumgarte_beta = cfg_double_or(cfg, "baumgarte_beta", 50.0);
  p.contact_pin_radial = cfg_bool_or(cfg, "contact_pin_radial", false);
  return p;
}

GaitParams gait_from_config(const FlatConfig& cfg) {
  if (kind_of(cfg) != "gait")
    throw ConfigError("expected a gait config (kind: gait)");
  const ValidationReport report = validate_gait_config(cfg);
  if (!report.ok()) {
    std::string msg = "gait config invalid:";
    for (const auto& item : report.items)
      if (item.level == ValidationItem::Fail)
        msg += "\n  " + item.rule + ": " + item.detail;
    throw ConfigError(msg);
  }

  GaitParams g;
  g.stance_duration = cfg_double_or(cfg, "stance_duration", g.stance_duration);
  g.peak_vertical_force = cfg_double_or(cfg, "peak_vertical_force", g.peak_vertical_force);
  g.peak_horizontal_force =
      cfg_double_or(cfg, "peak_horizontal_force", g.peak_horizontal_force);
  g.bezier_degree = cfg_int_or(cfg, "bezier_degree", g.bezier_degree);
  g.p_ref = Vec3(cfg_double_or(cfg, "p_ref_radial", 0.0),
                 cfg_double_or(cfg, "p_ref_forward", g.p_ref.y()),
                 cfg_double_or(cfg, "p_ref_vertical", g.p_ref.z()));
  g.kp = Vec3(cfg_double_or(cfg, "kp_radial", g.kp.x()),
              cfg_double_or(cfg, "kp_forward", g.kp.y()),
              cfg_double_or(cfg, "kp_vertical", g.kp.z()));
  g.kd = Vec3(cfg_double_or(cfg, "kd_radial", g.kd.x()),
              cfg_double_or(cfg, "kd_forward", g.kd.y()),
              cfg_double_or(cfg, "kd_vertical", g.kd.z()));
  g.filter_lambda = cfg_double_or(cfg, "filter_lambda", g.filter_lambda);
  g.control_period = cfg_double_or(cfg, "control_period", g.control_period);
  g.stance_timeout_factor =
      cfg_double_or(cfg, "stance_timeout_factor", g.stance_timeout_factor);
  g.speed_loop_enabled = cfg_bool_or(cfg, "speed_loop_enabled", false);
  g.speed_loop_kp = cfg_double_or(cfg, "speed_loop_kp", 0.0);
  g.target_speed = cfg_double_or(cfg, "target_speed", 0.0);
  g.max_horizontal_force =
      cfg_double_or(cfg, "max_horizontal_force", g.max_horizontal_force);
  return g;
}

}  // namespace hopsim
