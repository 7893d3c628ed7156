#include "uavsim/scenario.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "json.hpp"
#include "uavsim/errors.h"

namespace uavsim {
namespace {

using Json = nlohmann::ordered_json;

int LineOfOffset(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + offset, '\n'));
}

// Typed accessors that name the offending field in their errors.
class Fields {
 public:
  Fields(const Json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) {
      throw ParseError("field '" + Name() + "': expected an object");
    }
  }

  void RejectUnknown(std::initializer_list<std::string_view> known) const {
    for (const auto& [key, value] : obj_.items()) {
      if (std::find(known.begin(), known.end(), key) == known.end()) {
        throw ParseError("unknown key '" + Qualified(key) + "'");
      }
    }
  }

  bool Has(const std::string& key) const { return obj_.contains(key); }

  double Number(const std::string& key, double fallback) const {
    if (!Has(key)) return fallback;
    const Json& v = obj_.at(key);
    if (!v.is_number()) throw ParseError("field '" + Qualified(key) + "': expected a number");
    return v.get<double>();
  }

  std::int64_t Integer(const std::string& key, std::int64_t fallback) const {
    if (!Has(key)) return fallback;
    const Json& v = obj_.at(key);
    if (!v.is_number_integer()) {
      throw ParseError("field '" + Qualified(key) + "': expected an integer");
    }
    return v.get<std::int64_t>();
  }

  bool Boolean(const std::string& key, bool fallback) const {
    if (!Has(key)) return fallback;
    const Json& v = obj_.at(key);
    if (!v.is_boolean()) throw ParseError("field '" + Qualified(key) + "': expected true or false");
    return v.get<bool>();
  }

  std::string String(const std::string& key, const std::string& fallback) const {
    if (!Has(key)) return fallback;
    const Json& v = obj_.at(key);
    if (!v.is_string()) throw ParseError("field '" + Qualified(key) + "': expected a string");
    return v.get<std::string>();
  }

  Vec3 Vector(const std::string& key, const Vec3& fallback) const {
    if (!Has(key)) return fallback;
    return ToVec3(obj_.at(key), Qualified(key));
  }

  const Json& Child(const std::string& key) const { return obj_.at(key); }
  std::string Qualified(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  static Vec3 ToVec3(const Json& v, const std::string& name) {
    if (!v.is_array() || v.size() != 3 ||
        !std::all_of(v.begin(), v.end(), [](const Json& e) { return e.is_number(); })) {
      throw ParseError("field '" + name + "': expected an array of 3 numbers");
    }
    return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
  }

 private:
  std::string Name() const { return path_.empty() ? "<root>" : path_; }

  const Json& obj_;
  std::string path_;
};

ControlGains ParseGains(const Json& j) {
  Fields f(j, "gains");
  f.RejectUnknown({"lambda", "k", "d_U", "d_q", "eps_damp"});
  ControlGains g;
  g.lambda = f.Number("lambda", g.lambda);
  g.k = f.Number("k", g.k);
  g.d_u = f.Number("d_U", g.d_u);
  g.d_q = f.Number("d_q", g.d_q);
  g.damping = f.Number("eps_damp", g.damping);
  return g;
}

CameraIntrinsics ParseIntrinsics(const Json& j) {
  Fields f(j, "intrinsics");
  f.RejectUnknown({"f_x", "f_y", "c_u", "c_v", "width", "height", "fov_az"});
  CameraIntrinsics c;
  c.f_x = f.Number("f_x", c.f_x);
  c.f_y = f.Number("f_y", c.f_y);
  c.c_u = f.Number("c_u", c.c_u);
  c.c_v = f.Number("c_v", c.c_v);
  c.width = f.Number("width", c.width);
  c.height = f.Number("height", c.height);
  c.fov_az = f.Number("fov_az", c.fov_az);
  return c;
}

MobilityPattern ParseMobility(const Json& j) {
  Fields f(j, "mobility");
  const std::string type = f.String("type", "");
  if (type == "trig_accelerating") {
    f.RejectUnknown({"type"});
    return TrigAccelerating{};
  }
  if (type == "stationary") {
    f.RejectUnknown({"type"});
    return Stationary{};
  }
  if (type == "constant_velocity") {
    f.RejectUnknown({"type", "velocity"});
    if (!f.Has("velocity")) throw ValidationError("mobility.velocity is required for constant_velocity");
    return ConstantVelocity{f.Vector("velocity", Vec3::Zero())};
  }
  if (type == "waypoints") {
    f.RejectUnknown({"type", "points"});
    if (!f.Has("points") || !f.Child("points").is_array()) {
      throw ParseError("field 'mobility.points': expected an array");
    }
    Waypoints w;
    int i = 0;
    for (const Json& p : f.Child("points")) {
      Fields pf(p, "mobility.points[" + std::to_string(i++) + "]");
      pf.RejectUnknown({"time", "position"});
      if (!pf.Has("time") || !pf.Has("position")) {
        throw ValidationError("waypoints need both 'time' and 'position'");
      }
      w.points.push_back({pf.Number("time", 0.0), pf.Vector("position", Vec3::Zero())});
    }
    return w;
  }
  throw ParseError("field 'mobility.type': expected one of trig_accelerating, "
                   "constant_velocity, waypoints, stationary");
}

EstimatorKind ParseEstimator(const Json& j) {
  Fields f(j, "estimator");
  const std::string type = f.String("type", "oracle");
  if (type == "oracle") {
    f.RejectUnknown({"type"});
    return OracleEstimator{};
  }
  if (type == "ukf") {
    f.RejectUnknown({"type", "q", "r", "alpha", "beta", "kappa"});
    UkfParams p;
    p.q = f.Number("q", p.q);
    p.r = f.Number("r", p.r);
    p.alpha = f.Number("alpha", p.alpha);
    p.beta = f.Number("beta", p.beta);
    p.kappa = f.Number("kappa", p.kappa);
    return p;
  }
  throw ParseError("field 'estimator.type': expected 'oracle' or 'ukf'");
}

std::vector<Pose> ParsePoses(const Json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() != "auto-ring") {
      throw ParseError("field 'initial_poses': expected \"auto-ring\" or a list of poses");
    }
    return {};
  }
  if (!j.is_array()) {
    throw ParseError("field 'initial_poses': expected \"auto-ring\" or a list of poses");
  }
  std::vector<Pose> poses;
  int i = 0;
  for (const Json& p : j) {
    Fields f(p, "initial_poses[" + std::to_string(i++) + "]");
    f.RejectUnknown({"position", "orientation"});
    if (!f.Has("position")) throw ValidationError(f.Qualified("position") + " is required");
    Pose pose;
    pose.position = f.Vector("position", Vec3::Zero());
    const Vec3 o = f.Vector("orientation", Vec3::Zero());
    pose.orientation = {o.x(), o.y(), o.z()};
    poses.push_back(pose);
  }
  if (poses.empty()) {
    throw ValidationError("initial_poses: explicit list must not be empty");
  }
  return poses;
}

Json ToJson(const Vec3& v) { return Json::array({v.x(), v.y(), v.z()}); }

}  // namespace

void ScenarioConfig::Validate() const {
  if (num_uavs < 1) throw ValidationError("num_uavs must be >= 1");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ValidationError("dt must be > 0");
  if (max_rounds < 0) throw ValidationError("max_rounds must be >= 0");
  gains.Validate();
  intrinsics.Validate();
  if (!(gamma > 0.0)) throw ValidationError("gamma must be > 0");
  if (const auto* ukf = std::get_if<UkfParams>(&estimator)) ukf->Validate();
  if (const auto* cv = std::get_if<ConstantVelocity>(&mobility)) {
    if (cv->velocity.z() != 0.0) {
      throw ValidationError("mobility: ground target velocity must have zero z");
    }
  }
  if (const auto* w = std::get_if<Waypoints>(&mobility)) {
    if (w->points.empty()) throw ValidationError("mobility: waypoints list is empty");
    for (std::size_t i = 0; i < w->points.size(); ++i) {
      if (w->points[i].position.z() != 0.0) {
        throw ValidationError("mobility: waypoints must lie on the ground (z = 0)");
      }
      if (i > 0 && !(w->points[i].time > w->points[i - 1].time)) {
        throw ValidationError("mobility: waypoint times must be strictly increasing");
      }
    }
  }
  if (target_position.z() != 0.0) {
    throw ValidationError("target_position: ground target must start at z = 0");
  }
  if (!initial_poses.empty() &&
      initial_poses.size() != static_cast<std::size_t>(num_uavs)) {
    throw ValidationError("initial_poses length must match num_uavs");
  }
  if (!(pixel_noise_sigma >= 0.0)) throw ValidationError("pixel_noise_sigma must be >= 0");
  if (speed_limit && !(*speed_limit > 0.0)) throw ValidationError("speed_limit must be > 0");
  if (convergence.window < 1) throw ValidationError("convergence.window must be >= 1");
  if (!(convergence.tol_e > 0.0) || !(convergence.tol_v > 0.0)) {
    throw ValidationError("convergence tolerances must be > 0");
  }
}

std::vector<Pose> AutoRingPoses(int count, const Vec3& target, double radius,
                                double height) {
  std::vector<Pose> poses;
  for (int i = 0; i < count; ++i) {
    const double az = 2.0 * std::numbers::pi * i / count;
    Pose p;
    p.position = target + Vec3(radius * std::cos(az), radius * std::sin(az), 0.0);
    p.position.z() = height;
    p.orientation = {0.0, 0.0, WrapAngle(az + std::numbers::pi)};
    poses.push_back(p);
  }
  return poses;
}

std::vector<Pose> InitialPoses(const ScenarioConfig& config) {
  if (!config.auto_ring()) return config.initial_poses;
  return AutoRingPoses(config.num_uavs, config.target_position,
                       config.gains.d_q, config.initial_height);
}

ScenarioConfig ParseConfig(std::string_view text) {
  Json root;
  const bool blank = std::all_of(text.begin(), text.end(),
                                 [](unsigned char c) { return std::isspace(c); });
  if (blank) {
    root = Json::object();
  } else {
    try {
      root = Json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
      const int line = LineOfOffset(text, e.byte == 0 ? 0 : e.byte - 1);
      throw ParseError("line " + std::to_string(line) + ": " + e.what(), line);
    }
  }

  Fields f(root, "");
  f.RejectUnknown({"num_uavs", "dt", "max_rounds", "gains", "intrinsics",
                   "gamma", "mobility", "estimator", "swarm_sign",
                   "swarm_enabled", "feature_source", "initial_poses",
                   "initial_height", "target_position", "pixel_noise_sigma",
                   "speed_limit", "convergence", "stop_on_convergence", "seed",
                   "output_dir"});

  ScenarioConfig c;
  if (!f.Has("num_uavs")) throw ValidationError("num_uavs is missing");
  c.num_uavs = static_cast<int>(f.Integer("num_uavs", 0));
  c.dt = f.Number("dt", c.dt);
  c.max_rounds = static_cast<int>(f.Integer("max_rounds", c.max_rounds));
  if (f.Has("gains")) c.gains = ParseGains(f.Child("gains"));
  if (f.Has("intrinsics")) c.intrinsics = ParseIntrinsics(f.Child("intrinsics"));
  c.gamma = f.Number("gamma", 2.0 * c.gains.d_u);
  if (f.Has("mobility")) c.mobility = ParseMobility(f.Child("mobility"));
  if (f.Has("estimator")) c.estimator = ParseEstimator(f.Child("estimator"));

  const std::string sign = f.String("swarm_sign", "corrected");
  if (sign == "corrected") {
    c.swarm_sign = SwarmSign::kCorrected;
  } else if (sign == "literal") {
    c.swarm_sign = SwarmSign::kLiteral;
  } else {
    throw ParseError("field 'swarm_sign': expected 'corrected' or 'literal'");
  }
  c.swarm_enabled = f.Boolean("swarm_enabled", c.swarm_enabled);

  const std::string source = f.String("feature_source", "measured");
  if (source == "measured") {
    c.feature_source = FeatureSource::kMeasured;
  } else if (source == "integrated") {
    c.feature_source = FeatureSource::kIntegrated;
  } else {
    throw ParseError("field 'feature_source': expected 'measured' or 'integrated'");
  }

  if (f.Has("initial_poses")) c.initial_poses = ParsePoses(f.Child("initial_poses"));
  c.initial_height = f.Number("initial_height", c.initial_height);
  c.target_position = f.Vector("target_position", c.target_position);
  c.pixel_noise_sigma = f.Number("pixel_noise_sigma", c.pixel_noise_sigma);
  if (f.Has("speed_limit") && !f.Child("speed_limit").is_null()) {
    c.speed_limit = f.Number("speed_limit", 0.0);
  }
  if (f.Has("convergence")) {
    Fields cf(f.Child("convergence"), "convergence");
    cf.RejectUnknown({"window", "tol_e", "tol_v"});
    c.convergence.window = static_cast<int>(cf.Integer("window", c.convergence.window));
    c.convergence.tol_e = cf.Number("tol_e", c.convergence.tol_e);
    c.convergence.tol_v = cf.Number("tol_v", c.convergence.tol_v);
  }
  c.stop_on_convergence = f.Boolean("stop_on_convergence", c.stop_on_convergence);
  const std::int64_t seed = f.Integer("seed", 0);
  if (seed < 0) throw ValidationError("seed must be >= 0");
  c.seed = static_cast<std::uint64_t>(seed);
  c.output_dir = f.String("output_dir", "");

  c.Validate();
  return c;
}

ScenarioConfig LoadConfig(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open scenario file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseConfig(buf.str());
}

std::string CanonicalConfigText(const ScenarioConfig& c) {
  Json j;
  j["num_uavs"] = c.num_uavs;
  j["dt"] = c.dt;
  j["max_rounds"] = c.max_rounds;
  j["gains"] = {{"lambda", c.gains.lambda}, {"k", c.gains.k},
                {"d_U", c.gains.d_u}, {"d_q", c.gains.d_q},
                {"eps_damp", c.gains.damping}};
  j["intrinsics"] = {{"f_x", c.intrinsics.f_x}, {"f_y", c.intrinsics.f_y},
                     {"c_u", c.intrinsics.c_u}, {"c_v", c.intrinsics.c_v},
                     {"width", c.intrinsics.width}, {"height", c.intrinsics.height},
                     {"fov_az", c.intrinsics.fov_az}};
  j["gamma"] = c.gamma;
  j["mobility"] = std::visit(
      [](const auto& m) -> Json {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, TrigAccelerating>) {
          return {{"type", "trig_accelerating"}};
        } else if constexpr (std::is_same_v<T, Stationary>) {
          return {{"type", "stationary"}};
        } else if constexpr (std::is_same_v<T, ConstantVelocity>) {
          return {{"type", "constant_velocity"}, {"velocity", ToJson(m.velocity)}};
        } else {
          Json pts = Json::array();
          for (const Waypoint& w : m.points) {
            pts.push_back({{"time", w.time}, {"position", ToJson(w.position)}});
          }
          return {{"type", "waypoints"}, {"points", pts}};
        }
      },
      c.mobility);
  if (const auto* ukf = std::get_if<UkfParams>(&c.estimator)) {
    j["estimator"] = {{"type", "ukf"}, {"q", ukf->q}, {"r", ukf->r},
                      {"alpha", ukf->alpha}, {"beta", ukf->beta},
                      {"kappa", ukf->kappa}};
  } else {
    j["estimator"] = {{"type", "oracle"}};
  }
  j["swarm_sign"] = c.swarm_sign == SwarmSign::kLiteral ? "literal" : "corrected";
  j["swarm_enabled"] = c.swarm_enabled;
  j["feature_source"] =
      c.feature_source == FeatureSource::kIntegrated ? "integrated" : "measured";
  if (c.auto_ring()) {
    j["initial_poses"] = "auto-ring";
  } else {
    Json poses = Json::array();
    for (const Pose& p : c.initial_poses) {
      poses.push_back({{"position", ToJson(p.position)},
                       {"orientation", Json::array({p.orientation.x, p.orientation.y,
                                                    p.orientation.z})}});
    }
    j["initial_poses"] = poses;
  }
  j["initial_height"] = c.initial_height;
  j["target_position"] = ToJson(c.target_position);
  j["pixel_noise_sigma"] = c.pixel_noise_sigma;
  j["speed_limit"] = c.speed_limit ? Json(*c.speed_limit) : Json(nullptr);
  j["convergence"] = {{"window", c.convergence.window},
                      {"tol_e", c.convergence.tol_e},
                      {"tol_v", c.convergence.tol_v}};
  j["stop_on_convergence"] = c.stop_on_convergence;
  j["seed"] = c.seed;
  j["output_dir"] = c.output_dir;
  return j.dump(2) + "\n";
}

}  // namespace uavsim
