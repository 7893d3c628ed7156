// Acceptance report: one PASS/FAIL line per criterion.
//
//   acceptance_suite                 run every criterion
//   acceptance_suite --criterion N   run criterion N only
//
// Exit status is 0 iff every criterion that ran passed.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Geometry>

#include "uavsim/camera.h"
#include "uavsim/control.h"
#include "uavsim/dynamics.h"
#include "uavsim/engine.h"
#include "uavsim/errors.h"
#include "uavsim/estimation.h"
#include "uavsim/metrics.h"
#include "uavsim/report.h"
#include "uavsim/scenario.h"
#include "uavsim/sweep.h"

namespace uavsim {
namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

// Collects failed checks; the first few are kept for the report line.
class Checker {
 public:
  void Expect(bool ok, const std::string& what) {
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) messages_.push_back(what);
  }
  void Note(const std::string& text) { notes_.push_back(text); }

  Verdict Finish() const {
    Verdict v;
    v.pass = failures_ == 0;
    std::ostringstream s;
    for (std::size_t i = 0; i < notes_.size(); ++i) s << (i ? "; " : "") << notes_[i];
    if (!v.pass) {
      s << (notes_.empty() ? "" : "; ") << failures_ << " failed check(s): ";
      for (std::size_t i = 0; i < messages_.size(); ++i) {
        s << (i ? " | " : "") << messages_[i];
      }
    }
    v.detail = s.str();
    return v;
  }

 private:
  int failures_ = 0;
  std::vector<std::string> messages_;
  std::vector<std::string> notes_;
};

std::string Fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), format, a, b, c);
  return buf;
}

std::string Path(const char* relative) {
  return std::string(UAVSIM_SOURCE_DIR) + "/" + relative;
}

ScenarioConfig Reference() { return LoadConfig(Path("scenarios/reference_3uav.json")); }

const RunLog& ReferenceLog(double* seconds = nullptr) {
  static double elapsed = 0.0;
  static const RunLog log = [] {
    auto start = std::chrono::steady_clock::now();
    RunLog out = Run(Reference());
    elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                            start)
                  .count();
    return out;
  }();
  if (seconds) *seconds = elapsed;
  return log;
}

const std::vector<SweepRun>& Sweep() {
  static const std::vector<SweepRun> runs =
      RunSweep(LoadConfig(Path("scenarios/ring_sweep_base.json")), 1, 10, 200);
  return runs;
}

// 1. Speeds within 5% of the target speed over rounds [100, 200], run < 1 s.
Verdict SpeedConvergence() {
  Checker c;
  double seconds = 0.0;
  const RunLog& log = ReferenceLog(&seconds);
  double worst = 0.0;
  for (int r = 100; r <= 200; ++r) {
    const MetricsRecord& rec = log.records.at(r);
    for (const UavMetrics& m : rec.uavs) {
      double rel = std::abs(m.speed - rec.target_speed) / rec.target_speed;
      worst = std::max(worst, rel);
      c.Expect(rel < 0.05, Fmt("round %.0f uav %.0f rel %.4f", r, m.id, rel));
    }
  }
  c.Expect(seconds < 1.0, Fmt("runtime %.3f s", seconds));
  c.Note(Fmt("worst relative speed gap %.4f, runtime %.3f s", worst, seconds));
  return c.Finish();
}

// 2. Max e_a over [150, 200] below 1e-2; e_a(50) > e_a(200) for every UAV.
Verdict ErrorAreaDecay() {
  Checker c;
  const RunLog& log = ReferenceLog();
  double worst = 0.0;
  for (int r = 150; r <= 200; ++r) {
    for (const UavMetrics& m : log.records.at(r).uavs) {
      worst = std::max(worst, m.e_a);
      c.Expect(m.e_a < 1e-2, Fmt("round %.0f uav %.0f e_a %.3g", r, m.id, m.e_a));
    }
  }
  for (std::size_t i = 0; i < log.records[50].uavs.size(); ++i) {
    double early = log.records[50].uavs[i].e_a;
    double late = log.records[200].uavs[i].e_a;
    c.Expect(early > late, Fmt("uav %.0f e_a(50) %.3g <= e_a(200) %.3g", i,
                               early, late));
  }
  c.Note(Fmt("max e_a over [150,200] = %.3g", worst));
  return c.Finish();
}

// 3. Final-round pixel offsets below 5 px on both axes.
Verdict Centering() {
  Checker c;
  const RunLog& log = ReferenceLog();
  const CameraIntrinsics intr = Reference().intrinsics;
  double worst = 0.0;
  for (const UavMetrics& m : log.records.back().uavs) {
    double du = std::abs(m.pixel.u - intr.c_u);
    double dv = std::abs(m.pixel.v - intr.c_v);
    worst = std::max({worst, du, dv});
    c.Expect(m.visible && du < 5.0 && dv < 5.0,
             Fmt("uav %.0f offset (%.3f, %.3f) px", m.id, du, dv));
  }
  c.Note(Fmt("largest final offset %.4f px", worst));
  return c.Finish();
}

// 4. Uniform rings give min(80 M, 360) exactly; swept formations are
//    non-decreasing in M and reach 360 at some M <= 7.
Verdict CoverageLaw() {
  Checker c;
  for (int m = 1; m <= 10; ++m) {
    ScenarioConfig cfg;
    cfg.num_uavs = m;
    MetricsRecord rec = MeasureWorld(InitialWorld(cfg), cfg);
    double expected = std::min(80.0 * m, 360.0);
    c.Expect(std::abs(rec.effective_view - expected) <= 1e-9,
             Fmt("ring M=%.0f effective %.12g expected %.0f", m,
                 rec.effective_view, expected));
  }
  const auto& runs = Sweep();
  std::optional<int> full_at;
  std::ostringstream trail;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const SweepPoint& p = runs[i].point;
    trail << (i ? "," : "") << p.effective_view;
    if (i > 0) {
      c.Expect(p.effective_view >= runs[i - 1].point.effective_view,
               Fmt("effective view drops at M=%.0f", p.num_uavs));
    }
    if (!full_at && std::abs(p.effective_view - 360.0) <= 1e-9) {
      full_at = p.num_uavs;
    }
  }
  c.Expect(full_at && *full_at <= 7, "360 deg never reached for M <= 7");
  c.Note("swept effective views [" + trail.str() + "] deg");
  return c.Finish();
}

// 5. Sweep trends after 200 rounds.
Verdict ErrorTrends() {
  Checker c;
  const auto& runs = Sweep();
  std::ostringstream ey, ez;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const SweepPoint& p = runs[i].point;
    ey << (i ? "," : "") << Fmt("%.3g", p.mean_e_y);
    ez << (i ? "," : "") << Fmt("%.6g", p.mean_e_z);
    c.Expect(p.mean_e_x < 1e-2, Fmt("M=%.0f mean e_x %.3g", p.num_uavs, p.mean_e_x));
    if (i == 0) continue;
    const SweepPoint& prev = runs[i - 1].point;
    c.Expect(p.mean_e_y <= prev.mean_e_y,
             Fmt("mean e_y rises at M=%.0f (%.3g > %.3g)", p.num_uavs,
                 p.mean_e_y, prev.mean_e_y));
    c.Expect(p.mean_e_z >= prev.mean_e_z,
             Fmt("mean e_z falls at M=%.0f (%.6g < %.6g)", p.num_uavs,
                 p.mean_e_z, prev.mean_e_z));
  }
  c.Note("mean e_y [" + ey.str() + "]");
  c.Note("mean e_z [" + ez.str() + "]");
  return c.Finish();
}

// 6. Per-round error ratio within 1 - lambda dt +- 0.02 while |e| > 1e-4.
Verdict IbvsContraction() {
  Checker c;
  ScenarioConfig cfg = LoadConfig(Path("scenarios/single_uav_stationary.json"));
  const double expected = 1.0 - cfg.gains.lambda * cfg.dt;
  auto error_norm = [&](const World& w) {
    Vec3 p = WorldToOptical(w.agents.at(0).pose, w.target.position);
    return StateError(ComputeFeatureState(p), DesiredState(cfg.gains)).norm();
  };
  World w = InitialWorld(cfg);
  double e = error_norm(w);
  double lo = 1e9, hi = -1e9;
  int steps = 0;
  for (int r = 0; r < cfg.max_rounds && e > 1e-4; ++r) {
    w = Step(w, cfg).world;
    double next = error_norm(w);
    double ratio = next / e;
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
    c.Expect(std::abs(ratio - expected) <= 0.02,
             Fmt("round %.0f ratio %.5f", r, ratio));
    e = next;
    ++steps;
  }
  c.Expect(steps > 0, "initial error already below 1e-4");
  c.Note(Fmt("%.0f rounds, ratio in [%.5f, %.5f]", steps, lo, hi));
  return c.Finish();
}

// 7. Invariant suite with independent oracles.
Verdict InvariantSuite() {
  Checker c;
  std::mt19937 rng(2024);
  auto uni = [&](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };

  // Rotation orthonormality.
  double rot_err = 0.0;
  for (int i = 0; i < 1000; ++i) {
    Mat3 r = RotationMatrix(uni(-10, 10), uni(-10, 10), uni(-10, 10)).matrix();
    rot_err = std::max({rot_err, (r.transpose() * r - Mat3::Identity()).cwiseAbs().maxCoeff(),
                        std::abs(r.determinant() - 1.0)});
  }
  c.Expect(rot_err <= 1e-9, Fmt("rotation orthonormality error %.3g", rot_err));

  // Feature rows of the state derivative against L_s (V_c - V_q).
  double eq_err = 0.0;
  for (int i = 0; i < 1000; ++i) {
    SystemState s;
    s.feature = {uni(-2, 2), uni(-2, 2), 1.0 / uni(5, 500)};
    s.target_velocity = {uni(-20, 20), uni(-20, 20), uni(-20, 20)};
    Twist cmd{{uni(-20, 20), uni(-20, 20), uni(-20, 20)},
              {uni(-2, 2), uni(-2, 2), uni(-2, 2)}};
    Vector6d vq;
    vq << s.target_velocity, Vec3::Zero();
    Vec3 oracle = FeatureJacobian(s.feature) * (cmd.AsVector() - vq);
    eq_err = std::max(eq_err, (StateDerivative(s, cmd).head<3>() - oracle)
                                  .cwiseAbs()
                                  .maxCoeff());
  }
  c.Expect(eq_err <= 1e-9, Fmt("feature-rate mismatch %.3g", eq_err));

  // Penrose conditions on full-rank interaction matrices.
  double pen_err = 0.0;
  for (int i = 0; i < 100; ++i) {
    InteractionMatrix l = FeatureJacobian({uni(-2, 2), uni(-2, 2), uni(0.002, 1)});
    PseudoInverse p = DampedPseudoInverse(l, 0.0);
    Mat3 lp = l * p;
    Eigen::Matrix<double, 6, 6> pl = p * l;
    // Relative to the matrix each identity reproduces; absolute residuals
    // grow with the square of the pseudo-inverse norm.
    pen_err = std::max({pen_err, (l * p * l - l).norm() / l.norm(),
                        (p * l * p - p).norm() / p.norm(),
                        (lp - lp.transpose()).norm() / lp.norm(),
                        (pl - pl.transpose()).norm() / pl.norm()});
  }
  c.Expect(pen_err <= 1e-8, Fmt("relative Penrose residual %.3g", pen_err));

  // Swarm equilibrium and antisymmetry.
  ControlGains gains;
  c.Expect(SwarmPairTerm(Vec3(0, 0, 50), Vec3(120, 160, 50), gains) == Vec3::Zero(),
           "swarm term non-zero at the desired separation");
  bool antisym = true;
  for (int i = 0; i < 1000; ++i) {
    Vec3 a(uni(-500, 500), uni(-500, 500), uni(0, 100));
    Vec3 b(uni(-500, 500), uni(-500, 500), uni(0, 100));
    antisym = antisym && SwarmPairTerm(a, b, gains) == -SwarmPairTerm(b, a, gains);
  }
  c.Expect(antisym, "swarm pair term not exactly antisymmetric");

  // UKF against a closed-form Kalman filter.
  double kf_err = 0.0;
  UkfParams params;
  UnscentedKalmanFilter ukf(params);
  for (int i = 0; i < 100; ++i) {
    Belief b;
    b.mean << uni(-500, 500), uni(-500, 500), uni(-500, 500), uni(-30, 30),
        uni(-30, 30), uni(-30, 30);
    Matrix6d a;
    for (int k = 0; k < 36; ++k) a(k) = uni(-2, 2);
    b.covariance = a * a.transpose() + 0.1 * Matrix6d::Identity();
    const double dt = uni(0.01, 0.5);
    Matrix6d f = Matrix6d::Identity();
    f.topRightCorner<3, 3>() = dt * Mat3::Identity();
    Matrix6d q = Matrix6d::Zero();
    q.bottomRightCorner<3, 3>() = params.q * dt * Mat3::Identity();
    Vector6d kf_mean = f * b.mean;
    Matrix6d kf_cov = f * b.covariance * f.transpose() + q;
    Belief pred = ukf.Predict(b, dt);
    kf_err = std::max({kf_err, (pred.mean - kf_mean).cwiseAbs().maxCoeff(),
                       (pred.covariance - kf_cov).cwiseAbs().maxCoeff()});
    Vec3 z = kf_mean.head<3>() + Vec3(uni(-5, 5), uni(-5, 5), uni(-5, 5));
    Mat3 s = kf_cov.topLeftCorner<3, 3>() + params.r * Mat3::Identity();
    Eigen::Matrix<double, 6, 3> gain = kf_cov.leftCols<3>() * s.inverse();
    Vector6d upd_mean = kf_mean + gain * (z - kf_mean.head<3>());
    Matrix6d upd_cov = kf_cov - gain * kf_cov.topRows<3>();
    Belief upd = ukf.Update(pred, z);
    kf_err = std::max({kf_err, (upd.mean - upd_mean).cwiseAbs().maxCoeff(),
                       (upd.covariance - upd_cov).cwiseAbs().maxCoeff()});
  }
  c.Expect(kf_err <= 1e-8, Fmt("UKF vs KF difference %.3g", kf_err));

  // Projection / feature round trip.
  CameraIntrinsics intr;
  double rt_err = 0.0;
  for (int i = 0; i < 1000; ++i) {
    Vec3 p(uni(-100, 100), uni(-100, 100), uni(1, 500));
    NormalizedPoint n = PixelToFeature(Project(p, intr), intr);
    rt_err = std::max({rt_err, std::abs(n.x1 - p.x() / p.z()),
                       std::abs(n.x2 - p.y() / p.z())});
  }
  c.Expect(rt_err <= 1e-12, Fmt("projection round-trip error %.3g", rt_err));

  // Arc union against 0.01 deg rasterization.
  double arc_err = 0.0;
  for (int set = 0; set < 100; ++set) {
    std::vector<CoverageArc> arcs(std::uniform_int_distribution<int>(1, 10)(rng));
    for (auto& arc : arcs) arc = {uni(0, 360), uni(1, 60)};
    int covered = 0;
    for (int cell = 0; cell < 36000; ++cell) {
      const double angle = (cell + 0.5) * 0.01;
      for (const auto& arc : arcs) {
        if (std::abs(std::remainder(angle - arc.center, 360.0)) <= arc.half_width) {
          ++covered;
          break;
        }
      }
    }
    arc_err = std::max(arc_err, std::abs(ArcUnionMeasure(arcs) - covered * 0.01));
  }
  c.Expect(arc_err <= 0.02, Fmt("coverage raster discrepancy %.4f deg", arc_err));

  c.Note(Fmt("rot %.1e, rates %.1e, penrose %.1e", rot_err, eq_err, pen_err));
  c.Note(Fmt("ukf %.1e, round-trip %.1e, arcs %.4f deg", kf_err, rt_err, arc_err));
  return c.Finish();
}

std::string AllCsv(const RunLog& log) {
  return ToCsvText(MetricsTable(log)) + ToCsvText(TrajectoryTable(log)) +
         ToCsvText(TargetTable(log));
}

bool SameBits(double a, double b) {
  return std::memcmp(&a, &b, sizeof(double)) == 0;
}

bool SameLog(const RunLog& a, const RunLog& b) {
  if (a.snapshots.size() != b.snapshots.size()) return false;
  for (std::size_t r = 0; r < a.snapshots.size(); ++r) {
    for (std::size_t i = 0; i < a.snapshots[r].size(); ++i) {
      const AgentSnapshot& x = a.snapshots[r][i];
      const AgentSnapshot& y = b.snapshots[r][i];
      Vector6d xv, yv;
      xv << x.pose.position, x.twist.linear;
      yv << y.pose.position, y.twist.linear;
      for (int k = 0; k < 6; ++k) {
        if (!SameBits(xv(k), yv(k))) return false;
      }
      if (!SameBits(x.pose.orientation.z, y.pose.orientation.z)) return false;
    }
  }
  return AllCsv(a) == AllCsv(b) && a.converged_round == b.converged_round;
}

// 8. Fixed seed gives identical CSVs; agent order leaves the log unchanged.
Verdict Determinism() {
  Checker c;
  ScenarioConfig noisy = LoadConfig(Path("scenarios/ukf_noisy_3uav.json"));
  RunLog first = Run(noisy);
  RunLog second = Run(noisy);
  c.Expect(AllCsv(first) == AllCsv(second), "CSV bytes differ between runs");
  c.Expect(SameLog(first, second), "RunLog differs between runs");
  std::vector<std::vector<std::size_t>> orders = {{2, 1, 0}, {1, 0, 2}, {2, 0, 1}};
  for (const auto& order : orders) {
    c.Expect(SameLog(first, Run(noisy, RunOptions{order})),
             "iteration order changes the noisy UKF run");
    c.Expect(SameLog(ReferenceLog(), Run(Reference(), RunOptions{order})),
             "iteration order changes the reference run");
  }
  c.Note("3 permutations x 2 scenarios compared bitwise");
  return c.Finish();
}

struct Criterion {
  int number;
  const char* name;
  std::function<Verdict()> run;
};

}  // namespace
}  // namespace uavsim

int main(int argc, char** argv) {
  using namespace uavsim;
  const std::vector<Criterion> criteria = {
      {1, "speed convergence", SpeedConvergence},
      {2, "error-area decay", ErrorAreaDecay},
      {3, "centering", Centering},
      {4, "coverage law", CoverageLaw},
      {5, "error-vs-M trends", ErrorTrends},
      {6, "IBVS contraction", IbvsContraction},
      {7, "unit-level invariants", InvariantSuite},
      {8, "determinism and order independence", Determinism},
  };
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
      return 2;
    }
  }
  bool all_pass = true;
  bool ran = false;
  for (const Criterion& cr : criteria) {
    if (only != 0 && cr.number != only) continue;
    ran = true;
    Verdict v;
    try {
      v = cr.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    all_pass = all_pass && v.pass;
    std::printf("%s criterion %d (%s): %s\n", v.pass ? "PASS" : "FAIL",
                cr.number, cr.name, v.detail.c_str());
  }
  if (!ran) {
    std::fprintf(stderr, "no criterion %d\n", only);
    return 2;
  }
  return all_pass ? 0 : 1;
}
