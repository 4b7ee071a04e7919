#include "oracles.hpp"

#include "serpent/cpg.hpp"
#include "serpent/errors.hpp"
#include "serpent/gaits.hpp"

#include <Eigen/Eigenvalues>
#include <doctest.h>

#include <random>

using namespace serpent;

namespace {

GaitParams uniform_gait(double amplitude) {
  GaitParams g = sidewinding_gait();
  g.amplitude.setConstant(amplitude);
  return g;
}

CpgState run(CpgState s, const GaitParams& g, const CpgConfig& c, double seconds) {
  const int n = static_cast<int>(std::lround(seconds / c.dt));
  for (int i = 0; i < n; ++i) s = step(s, g, c);
  return s;
}

}  // namespace

TEST_SUITE("cpg") {

TEST_CASE("both couplings vanish on uniform phases and balance the offsets when locked") {
  for (CpgCoupling c : {CpgCoupling::kHeadLed, CpgCoupling::kSymmetric}) {
    const CouplingMatrices& m = coupling_matrices(c);
    CHECK((m.a * JointVector::Ones()).cwiseAbs().maxCoeff() == 0.0);
    const GaitParams g = sidewinding_gait();
    CHECK((m.a * g.phase - m.b * g.phase_differences()).cwiseAbs().maxCoeff() < 1e-12);
    for (int i = 0; i < kNumJoints; ++i) {
      for (int j = 0; j < kNumJoints; ++j) {
        if (std::abs(i - j) > 1) CHECK(m.a(i, j) == 0.0);
      }
    }
  }
}

TEST_CASE("the corner-plus-one coupling variant does not conserve uniform phase") {
  CouplingA a = coupling_matrices(CpgCoupling::kSymmetric).a;
  a(0, 0) = 1.0;
  a(kNumJoints - 1, kNumJoints - 1) = 1.0;
  CHECK((a * JointVector::Ones()).cwiseAbs().maxCoeff() > 1.0);
  // And it has an unstable mode: a positive eigenvalue.
  const Eigen::SelfAdjointEigenSolver<CouplingA> eig(a);
  CHECK(eig.eigenvalues().maxCoeff() > 0.5);
}

TEST_CASE("amplitude follows the critically damped closed form") {
  const CpgConfig cfg;
  const double a = deg2rad(45.0);
  const GaitParams g = uniform_gait(a);
  CpgState s = CpgState::initial(g);
  double worst = 0.0;
  for (int n = 1; n <= 200; ++n) {
    s = step(s, g, cfg);
    worst = std::max(worst, std::abs(s.r[3] - oracle::damped_response(a, 0.0, cfg.gamma, n * cfg.dt)));
  }
  CHECK(worst < 1e-4);
}

TEST_CASE("amplitude never overshoots from below") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const CpgConfig cfg;
  for (int n = 0; n < 100; ++n) {
    const double a = deg2rad(70.0) * u(rng);
    const GaitParams g = uniform_gait(a);
    CpgState s = CpgState::initial(g);
    s.r.setConstant(a * u(rng));
    double prev = s.r[0];
    for (int k = 0; k < 300; ++k) {
      s = step(s, g, cfg);
      REQUIRE(s.r.maxCoeff() <= a + 1e-6);
      REQUIRE(s.r[0] >= prev - 1e-12);
      prev = s.r[0];
    }
  }
}

TEST_CASE("doubling the amplitude mid-run settles without overshoot") {
  const CpgConfig cfg;
  GaitParams g = uniform_gait(deg2rad(20.0));
  CpgNetwork net(g, cfg);
  for (int i = 0; i < 100; ++i) net.tick();
  g.amplitude *= 2.0;
  net.retarget(g);
  double peak = 0.0;
  for (int i = 0; i < 300; ++i) {
    net.tick();
    peak = std::max(peak, net.state().r.maxCoeff());
  }
  CHECK(peak <= deg2rad(40.0) + 1e-6);
  CHECK(net.state().r[5] == doctest::Approx(deg2rad(40.0)).epsilon(1e-6));
}

TEST_CASE("random initial phases lock onto the gait offsets") {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  const CpgConfig cfg;
  const GaitParams g = sidewinding_gait();
  for (int n = 0; n < 50; ++n) {
    CpgState s = CpgState::initial(g);
    for (int i = 0; i < kNumJoints; ++i) s.theta[i] = u(rng);
    double prev = oracle::phase_residual(s.theta, g.phase_differences());
    for (int sec = 1; sec <= 5; ++sec) {
      s = run(s, g, cfg, 1.0);
      const double r = oracle::phase_residual(s.theta, g.phase_differences());
      if (sec > 2) REQUIRE(r <= prev + 1e-6);
      prev = r;
    }
    REQUIRE(prev < 1e-3);
  }
}

TEST_CASE("the symmetric chain locks too slowly for a five second budget") {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  CpgConfig cfg;
  cfg.coupling = CpgCoupling::kSymmetric;
  const GaitParams g = sidewinding_gait();
  double worst = 0.0;
  for (int n = 0; n < 50; ++n) {
    CpgState s = CpgState::initial(g);
    for (int i = 0; i < kNumJoints; ++i) s.theta[i] = u(rng);
    worst = std::max(worst, oracle::phase_residual(run(s, g, cfg, 5.0).theta, g.phase_differences()));
  }
  CHECK(worst > 1e-3);
}

TEST_CASE("flipping the offset sign relocks on the mirrored wave") {
  const CpgConfig cfg;
  CpgNetwork net(turn_left_gait(), cfg);
  for (int i = 0; i < 200; ++i) net.tick();
  net.retarget(turn_right_gait());
  for (int i = 0; i < 300; ++i) net.tick();
  CHECK(oracle::phase_residual(net.state().theta, turn_right_gait().phase_differences()) < 1e-3);
}

TEST_CASE("retargeting to the same gait is bit-identical to not retargeting") {
  const CpgConfig cfg;
  const GaitParams g = sidewinding_gait();
  CpgNetwork a(g, cfg), b(g, cfg);
  for (int i = 0; i < 250; ++i) {
    if (i % 50 == 0) b.retarget(g);
    REQUIRE(a.tick() == b.tick());
  }
  CHECK(a.state().theta == b.state().theta);
}

TEST_CASE("outputs follow r sin(theta) + b and stay within the amplitude") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CpgState s;
  JointVector bias;
  for (int i = 0; i < kNumJoints; ++i) {
    s.theta[i] = 10.0 * u(rng);
    s.r[i] = std::abs(u(rng));
    bias[i] = 0.2 * u(rng);
  }
  const JointVector q = joint_commands(s, bias);
  for (int i = 0; i < kNumJoints; ++i) {
    CHECK(q[i] == s.r[i] * std::sin(s.theta[i]) + bias[i]);
    CHECK(std::abs(q[i] - bias[i]) <= s.r.cwiseAbs().maxCoeff());
  }
}

TEST_CASE("bias changes are slewed rather than stepped") {
  CpgConfig cfg;
  GaitParams g = sidewinding_gait();
  CpgNetwork net(g, cfg);
  for (int i = 0; i < 100; ++i) net.tick();
  g.bias.setConstant(0.1);
  net.retarget(g);
  CHECK(net.current_bias().isZero());
  for (int i = 0; i < 25; ++i) net.tick();
  CHECK(net.current_bias()[0] == doctest::Approx(0.05));
  for (int i = 0; i < 25; ++i) net.tick();
  CHECK(net.current_bias()[0] == doctest::Approx(0.1));
}

TEST_CASE("rk4 error shrinks at fourth order") {
  const GaitParams g = uniform_gait(deg2rad(30.0));
  CpgState s0 = CpgState::initial(g);
  s0.theta[4] += 0.7;
  auto at_one_second = [&](double dt) {
    CpgConfig c;
    c.dt = dt;
    return run(s0, g, c, 1.0);
  };
  const CpgState coarse = at_one_second(0.01);
  const CpgState mid = at_one_second(0.005);
  const CpgState fine = at_one_second(0.0025);
  auto err = [&](const CpgState& s) {
    return std::max({(s.theta - fine.theta).cwiseAbs().maxCoeff(), (s.r - fine.r).cwiseAbs().maxCoeff(),
                     (s.r_dot - fine.r_dot).cwiseAbs().maxCoeff()});
  };
  CHECK(err(coarse) / err(mid) >= 12.0);
}

TEST_CASE("two identical runs produce identical state sequences") {
  const CpgConfig cfg;
  CpgNetwork a(sidewinding_gait(), cfg), b(sidewinding_gait(), cfg);
  for (int i = 0; i < 500; ++i) {
    if (i == 200) {
      a.retarget(turn_left_gait());
      b.retarget(turn_left_gait());
    }
    a.tick();
    b.tick();
  }
  CHECK(a.state().theta == b.state().theta);
  CHECK(a.state().r == b.state().r);
  CHECK(a.state().r_dot == b.state().r_dot);
}

TEST_CASE("invalid inputs are rejected") {
  CpgConfig cfg;
  cfg.dt = 0.02;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  GaitParams g = sidewinding_gait();
  g.amplitude[2] = deg2rad(80.0);
  CHECK_THROWS_AS(g.validate(), InvalidInputError);
  CpgState s;
  s.r[7] = std::nan("");
  try {
    step(s, sidewinding_gait(), CpgConfig{});
    FAIL("expected an integration error");
  } catch (const IntegrationError& e) {
    CHECK(e.index() == kNumJoints + 7);
  }
}

}  // TEST_SUITE
