#include "serpent/errors.hpp"
#include "serpent/plant.hpp"
#include "serpent/steering.hpp"

#include <doctest.h>

using namespace serpent;

namespace {

const double kBase = deg2rad(14.0);

PlantState advance(PlantState s, const TrackerCommand& cmd, const PlantParams& p, int steps,
                   double offset = 0.0) {
  for (int i = 0; i < steps; ++i) s = plant_step(s, cmd, p, 0.01, offset);
  return s;
}

}  // namespace

TEST_SUITE("plant") {

TEST_CASE("the nominal offset drives straight") {
  const PlantState s = advance({}, TrackerCommand::sidewind(kBase, kBase), PlantParams{}, 500);
  CHECK(s.pose.x == doctest::Approx(1.0));
  CHECK(std::abs(s.pose.y) < 1e-12);
  CHECK(s.pose.yaw == 0.0);
  CHECK(s.time == doctest::Approx(5.0));
}

TEST_CASE("heading rate follows the amplitude steering law") {
  PlantParams p;
  SteeringConfig law;
  law.k_turn = p.k_turn;
  law.postural_length = p.postural_length;
  const double extra = deg2rad(5.0);
  const PlantState s = advance({}, TrackerCommand::sidewind(kBase + extra, kBase), p, 100);
  CHECK(s.pose.yaw == doctest::Approx(turning_rate(extra, law) * 1.0).epsilon(1e-12));
  // Exact arc: the chord stays on the circle of radius v / rate.
  const double radius = p.v_sidewind / turning_rate(extra, law);
  CHECK(std::hypot(s.pose.x, s.pose.y - radius) == doctest::Approx(radius).epsilon(1e-12));
}

TEST_CASE("turning in place rotates without translating") {
  PlantParams p;
  const PlantState l = advance({}, TrackerCommand::of(CommandKind::kTurnLeft), p, 100);
  CHECK(l.pose.yaw == doctest::Approx(0.5));
  CHECK(l.pose.x == 0.0);
  const PlantState r = advance({}, TrackerCommand::of(CommandKind::kTurnRight), p, 100);
  CHECK(r.pose.yaw == doctest::Approx(-0.5));
  const PlantState stop = advance({{1.0, 2.0, 0.3}, 0.0}, TrackerCommand::of(CommandKind::kStop), p, 10);
  CHECK(stop.pose.x == 1.0);
  CHECK(stop.pose.yaw == 0.3);
}

TEST_CASE("crab angle offsets the travel direction from the heading") {
  PlantParams p;
  p.crab_angle = deg2rad(30.0);
  const PlantState s = advance({}, TrackerCommand::sidewind(kBase, kBase), p, 100);
  CHECK(std::atan2(s.pose.y, s.pose.x) == doctest::Approx(deg2rad(30.0)));
  CHECK(s.pose.yaw == 0.0);
}

TEST_CASE("drift is cancelled by the matching feed-forward") {
  PlantParams p;
  p.drift_rate = 0.02;
  SteeringConfig law;
  const double offset = bias_from_drift(p.drift_rate, law);
  const PlantState s = advance({}, TrackerCommand::sidewind(kBase, kBase), p, 1000, offset);
  CHECK(std::abs(s.pose.yaw) < 1e-12);
  CHECK(std::abs(advance({}, TrackerCommand::sidewind(kBase, kBase), p, 1000).pose.yaw) > 0.1);
}

TEST_CASE("heading stays wrapped") {
  PlantParams p;
  const PlantState s = advance({{0, 0, 3.1}, 0.0}, TrackerCommand::of(CommandKind::kTurnLeft), p, 100);
  CHECK(s.pose.yaw <= kPi);
  CHECK(s.pose.yaw > -kPi);
  CHECK(s.pose.yaw == doctest::Approx(3.6 - 2 * kPi));
}

TEST_CASE("parameter checks") {
  PlantParams p;
  p.v_sidewind = -1.0;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p = {};
  p.postural_length = 0.0;
  CHECK_THROWS_AS(p.validate(), ConfigError);
}

}  // TEST_SUITE
