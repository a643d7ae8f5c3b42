#include <doctest.h>

#include <cmath>

#include "myriad/billiard.hpp"
#include "myriad/core.hpp"
#include "myriad/rng.hpp"

using namespace myriad;

TEST_CASE("accumulate_increments: zero motion stays put") {
  std::vector<Vec2> start{{0.5, 0.5}};
  std::vector<std::vector<Vec2>> deltas{{{0, 0}, {0, 0}, {0, 0}}};
  auto tb = accumulate_increments(start, deltas);
  REQUIRE(tb.K == 1);
  REQUIRE(tb.T == 3);
  for (int t = 0; t <= 3; ++t) {
    CHECK(tb.x(0, t) == 0.5);
    CHECK(tb.y(0, t) == 0.5);
  }
}

TEST_CASE("accumulate_increments: linear accumulation") {
  std::vector<Vec2> start{{0, 0}};
  std::vector<std::vector<Vec2>> deltas{{{0.1, 0}, {0.1, 0}}};
  auto tb = accumulate_increments(start, deltas);
  CHECK(tb.x(0, 0) == doctest::Approx(0.0));
  CHECK(tb.x(0, 1) == doctest::Approx(0.1));
  CHECK(tb.x(0, 2) == doctest::Approx(0.2));
  CHECK(tb.y(0, 2) == doctest::Approx(0.0));
}

// Independent left-fold oracle: accumulate each trajectory with a plain
// sequential fold and compare elementwise.
TEST_CASE("accumulate_increments: matches fold oracle on random input") {
  Rng rng(42);
  const int K = 4, T = 8;
  std::vector<Vec2> start(K);
  std::vector<std::vector<Vec2>> deltas(K, std::vector<Vec2>(T));
  for (int i = 0; i < K; ++i) {
    start[i] = {rng.uniform(), rng.uniform()};
    for (int t = 0; t < T; ++t) deltas[i][t] = {rng.uniform(-0.1, 0.1), rng.uniform(-0.1, 0.1)};
  }
  auto tb = accumulate_increments(start, deltas);
  for (int i = 0; i < K; ++i) {
    double fx = start[i].x, fy = start[i].y;
    CHECK(std::abs(tb.x(i, 0) - fx) <= 1e-12);
    for (int t = 0; t < T; ++t) {
      fx += deltas[i][t].x;
      fy += deltas[i][t].y;
      CHECK(std::abs(tb.x(i, t + 1) - fx) <= 1e-12);
      CHECK(std::abs(tb.y(i, t + 1) - fy) <= 1e-12);
    }
  }
}

TEST_CASE("first_difference inverts accumulate_increments") {
  Rng rng(7);
  for (int rep = 0; rep < 20; ++rep) {
    const int K = 1 + static_cast<int>(rng.uniform_index(5));
    const int T = 1 + static_cast<int>(rng.uniform_index(12));
    std::vector<Vec2> start(K);
    std::vector<std::vector<Vec2>> deltas(K, std::vector<Vec2>(T));
    for (int i = 0; i < K; ++i) {
      start[i] = {rng.uniform(), rng.uniform()};
      for (int t = 0; t < T; ++t) deltas[i][t] = {rng.normal() * 0.02, rng.normal() * 0.02};
    }
    auto diff = first_difference(accumulate_increments(start, deltas));
    for (int i = 0; i < K; ++i)
      for (int t = 0; t < T; ++t) {
        CHECK(std::abs(diff[i][t].x - deltas[i][t].x) <= 1e-12);
        CHECK(std::abs(diff[i][t].y - deltas[i][t].y) <= 1e-12);
      }
  }
}

TEST_CASE("accumulate_increments rejects shape mismatch") {
  std::vector<Vec2> start{{0, 0}, {1, 1}};
  std::vector<std::vector<Vec2>> deltas{{{0.1, 0}}};
  CHECK_THROWS_AS(accumulate_increments(start, deltas), InvalidArgumentError);
  std::vector<std::vector<Vec2>> ragged{{{0.1, 0}}, {{0.1, 0}, {0, 0}}};
  CHECK_THROWS_AS(accumulate_increments(start, ragged), InvalidArgumentError);
}

static EpisodeRecord make_episode(std::uint64_t seed, int n_balls, int T) {
  Rng rng(seed);
  billiard::TableSpec spec;
  auto st = billiard::sample_initial_state(rng, n_balls, spec);
  Vec2 impulse{rng.uniform(0.2, 2.0), 0.0};
  // Keep the cue clear of everything for the first step so the impulse
  // consistency invariant holds.
  for (int tries = 0; tries < 100; ++tries) {
    bool clear = true;
    for (int i = 1; i < st.n_balls(); ++i)
      if ((st.pos[i] - st.pos[0]).norm() < 2 * spec.ball_radius + 0.03) clear = false;
    if (st.pos[0].x < spec.ball_radius + 0.03 || st.pos[0].x > 1 - spec.ball_radius - 0.03 ||
        st.pos[0].y < spec.ball_radius + 0.03 || st.pos[0].y > 1 - spec.ball_radius - 0.03)
      clear = false;
    if (clear) break;
    st = billiard::sample_initial_state(rng, n_balls, spec);
  }
  spec.friction_decel = 0.0;
  EpisodeRecord rec;
  rec.n_balls = n_balls;
  rec.ball_radius = static_cast<float>(spec.ball_radius);
  rec.positions = st.pos;
  rec.velocities = st.vel;
  rec.impulse = impulse;
  rec.seed = seed;
  rec.tracks = billiard::simulate_episode(st, impulse, spec, T);
  return rec;
}

TEST_CASE("validate_episode: simulator output is valid") {
  auto rec = make_episode(3, 3, 20);
  auto report = validate_episode(rec);
  CHECK(report.empty());
}

TEST_CASE("validate_episode: NaN position reported") {
  auto rec = make_episode(4, 2, 5);
  rec.tracks.x(0, 2) = std::nan("");
  auto report = validate_episode(rec);
  bool found = false;
  for (auto& r : report)
    if (r == "non-finite position") found = true;
  CHECK(found);
}

TEST_CASE("validate_episode: out-of-range coordinate reported") {
  auto rec = make_episode(5, 2, 5);
  rec.positions[0] = {1.5, 0.5};
  auto report = validate_episode(rec);
  bool found = false;
  for (auto& r : report)
    if (r == "coordinate out of range") found = true;
  CHECK(found);
}

TEST_CASE("rng: deterministic streams and split independence") {
  Rng a(123), b(123);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  Rng base(9);
  Rng s1 = base.split("noise", 0);
  Rng s2 = base.split("noise", 0);
  Rng s3 = base.split("noise", 1);
  CHECK(s1.next_u64() == s2.next_u64());
  CHECK(s1.next_u64() != s3.next_u64());
  CHECK(base.split("data").next_u64() != base.split("ids").next_u64());
}

TEST_CASE("rng: uniform range and normal moments") {
  Rng rng(77);
  double mean = 0, m2 = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    double z = rng.normal();
    mean += z;
    m2 += z * z;
  }
  mean /= n;
  m2 /= n;
  CHECK(std::abs(mean) < 0.02);
  CHECK(std::abs(m2 - 1.0) < 0.03);
}

TEST_CASE("model config validation") {
  ModelConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.width = 100;
  cfg.head_dim = 32;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgumentError);
}
