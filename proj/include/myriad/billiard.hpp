#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "myriad/core.hpp"
#include "myriad/rng.hpp"

namespace myriad::billiard {

// ============================================================
// Deterministic 2D billiard on the unit table. Fixed-sub-step
// semi-implicit integration with positional projection; the same
// routine at 100x finer sub-stepping serves as the ground-truth
// oracle in tests.
// ============================================================

struct TableSpec {
  double ball_radius = 0.025;
  double cushion_restitution = 1.0;  // (0,1]
  double ball_restitution = 1.0;     // (0,1]
  double friction_decel = 0.3;       // length/s^2, constant-magnitude rolling friction
  double stop_speed = 1e-4;          // length/s

  void validate() const {
    MYRIAD_CHECK_ARG(ball_radius > 0.0 && ball_radius < 0.25, "table: ball_radius out of range");
    MYRIAD_CHECK_ARG(cushion_restitution > 0.0 && cushion_restitution <= 1.0,
                     "table: cushion_restitution out of (0,1]");
    MYRIAD_CHECK_ARG(ball_restitution > 0.0 && ball_restitution <= 1.0,
                     "table: ball_restitution out of (0,1]");
    MYRIAD_CHECK_ARG(friction_decel >= 0.0, "table: friction_decel must be >= 0");
  }
};

// Ball 0 is the cue ball by convention (the planner relies on it).
struct BilliardState {
  std::vector<Vec2> pos;
  std::vector<Vec2> vel;

  int n_balls() const { return static_cast<int>(pos.size()); }
};

// Trajectory-count ablations evaluate 24 balls, so the state cap sits
// well above the 16-ball training default; infeasible packings are
// caught by the sampler's rejection budget instead.
inline constexpr int kMaxBalls = 256;

struct ContactEvent {
  int a = 0, b = 0;
  Vec2 momentum_before, momentum_after;
};

struct SimStats {
  int ball_contacts = 0;
  int cushion_contacts = 0;
  bool record_events = false;
  std::vector<ContactEvent> events;
};

inline double kinetic_energy(const BilliardState& s) {
  double e = 0.0;
  for (const auto& v : s.vel) e += 0.5 * v.dot(v);
  return e;
}

inline void validate_state(const BilliardState& s, const TableSpec& spec) {
  const double r = spec.ball_radius;
  MYRIAD_CHECK_ARG(s.n_balls() >= 1 && s.n_balls() <= kMaxBalls, "state: bad ball count");
  MYRIAD_CHECK_ARG(s.vel.size() == s.pos.size(), "state: pos/vel size mismatch");
  for (int i = 0; i < s.n_balls(); ++i) {
    const Vec2& p = s.pos[i];
    MYRIAD_CHECK_ARG(std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(s.vel[i].x) &&
                         std::isfinite(s.vel[i].y),
                     "state: non-finite value");
    MYRIAD_CHECK_ARG(p.x >= r - 1e-6 && p.x <= 1.0 - r + 1e-6 && p.y >= r - 1e-6 &&
                         p.y <= 1.0 - r + 1e-6,
                     "state: ball outside cushions");
  }
  for (int i = 0; i < s.n_balls(); ++i)
    for (int j = i + 1; j < s.n_balls(); ++j) {
      const double d = (s.pos[j] - s.pos[i]).norm();
      MYRIAD_CHECK_ARG(d >= 2.0 * r - 1e-6, "state: interpenetrating balls");
    }
}

namespace detail {

inline void substep(BilliardState& s, const TableSpec& spec, double h, SimStats* stats) {
  const double r = spec.ball_radius;
  const int n = s.n_balls();

  // Friction (clamped at the zero crossing), then advection.
  for (int i = 0; i < n; ++i) {
    Vec2& v = s.vel[i];
    const double speed = v.norm();
    if (spec.friction_decel > 0.0 && speed > 0.0) {
      const double dec = std::min(spec.friction_decel * h, speed);
      const double k = (speed - dec) / speed;
      v.x *= k;
      v.y *= k;
    }
    s.pos[i].x += v.x * h;
    s.pos[i].y += v.y * h;
  }

  // Cushions: project inside, reflect the outward normal component.
  for (int i = 0; i < n; ++i) {
    Vec2& p = s.pos[i];
    Vec2& v = s.vel[i];
    for (int axis = 0; axis < 2; ++axis) {
      double& pc = axis == 0 ? p.x : p.y;
      double& vc = axis == 0 ? v.x : v.y;
      if (pc < r) {
        pc = r;
        if (vc < 0.0) {
          vc = -spec.cushion_restitution * vc;
          if (stats) ++stats->cushion_contacts;
        }
      } else if (pc > 1.0 - r) {
        pc = 1.0 - r;
        if (vc > 0.0) {
          vc = -spec.cushion_restitution * vc;
          if (stats) ++stats->cushion_contacts;
        }
      }
    }
  }

  // Ball-ball: pairwise in ascending index order, repeated until no
  // overlap remains (separating one pair may create another).
  const double min_d = 2.0 * r;
  for (int pass = 0; pass < 64; ++pass) {
    bool any = false;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        Vec2 d = s.pos[j] - s.pos[i];
        double dist = d.norm();
        if (dist >= min_d - 1e-9) continue;
        any = true;
        Vec2 nrm = dist > 1e-12 ? d * (1.0 / dist) : Vec2{1.0, 0.0};
        const double overlap = min_d - dist;
        s.pos[i] = s.pos[i] - nrm * (0.5 * overlap);
        s.pos[j] = s.pos[j] + nrm * (0.5 * overlap);
        // Equal masses: exchange the normal components, scaled by
        // restitution, only when approaching.
        const double vn = (s.vel[i] - s.vel[j]).dot(nrm);
        if (vn > 0.0) {
          if (stats) {
            ++stats->ball_contacts;
            if (stats->record_events) {
              ContactEvent ev;
              ev.a = i;
              ev.b = j;
              ev.momentum_before = s.vel[i] + s.vel[j];
              const double imp = 0.5 * (1.0 + spec.ball_restitution) * vn;
              ev.momentum_after = (s.vel[i] - nrm * imp) + (s.vel[j] + nrm * imp);
              stats->events.push_back(ev);
            }
          }
          const double imp = 0.5 * (1.0 + spec.ball_restitution) * vn;
          s.vel[i] = s.vel[i] - nrm * imp;
          s.vel[j] = s.vel[j] + nrm * imp;
        }
      }
    }
    if (!any) break;
  }

  // Rest threshold.
  for (int i = 0; i < n; ++i)
    if (s.vel[i].norm() < spec.stop_speed) s.vel[i] = {0.0, 0.0};
}

}  // namespace detail

// One simulation step of duration dt, split into n_sub sub-steps.
inline BilliardState step(const BilliardState& state, const TableSpec& spec, double dt,
                          int n_sub = 32, SimStats* stats = nullptr) {
  MYRIAD_CHECK_ARG(dt > 0.0, "step: dt must be > 0");
  MYRIAD_CHECK_ARG(n_sub >= 1, "step: n_sub must be >= 1");
  spec.validate();
  validate_state(state, spec);
  BilliardState s = state;
  const double h = dt / n_sub;
  for (int k = 0; k < n_sub; ++k) detail::substep(s, spec, h, stats);
  return s;
}

namespace detail {

inline TrajectoryBatch run_episode(const BilliardState& initial, Vec2 impulse,
                                   const TableSpec& spec, int T, double dt, int n_sub,
                                   SimStats* stats) {
  MYRIAD_CHECK_ARG(T >= 1, "simulate: T must be >= 1");
  MYRIAD_CHECK_ARG(dt > 0.0, "simulate: dt must be > 0");
  spec.validate();
  validate_state(initial, spec);
  BilliardState s = initial;
  s.vel[0] = s.vel[0] + impulse;  // instantaneous cue impulse, length/s
  const int K = s.n_balls();
  TrajectoryBatch tracks(K, T);
  for (int i = 0; i < K; ++i) {
    tracks.x(i, 0) = s.pos[i].x;
    tracks.y(i, 0) = s.pos[i].y;
  }
  const double h = dt / n_sub;
  for (int t = 1; t <= T; ++t) {
    for (int k = 0; k < n_sub; ++k) substep(s, spec, h, stats);
    for (int i = 0; i < K; ++i) {
      tracks.x(i, t) = s.pos[i].x;
      tracks.y(i, t) = s.pos[i].y;
    }
  }
  return tracks;
}

}  // namespace detail

// Applies the impulse to ball 0 and records all ball centers every dt.
inline TrajectoryBatch simulate_episode(const BilliardState& initial, Vec2 impulse,
                                        const TableSpec& spec, int T, double dt = 0.01,
                                        SimStats* stats = nullptr) {
  return detail::run_episode(initial, impulse, spec, T, dt, 32, stats);
}

// Same contract at 100x finer sub-stepping; ground truth for tests.
inline TrajectoryBatch oracle_simulate(const BilliardState& initial, Vec2 impulse,
                                       const TableSpec& spec, int T, double dt = 0.01,
                                       SimStats* stats = nullptr) {
  return detail::run_episode(initial, impulse, spec, T, dt, 3200, stats);
}

// Rejection-sample non-overlapping resting balls. Deterministic given
// the rng state; throws CapacityError after 10,000 rejections.
inline BilliardState sample_initial_state(Rng& rng, int n_balls, const TableSpec& spec) {
  MYRIAD_CHECK_ARG(n_balls >= 1 && n_balls <= kMaxBalls, "sample_initial_state: bad ball count");
  spec.validate();
  const double r = spec.ball_radius;
  const double min_d = 2.0 * r + 0.01;
  BilliardState s;
  int rejections = 0;
  while (s.n_balls() < n_balls) {
    const double x = rng.uniform(r, 1.0 - r);
    const double y = rng.uniform(r, 1.0 - r);
    bool ok = true;
    for (const auto& p : s.pos)
      if ((Vec2{x, y} - p).norm() < min_d) {
        ok = false;
        break;
      }
    if (ok) {
      s.pos.push_back({x, y});
      s.vel.push_back({0.0, 0.0});
    } else if (++rejections > 10000) {
      throw CapacityError("sample_initial_state: table capacity exceeded (10000 rejections)");
    }
  }
  return s;
}

// ============================================================
// Rasterization: felt-green background, anti-aliased discs, cue ball
// white, others colored per index. Pixel (0,0) = table corner (0,0).
// ============================================================

inline std::array<float, 3> ball_color(int index) {
  if (index == 0) return {0.95f, 0.95f, 0.92f};  // cue
  // Golden-angle hue walk, fixed saturation/value.
  const double h = std::fmod(0.1 + 0.618033988749895 * (index - 1), 1.0) * 6.0;
  const double c = 0.85, v = 0.9;
  const double xcomp = c * (1.0 - std::fabs(std::fmod(h, 2.0) - 1.0));
  double rr = 0, gg = 0, bb = 0;
  switch (static_cast<int>(h)) {
    case 0: rr = c; gg = xcomp; break;
    case 1: rr = xcomp; gg = c; break;
    case 2: gg = c; bb = xcomp; break;
    case 3: gg = xcomp; bb = c; break;
    case 4: rr = xcomp; bb = c; break;
    default: rr = c; bb = xcomp; break;
  }
  const double m = v - c;
  return {static_cast<float>(rr + m), static_cast<float>(gg + m), static_cast<float>(bb + m)};
}

inline constexpr std::array<float, 3> kFeltGreen = {0.086f, 0.342f, 0.160f};

inline Image rasterize(const BilliardState& state, const TableSpec& spec, int resolution) {
  MYRIAD_CHECK_ARG(resolution >= 32, "rasterize: resolution must be >= 32");
  Image img;
  img.height = resolution;
  img.width = resolution;
  img.data.assign(static_cast<size_t>(resolution) * resolution * 3, 0.0f);
  for (int y = 0; y < resolution; ++y)
    for (int x = 0; x < resolution; ++x)
      for (int c = 0; c < 3; ++c) img.at(y, x, c) = kFeltGreen[c];

  const double rp = spec.ball_radius * resolution;
  for (int b = 0; b < state.n_balls(); ++b) {
    const auto col = ball_color(b);
    const double cx = state.pos[b].x * resolution;
    const double cy = state.pos[b].y * resolution;
    const int x0 = std::max(0, static_cast<int>(std::floor(cx - rp - 1.0)));
    const int x1 = std::min(resolution - 1, static_cast<int>(std::ceil(cx + rp + 1.0)));
    const int y0 = std::max(0, static_cast<int>(std::floor(cy - rp - 1.0)));
    const int y1 = std::min(resolution - 1, static_cast<int>(std::ceil(cy + rp + 1.0)));
    for (int y = y0; y <= y1; ++y)
      for (int x = x0; x <= x1; ++x) {
        const double dx = (x + 0.5) - cx;
        const double dy = (y + 0.5) - cy;
        const double d = std::sqrt(dx * dx + dy * dy);
        const double alpha = std::clamp(rp - d + 0.5, 0.0, 1.0);
        if (alpha <= 0.0) continue;
        for (int c = 0; c < 3; ++c) {
          const float bg = img.at(y, x, c);
          img.at(y, x, c) = static_cast<float>(bg + alpha * (col[c] - bg));
        }
      }
  }
  return img;
}

}  // namespace myriad::billiard
