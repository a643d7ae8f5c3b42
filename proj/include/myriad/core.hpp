#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "myriad/common.hpp"

namespace myriad {

// ============================================================
// Coordinate convention (global): (0,0) = top-left of the image /
// table, (1,1) = bottom-right; x grows right, y grows down.
// Positions live in [0,1]^2, motion increments in [-1,1] per axis
// (one unit = the full image side).
// ============================================================

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  double dot(const Vec2& o) const { return x * o.x + y * o.y; }
  double norm() const { return std::sqrt(x * x + y * y); }
};

// Per-step motion increment in normalized units.
struct MotionIncrement {
  Vec2 delta;
};

// H x W x 3 image, values in [0,1], row-major, channel-last.
// Pixel (row 0, col 0) is the table/image corner (0,0).
struct Image {
  int height = 0;
  int width = 0;
  std::vector<float> data;  // height*width*3

  float& at(int row, int col, int c) { return data[(row * width + col) * 3 + c]; }
  float at(int row, int col, int c) const { return data[(row * width + col) * 3 + c]; }
};

// K trajectories over T prediction steps: positions are K x (T+1) x 2,
// index t=0 holding the query positions.
struct TrajectoryBatch {
  int K = 0;
  int T = 0;
  std::vector<double> pos;  // K*(T+1)*2

  TrajectoryBatch() = default;
  TrajectoryBatch(int k, int t) : K(k), T(t), pos(static_cast<size_t>(k) * (t + 1) * 2, 0.0) {}

  double& x(int i, int t) { return pos[(static_cast<size_t>(i) * (T + 1) + t) * 2 + 0]; }
  double& y(int i, int t) { return pos[(static_cast<size_t>(i) * (T + 1) + t) * 2 + 1]; }
  double x(int i, int t) const { return pos[(static_cast<size_t>(i) * (T + 1) + t) * 2 + 0]; }
  double y(int i, int t) const { return pos[(static_cast<size_t>(i) * (T + 1) + t) * 2 + 1]; }
  Vec2 at(int i, int t) const { return {x(i, t), y(i, t)}; }
};

// Model input: one reference image, K query points, optional per-
// trajectory prefixes of already-realized motion increments.
struct Scene {
  Image image;
  std::vector<Vec2> queries;               // K, in [0,1]^2
  std::vector<std::vector<Vec2>> hints;    // empty, or K prefixes (possibly empty per trajectory)

  int K() const { return static_cast<int>(queries.size()); }
};

// One dataset row: scene descriptor (initial billiard state), ground
// truth tracks, cue impulse, and the seed that generated it.
struct EpisodeRecord {
  std::uint32_t n_balls = 0;
  float ball_radius = 0.025f;
  std::vector<Vec2> positions;   // n_balls
  std::vector<Vec2> velocities;  // n_balls
  Vec2 impulse;                  // applied to cue (trajectory 0), length/s
  std::uint64_t seed = 0;
  TrajectoryBatch tracks;        // K x (T+1) x 2
};

enum class HeadKind { fm, gmm, regression };
enum class TrajIdMode { random, learnable, none };

inline std::string to_string(HeadKind k) {
  switch (k) {
    case HeadKind::fm: return "fm";
    case HeadKind::gmm: return "gmm";
    case HeadKind::regression: return "regression";
  }
  return "fm";
}
inline std::string to_string(TrajIdMode m) {
  switch (m) {
    case TrajIdMode::random: return "random";
    case TrajIdMode::learnable: return "learnable";
    case TrajIdMode::none: return "none";
  }
  return "random";
}

// ============================================================
// ModelConfig: architecture and data-shape knobs. Desk-scale
// defaults; width 1024 / depth 24 / head_dim 128 is the paper-scale
// configuration and remains configurable.
// ============================================================
struct ModelConfig {
  int width = 256;
  int depth = 8;
  int head_dim = 32;
  int ffn_expand = 4;
  int denoiser_width = 256;
  int denoiser_depth = 3;
  int K_train = 16;
  int T_train = 16;
  int id_dim = 32;
  int fourier_freqs = 16;        // per axis
  double nope_fraction = 0.125;  // fraction of head_dim without positional rotation
  double sigma_noise = 1.0;
  HeadKind head_kind = HeadKind::fm;
  bool cascade_enabled = true;
  TrajIdMode traj_id_mode = TrajIdMode::random;

  // Encoder geometry.
  int image_size = 128;
  int patch_size = 16;
  int encoder_blocks = 4;

  // Head internals.
  int n_scales = 128;  // scale-cascade size (paper: 512)
  int n_mix = 8;       // GMM mixture components

  // Learnable trajectory-ID table capacity.
  int id_table_size = 16;

  void validate() const {
    MYRIAD_CHECK_ARG(width >= 1 && depth >= 1 && head_dim >= 1, "config: counts must be >= 1");
    MYRIAD_CHECK_ARG(width % head_dim == 0, "config: width must be divisible by head_dim");
    MYRIAD_CHECK_ARG(nope_fraction >= 0.0 && nope_fraction < 1.0,
                     "config: nope_fraction must be in [0,1)");
    MYRIAD_CHECK_ARG(ffn_expand >= 1 && denoiser_width >= 1 && denoiser_depth >= 1,
                     "config: counts must be >= 1");
    MYRIAD_CHECK_ARG(K_train >= 1 && T_train >= 1 && id_dim >= 2 && fourier_freqs >= 1,
                     "config: counts must be >= 1 (id_dim >= 2)");
    MYRIAD_CHECK_ARG(sigma_noise > 0.0, "config: sigma_noise must be > 0");
    MYRIAD_CHECK_ARG(image_size % patch_size == 0,
                     "config: image_size must be divisible by patch_size");
    MYRIAD_CHECK_ARG(n_scales >= 2 && n_mix >= 1, "config: n_scales >= 2, n_mix >= 1");
  }
};

// ============================================================
// Operations
// ============================================================

// positions[i][t+1] = positions[i][t] + deltas[i][t], summed in
// time-ascending order. deltas is K x T.
inline TrajectoryBatch accumulate_increments(const std::vector<Vec2>& start,
                                             const std::vector<std::vector<Vec2>>& deltas) {
  const int K = static_cast<int>(start.size());
  MYRIAD_CHECK_ARG(K >= 1, "accumulate_increments: need at least one trajectory");
  MYRIAD_CHECK_ARG(static_cast<int>(deltas.size()) == K,
                   "accumulate_increments: deltas must have K rows");
  const int T = static_cast<int>(deltas[0].size());
  for (const auto& row : deltas)
    MYRIAD_CHECK_ARG(static_cast<int>(row.size()) == T,
                     "accumulate_increments: ragged delta rows");
  TrajectoryBatch out(K, T);
  for (int i = 0; i < K; ++i) {
    Vec2 p = start[i];
    out.x(i, 0) = p.x;
    out.y(i, 0) = p.y;
    for (int t = 0; t < T; ++t) {
      p = p + deltas[i][t];
      out.x(i, t + 1) = p.x;
      out.y(i, t + 1) = p.y;
    }
  }
  return out;
}

// Exact inverse of accumulate_increments.
inline std::vector<std::vector<Vec2>> first_difference(const TrajectoryBatch& tb) {
  std::vector<std::vector<Vec2>> out(tb.K);
  for (int i = 0; i < tb.K; ++i) {
    out[i].resize(tb.T);
    for (int t = 0; t < tb.T; ++t) out[i][t] = tb.at(i, t + 1) - tb.at(i, t);
  }
  return out;
}

// Report-only episode validation: returns the list of violated
// invariants, empty when the episode is well formed.
inline std::vector<std::string> validate_episode(const EpisodeRecord& rec, double dt = 0.01,
                                                 double impulse_tol = 1e-4) {
  std::vector<std::string> report;
  auto finite = [](double v) { return std::isfinite(v); };

  if (rec.n_balls == 0) report.push_back("no balls");
  if (rec.positions.size() != rec.n_balls || rec.velocities.size() != rec.n_balls)
    report.push_back("state arrays inconsistent with n_balls");
  if (rec.tracks.K <= 0 || rec.tracks.T <= 0) report.push_back("empty tracks");

  for (size_t i = 0; i < rec.positions.size(); ++i) {
    const auto& p = rec.positions[i];
    if (!finite(p.x) || !finite(p.y)) report.push_back("non-finite position");
    else if (p.x < 0.0 || p.x > 1.0 || p.y < 0.0 || p.y > 1.0)
      report.push_back("coordinate out of range");
  }
  bool track_finite = true, track_range = true;
  for (double v : rec.tracks.pos) {
    if (!std::isfinite(v)) track_finite = false;
    else if (v < 0.0 || v > 1.0) track_range = false;
  }
  if (!track_finite) report.push_back("non-finite position");
  if (!track_range) report.push_back("coordinate out of range");

  if (rec.tracks.K > 0 && rec.tracks.T >= 1 && track_finite) {
    const Vec2 d = rec.tracks.at(0, 1) - rec.tracks.at(0, 0);
    const Vec2 expect = rec.impulse * dt;
    if ((d - expect).norm() > impulse_tol) report.push_back("impulse inconsistent with first step");
  }
  return report;
}

}  // namespace myriad
