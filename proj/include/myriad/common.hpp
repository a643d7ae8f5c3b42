#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace myriad {

// ============================================================
// Matrix aliases. Row-major everywhere: rows are tokens/samples,
// columns are channels, matching the memory layout the attention
// and GEMM kernels assume.
// ============================================================
template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;

using MatF = Mat<float>;
using MatD = Mat<double>;
using VecF = Vec<float>;
using VecD = Vec<double>;

// ============================================================
// Error taxonomy
// ============================================================
struct InvalidArgumentError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct StateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct TrainingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define MYRIAD_CHECK_ARG(cond, msg) \
  do {                              \
    if (!(cond)) throw ::myriad::InvalidArgumentError(msg); \
  } while (0)

// ============================================================
// Small math helpers
// ============================================================
template <class S>
inline S gelu_tanh(S x) {
  // GELU, tanh approximation.
  const S c = S(0.7978845608028654);  // sqrt(2/pi)
  const S a = S(0.044715);
  return S(0.5) * x * (S(1) + std::tanh(c * (x + a * x * x * x)));
}

template <class S>
inline S gelu_tanh_grad(S x) {
  const S c = S(0.7978845608028654);
  const S a = S(0.044715);
  const S u = c * (x + a * x * x * x);
  const S t = std::tanh(u);
  const S du = c * (S(1) + S(3) * a * x * x);
  return S(0.5) * (S(1) + t) + S(0.5) * x * (S(1) - t * t) * du;
}

template <class S>
inline bool all_finite(const Mat<S>& m) {
  return m.allFinite();
}

// FNV-1a, used for config digests and seed derivation.
inline std::uint64_t fnv1a64(const void* data, std::size_t n,
                             std::uint64_t h = 0xcbf29ce484222325ull) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ull;
  }
  return h;
}
inline std::uint64_t fnv1a64(const std::string& s) {
  return fnv1a64(s.data(), s.size());
}

}  // namespace myriad
