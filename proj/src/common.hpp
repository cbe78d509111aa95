#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace groupcal {

// Error taxonomy shared by the C++ core, the C API and the CLI.
// The numeric values double as process exit codes.
enum class ErrorKind : int {
  validation = 2,  // schema, bounds, malformed input
  degenerate = 3,  // data unusable for the requested computation
  io = 4,          // file system failures
  internal = 5,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail_validation(const std::string& msg) {
  throw Error(ErrorKind::validation, msg);
}
[[noreturn]] inline void fail_degenerate(const std::string& msg) {
  throw Error(ErrorKind::degenerate, msg);
}
[[noreturn]] inline void fail_io(const std::string& msg) {
  throw Error(ErrorKind::io, msg);
}

// Clamp applied before every logarithm of a posterior. Keeps cross-entropy
// finite while still penalizing confident mistakes by ~13.8 nats.
inline constexpr double kProbEpsilon = 1e-6;

inline double clamp_prob(double p) {
  if (p < kProbEpsilon) return kProbEpsilon;
  if (p > 1.0 - kProbEpsilon) return 1.0 - kProbEpsilon;
  return p;
}

inline double sigmoid(double x) {
  if (x >= 0.0) {
    return 1.0 / (1.0 + std::exp(-x));
  }
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// splitmix64 mixing step; used to derive independent substreams from one
// user-facing seed (fold shuffles, bootstrap replicates, per-group synthesis).
inline uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline uint64_t substream_seed(uint64_t seed, uint64_t stream) {
  return splitmix64(splitmix64(seed) ^ (0x9E3779B97F4A7C15ULL * (stream + 1)));
}

// FNV-1a 64-bit; used for input digests in report provenance.
inline uint64_t fnv1a64(const std::string& data) {
  uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

}  // namespace groupcal
