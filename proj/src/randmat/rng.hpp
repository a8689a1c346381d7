#pragma once

#include <array>
#include <cstdint>

#include <Eigen/Core>

namespace sw {

/// Philox4x32-10 counter-based block generator (Salmon et al., Random123).
/// Multipliers 0xD2511F53 / 0xCD9E8D57, Weyl key increments 0x9E3779B9 /
/// 0xBB67AE85, ten rounds.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

/// SplitMix64 finalizer, used to derive independent substream keys.
std::uint64_t splitmix64(std::uint64_t x);

/// Command/component salts for substream derivation. Values are part of the
/// reproducibility contract and must not change.
enum class Salt : std::uint64_t {
  GaussianMatrix = 0x6761757373ULL,     // "gauss"
  RandomSubspace = 0x7375627370ULL,     // "subsp"
  RestrictionStart = 0x7265737472ULL,   // "restr"
  FlatTop = 0x666c6174ULL,              // "flat"
  MonteCarloTrial = 0x6d63747269ULL,    // "mctri"
  DvoretzkyTrial = 0x64766f72ULL,       // "dvor"
  MinimaxOuter = 0x6d696e6d6178ULL,     // "minmax"
  KolmogorovOuter = 0x6b6f6c6dULL,      // "kolm"
  AveragedSet = 0x61766773ULL,          // "avgs"
  DualityNet = 0x6475616cULL,           // "dual"
  Acceptance = 0x61636365707400ULL,     // "accept"
};

/// key = splitmix64(splitmix64(seed ^ salt) + index)
std::uint64_t derive_key(std::uint64_t seed, Salt salt, std::uint64_t index);

/// A stream of random numbers backed by Philox4x32-10 with a 64-bit key and a
/// 64-bit block counter (upper counter words fixed at zero). Not thread-safe;
/// give every task its own stream via derive_key.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t key) : key_(key) {}
  RandomStream(std::uint64_t seed, Salt salt, std::uint64_t index)
      : key_(derive_key(seed, salt, index)) {}

  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform integer on [0, bound) by rejection; bound > 0.
  std::uint64_t below(std::uint64_t bound);
  /// Standard normal via the Marsaglia polar method.
  double normal();

 private:
  std::uint64_t key_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int buffered_words_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// rows x cols matrix of standard normals, filled in column-major order.
Eigen::MatrixXd gaussian_matrix(RandomStream& stream, Eigen::Index rows, Eigen::Index cols);

/// Haar-distributed orthogonal matrix (QR of a Gaussian matrix, signs fixed
/// by the diagonal of R).
Eigen::MatrixXd haar_orthogonal(RandomStream& stream, Eigen::Index order);

}  // namespace sw
