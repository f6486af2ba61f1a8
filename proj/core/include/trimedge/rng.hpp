#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

namespace trimedge {

/// Philox4x32-10 block function (Salmon et al., "Parallel random numbers:
/// as easy as 1, 2, 3"). Pure function of (counter, key).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Reproducible substream of a counter-based generator.
///
/// The pair (base_seed, stream_index) names the substream; draw i of that
/// substream is a pure function of (base_seed, stream_index, i), so results
/// never depend on which worker evaluates which replicate.
class RngStream {
 public:
  RngStream(std::uint64_t base_seed, std::uint64_t stream_index);

  std::uint64_t base_seed() const { return base_seed_; }
  std::uint64_t stream_index() const { return stream_index_; }

  std::uint64_t next_u64();

  /// Uniform on the open interval (0, 1); never returns 0 or 1.
  double next_uniform();

 private:
  void refill();

  std::uint64_t base_seed_;
  std::uint64_t stream_index_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int buffered_ = 0;
};

/// Substream for replicate `rep` at sample size `n`: stream index (n << 32) | rep.
/// Keyed by the size itself, so adding sizes never perturbs existing results.
inline RngStream replicate_stream(std::uint64_t base_seed, std::size_t n, std::size_t rep) {
  return RngStream(base_seed, (static_cast<std::uint64_t>(n) << 32) | static_cast<std::uint64_t>(rep));
}

}  // namespace trimedge
