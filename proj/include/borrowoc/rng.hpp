#pragma once

#include <array>
#include <cstdint>

namespace borrowoc {

/// Philox4x32-10 block function (Salmon et al., SC'11).
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key) noexcept;

/// Counter-based random stream. The sequence is a pure function of
/// (seed, stream_id), so replicate i can be generated on any thread, in any
/// order, with bit-identical results.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id) noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  std::uint64_t next_u64() noexcept;

  /// Uniform on the open interval (0, 1) with 53 random bits.
  double uniform() noexcept;

  /// Standard normal deviate by inversion.
  double normal();

 private:
  void refill() noexcept;

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int available_ = 0;
};

}  // namespace borrowoc
