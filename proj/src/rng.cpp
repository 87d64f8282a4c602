#include "borrowoc/rng.hpp"

#include "borrowoc/statmath.hpp"

namespace borrowoc {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                    std::uint32_t& lo) noexcept {
  const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(product >> 32);
  lo = static_cast<std::uint32_t>(product);
}

inline PhiloxCounter round(const PhiloxCounter& ctr, const PhiloxKey& key) noexcept {
  std::uint32_t hi0, lo0, hi1, lo1;
  mulhilo(kMul0, ctr[0], hi0, lo0);
  mulhilo(kMul1, ctr[2], hi1, lo1);
  return {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

}  // namespace

PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key) noexcept {
  counter = round(counter, key);
  for (int r = 1; r < 10; ++r) {
    key[0] += kWeyl0;
    key[1] += kWeyl1;
    counter = round(counter, key);
  }
  return counter;
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id) noexcept
    : seed_(seed), stream_id_(stream_id) {}

void RngStream::refill() noexcept {
  const PhiloxCounter ctr{static_cast<std::uint32_t>(block_),
                          static_cast<std::uint32_t>(block_ >> 32),
                          static_cast<std::uint32_t>(stream_id_),
                          static_cast<std::uint32_t>(stream_id_ >> 32)};
  const PhiloxKey key{static_cast<std::uint32_t>(seed_),
                      static_cast<std::uint32_t>(seed_ >> 32)};
  const auto out = philox4x32_10(ctr, key);
  buffer_[0] = (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
  buffer_[1] = (static_cast<std::uint64_t>(out[3]) << 32) | out[2];
  available_ = 2;
  ++block_;
}

std::uint64_t RngStream::next_u64() noexcept {
  if (available_ == 0) refill();
  return buffer_[2 - available_--];
}

double RngStream::uniform() noexcept {
  constexpr double kScale = 1.0 / 9007199254740992.0;  // 2^-53
  return (static_cast<double>(next_u64() >> 11) + 0.5) * kScale;
}

double RngStream::normal() { return norm_quantile(uniform()); }

}  // namespace borrowoc
