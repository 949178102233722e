#include "mlpode/rng.hpp"

#include <cmath>
#include <numbers>

namespace mlpode {

namespace {

// Fractional digits of pi; any fixed constant works.
constexpr philox::Block kRootIv = {0x243F6A88u, 0x85A308D3u, 0x13198A2Eu,
                                   0x03707344u};

philox::Key split_key(std::uint64_t v) noexcept {
  return {static_cast<std::uint32_t>(v), static_cast<std::uint32_t>(v >> 32)};
}

philox::Block fold(const philox::Block& chain, std::uint64_t message) noexcept {
  philox::Block out = philox::encrypt(chain, split_key(message));
  for (int i = 0; i < 4; ++i) out[i] ^= chain[i];
  return out;
}

inline double to_unit(std::uint32_t hi, std::uint32_t lo) noexcept {
  const std::uint64_t bits =
      ((static_cast<std::uint64_t>(hi) << 32) | lo) >> 11;
  return static_cast<double>(bits) * 0x1.0p-53;
}

}  // namespace

SplittableStream SplittableStream::root(std::uint64_t seed) noexcept {
  SplittableStream s;
  s.seed_ = seed;
  s.tag_ = fold(kRootIv, seed);
  return s;
}

SplittableStream SplittableStream::spawn(std::int64_t index) const {
  SplittableStream child;
  child.seed_ = seed_;
  child.tag_ = fold(tag_, static_cast<std::uint64_t>(index));
  child.path_.reserve(path_.size() + 1);
  child.path_.assign(path_.begin(), path_.end());
  child.path_.push_back(index);
  return child;
}

philox::Block SplittableStream::next_block() noexcept {
  const philox::Block ctr = {static_cast<std::uint32_t>(counter_),
                             static_cast<std::uint32_t>(counter_ >> 32),
                             tag_[2], tag_[3]};
  ++counter_;
  return philox::encrypt(ctr, {tag_[0], tag_[1]});
}

double SplittableStream::next_uniform() noexcept {
  const philox::Block b = next_block();
  return to_unit(b[0], b[1]);
}

double SplittableStream::next_gaussian() noexcept {
  const philox::Block b = next_block();
  const double u1 = to_unit(b[0], b[1]);
  const double u2 = to_unit(b[2], b[3]);
  // 1 - u1 lies in (0, 1], so the log is finite.
  const double radius = std::sqrt(-2.0 * std::log1p(-u1));
  return radius * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace mlpode
