#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string_view>

namespace circsym {

/// A deterministic random stream: ChaCha20 keystream under a 256-bit key,
/// consumed as little-endian 64-bit words. Identical keys give identical
/// words on every platform. Streams are cheap values; copy one to fork it
/// (the copy replays the same words), or call split() for an independent one.
///
/// Satisfies UniformRandomBitGenerator.
class SeededStream {
 public:
  using result_type = std::uint64_t;
  using Key = std::array<std::uint8_t, 32>;

  explicit SeededStream(const Key& key);
  /// Key derived from a single 64-bit seed.
  explicit SeededStream(std::uint64_t seed);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return next_u64(); }

  std::uint64_t next_u64() {
    if (cursor_ == kWords) {
      refill();
    }
    return buffer_[cursor_++];
  }

  /// Uniform on the open interval (0, 1) with 53-bit resolution.
  double uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// An independent stream keyed by (this key, lane). Does not advance *this.
  SeededStream split(std::uint64_t lane) const;

  const Key& key() const noexcept { return key_; }

 private:
  static constexpr std::size_t kWords = 64;

  void refill();

  Key key_{};
  std::uint64_t block_ = 0;
  std::size_t cursor_ = kWords;
  std::array<std::uint64_t, kWords> buffer_{};
};

/// Substream for replication `replication_index` of scenario `scenario_id`
/// under `master_seed`. Pure function of the triple.
SeededStream derive_stream(std::uint64_t master_seed, std::uint64_t scenario_id,
                           std::uint64_t replication_index);

/// Stable 64-bit identifier for a scenario name (BLAKE2b of the UTF-8 bytes).
std::uint64_t scenario_id_from_name(std::string_view name);

}  // namespace circsym
