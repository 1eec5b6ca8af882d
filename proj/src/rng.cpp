#include "circsym/rng.hpp"

#include <sodium.h>

#include <stdexcept>

namespace circsym {
namespace {

void ensure_sodium() {
  static const int status = sodium_init();
  if (status < 0) {
    throw std::runtime_error("libsodium initialisation failed");
  }
}

void put_le64(std::uint8_t* out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) {
    out[i] = static_cast<std::uint8_t>(v >> (8 * i));
  }
}

std::uint64_t get_le64(const std::uint8_t* in) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) {
    v |= static_cast<std::uint64_t>(in[i]) << (8 * i);
  }
  return v;
}

// BLAKE2b-256 over a domain tag followed by the given words.
template <std::size_t N>
SeededStream::Key hash_words(std::string_view tag, const std::array<std::uint64_t, N>& words,
                             const std::uint8_t* prefix = nullptr, std::size_t prefix_len = 0) {
  ensure_sodium();
  crypto_generichash_state state;
  crypto_generichash_init(&state, nullptr, 0, crypto_generichash_BYTES);
  crypto_generichash_update(&state, reinterpret_cast<const unsigned char*>(tag.data()), tag.size());
  if (prefix != nullptr) {
    crypto_generichash_update(&state, prefix, prefix_len);
  }
  for (std::uint64_t w : words) {
    std::uint8_t bytes[8];
    put_le64(bytes, w);
    crypto_generichash_update(&state, bytes, sizeof bytes);
  }
  SeededStream::Key key{};
  static_assert(crypto_generichash_BYTES == 32);
  crypto_generichash_final(&state, key.data(), key.size());
  return key;
}

}  // namespace

SeededStream::SeededStream(const Key& key) : key_(key) { ensure_sodium(); }

SeededStream::SeededStream(std::uint64_t seed)
    : SeededStream(hash_words("circsym.seed", std::array<std::uint64_t, 1>{seed})) {}

void SeededStream::refill() {
  std::uint8_t nonce[crypto_stream_chacha20_NONCEBYTES];
  static_assert(crypto_stream_chacha20_NONCEBYTES == 8);
  put_le64(nonce, block_++);
  std::uint8_t bytes[kWords * 8];
  crypto_stream_chacha20(bytes, sizeof bytes, nonce, key_.data());
  for (std::size_t i = 0; i < kWords; ++i) {
    buffer_[i] = get_le64(bytes + 8 * i);
  }
  cursor_ = 0;
}

SeededStream SeededStream::split(std::uint64_t lane) const {
  return SeededStream(
      hash_words("circsym.split", std::array<std::uint64_t, 1>{lane}, key_.data(), key_.size()));
}

SeededStream derive_stream(std::uint64_t master_seed, std::uint64_t scenario_id,
                           std::uint64_t replication_index) {
  return SeededStream(hash_words(
      "circsym.derive", std::array<std::uint64_t, 3>{master_seed, scenario_id, replication_index}));
}

std::uint64_t scenario_id_from_name(std::string_view name) {
  ensure_sodium();
  std::uint8_t digest[crypto_generichash_BYTES_MIN];
  crypto_generichash(digest, sizeof digest, reinterpret_cast<const unsigned char*>(name.data()),
                     name.size(), nullptr, 0);
  return get_le64(digest);
}

}  // namespace circsym
