#include "simpute/rng.hpp"

#include <algorithm>

#include "simpute/error.hpp"

namespace simpute {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t mix_seed(std::uint64_t base, std::string_view stream,
                       std::uint64_t index) {
  // FNV-1a over the stream name, then splitmix over (base, name hash, index).
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : stream) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::uint64_t state = base;
  std::uint64_t mixed = splitmix64(state);
  state = mixed ^ h;
  mixed = splitmix64(state);
  state = mixed ^ index;
  return splitmix64(state);
}

std::mt19937_64 make_rng(std::uint64_t base, std::string_view stream,
                         std::uint64_t index) {
  return std::mt19937_64(mix_seed(base, stream, index));
}

std::vector<std::size_t> sample_without_replacement(std::size_t n,
                                                    std::size_t count,
                                                    std::mt19937_64& rng) {
  if (count > n)
    fail(errc::invalid_argument, "cannot sample more indices than available");
  // Partial Fisher-Yates over an index pool.
  std::vector<std::size_t> pool(n);
  for (std::size_t i = 0; i < n; ++i) pool[i] = i;
  for (std::size_t i = 0; i < count; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(pool[i], pool[pick(rng)]);
  }
  pool.resize(count);
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace simpute
