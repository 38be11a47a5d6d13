#pragma once

#include <cstdint>
#include <random>

namespace fusionlab {

// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Stream key for (root seed, stream tag, index). Independent of call order,
// so per-observer or per-replication streams can be drawn in parallel.
constexpr std::uint64_t derive_seed(std::uint64_t root, std::uint64_t tag, std::uint64_t index = 0) noexcept {
    return mix64(mix64(mix64(root) ^ tag) ^ index);
}

inline std::mt19937_64 make_stream(std::uint64_t root, std::uint64_t tag, std::uint64_t index = 0) {
    return std::mt19937_64(derive_seed(root, tag, index));
}

namespace stream_tag {
inline constexpr std::uint64_t kItem = 0x1001;
inline constexpr std::uint64_t kObserver = 0x1002;
inline constexpr std::uint64_t kMachine = 0x1003;
inline constexpr std::uint64_t kReplication = 0x2001;
inline constexpr std::uint64_t kRandomMatching = 0x2002;
}  // namespace stream_tag

}  // namespace fusionlab
