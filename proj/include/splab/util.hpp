#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace splab {

inline constexpr const char* kVersion = "1.0.0";

// --------------------------------------------------------------------------
// Seeding. All randomness in the tool flows from one root seed through
// derive_seed(root, suite, stream, trial), so any single trial can be
// reproduced in isolation.
// --------------------------------------------------------------------------

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::uint64_t derive_seed(std::uint64_t root, std::string_view suite,
                                 std::uint64_t stream = 0, std::uint64_t trial = 0) {
    std::uint64_t s = splitmix64(root ^ fnv1a64(suite));
    s = splitmix64(s ^ stream);
    s = splitmix64(s ^ trial);
    return s;
}

// --------------------------------------------------------------------------
// Static-chunk parallel loop. Chunk boundaries depend only on (n, threads),
// never on scheduling, so results that reduce per-chunk are reproducible
// for a fixed thread count.
// --------------------------------------------------------------------------

inline unsigned default_threads() {
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : hc;
}

template <typename Fn>
void parallel_chunks(std::uint64_t n, unsigned threads, Fn&& fn) {
    if (threads <= 1 || n < 2) {
        fn(std::uint64_t{0}, n);
        return;
    }
    if (threads > n) threads = static_cast<unsigned>(n);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    std::uint64_t chunk = (n + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        std::uint64_t lo = t * chunk;
        std::uint64_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&fn, lo, hi] { fn(lo, hi); });
    }
    for (auto& th : pool) th.join();
}

// --------------------------------------------------------------------------
// Atomic file output: write to <path>.tmp, then rename over the target.
// --------------------------------------------------------------------------

void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

// Deterministic floating-point formatting for reports (%.12g).
std::string fmt_double(double v);

}  // namespace splab
