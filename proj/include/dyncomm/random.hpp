#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace dyncomm {

// splitmix64 finalizer, used to derive per-component seeds from one root seed.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream, std::uint64_t index = 0) {
    return mix64(root ^ mix64(stream ^ mix64(index)));
}

// Named seed streams so every component draws from a distinct sequence.
namespace seed_stream {
inline constexpr std::uint64_t graph = 1;
inline constexpr std::uint64_t snapshots = 2;
inline constexpr std::uint64_t policy = 3;
inline constexpr std::uint64_t detector = 4;
inline constexpr std::uint64_t baseline = 5;
}  // namespace seed_stream

// mt19937_64 with hand-rolled draws. The engine itself is pinned by the
// standard; the <random> distributions are not, and run logs must be
// byte-identical for a fixed seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // [0,1) with 53 random bits
    double uniform_double() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    // [0,bound), exactly uniform via rejection
    std::uint64_t uniform_int(std::uint64_t bound) {
        if (bound <= 1) return 0;
        const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
        const std::uint64_t limit = max - max % bound;
        std::uint64_t x;
        do {
            x = gen_();
        } while (x >= limit);
        return x % bound;
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(uniform_int(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace dyncomm
