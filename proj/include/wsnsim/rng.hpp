#pragma once

#include <cstdint>

namespace wsnsim {

// SplitMix64 (Steele/Lea/Flood). Chosen over std::mt19937_64 because the
// *distribution* step below is fully specified, so runs are byte-identical
// across platforms and standard libraries.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform double in [0,1), 53 significant bits.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

private:
    std::uint64_t state_;
};

// Independent streams derived from one run seed. Stream 0 drives node
// deployment, stream 1 drives election draws; extra streams are free.
inline SplitMix64 make_stream(std::uint64_t seed, std::uint64_t stream) {
    SplitMix64 mixer(seed);
    std::uint64_t base = mixer.next();
    SplitMix64 mixer2(base ^ (stream * 0xD6E8FEB86659FD93ull));
    return SplitMix64(mixer2.next());
}

}  // namespace wsnsim
