#include "vclass/rng.hpp"

namespace vclass {

namespace {

// splitmix64, used only to expand (seed, stream id) into xoshiro state.
std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

} // namespace

RngStream::RngStream(std::uint64_t key) {
    std::uint64_t x = key;
    for (auto& word : state_) word = splitmix64(x);
}

std::uint64_t RngStream::next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double RngStream::uniform(double lo, double hi) {
    const double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

std::uint32_t RngStream::uniform_index(std::uint32_t n) {
    // Rejection below the largest multiple of n, so every value is equally likely.
    const std::uint64_t limit = ~0ull - ~0ull % n;
    std::uint64_t v;
    do {
        v = next_u64();
    } while (v >= limit);
    return static_cast<std::uint32_t>(v % n);
}

int RngStream::uniform_int(int lo, int hi) {
    return lo + static_cast<int>(uniform_index(static_cast<std::uint32_t>(hi - lo + 1)));
}

RngStream Rng::stream(std::uint64_t stream_id) const {
    // Mix the stream id through one splitmix round before combining so
    // nearby ids land far apart.
    std::uint64_t x = stream_id ^ 0xD3F8A2B1C44E9F0Dull;
    std::uint64_t mixed = splitmix64(x);
    return RngStream(seed_ ^ mixed);
}

RngStream Rng::character_stream(int character_id) const {
    return stream(static_cast<std::uint64_t>(character_id));
}

RngStream Rng::master() const {
    return stream(0xFFFFFFFF00000000ull);
}

RngStream Rng::gaze_stream(int character_id) const {
    return stream((1ull << 32) | static_cast<std::uint64_t>(character_id));
}

} // namespace vclass
