#include "fimstat/rng.hpp"

#include <cmath>
#include <numbers>

namespace fimstat {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) noexcept {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

// 53-bit double in [0, 1) from two 32-bit words.
inline double to_unit(std::uint32_t a, std::uint32_t b) noexcept {
    const std::uint64_t hi = a >> 5;  // 27 bits
    const std::uint64_t lo = b >> 6;  // 26 bits
    return static_cast<double>((hi << 26) | lo) * 0x1.0p-53;
}

}  // namespace

Philox4x32::Counter Philox4x32::block(Counter ctr, Key key) noexcept {
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kMul0, ctr[0], hi0, lo0);
        mulhilo(kMul1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kWeyl0;
        key[1] += kWeyl1;
    }
    return ctr;
}

Philox4x32::Counter GaussianSource::counter(std::uint64_t block_index) const noexcept {
    return {static_cast<std::uint32_t>(block_index), static_cast<std::uint32_t>(block_index >> 32),
            lane_, static_cast<std::uint32_t>(stream_)};
}

double GaussianSource::normal(std::uint64_t index) const noexcept {
    const Philox4x32::Key key{static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32)};
    const auto r = Philox4x32::block(counter(index / 2), key);
    const double u1 = 1.0 - to_unit(r[0], r[1]);  // (0, 1]
    const double u2 = to_unit(r[2], r[3]);
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    return (index % 2 == 0) ? radius * std::cos(angle) : radius * std::sin(angle);
}

void GaussianSource::fill_normal(std::span<double> out, std::uint64_t first, double scale) const noexcept {
    const Philox4x32::Key key{static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32)};
    std::size_t n = 0;
    while (n < out.size()) {
        const std::uint64_t index = first + n;
        const auto r = Philox4x32::block(counter(index / 2), key);
        const double radius = std::sqrt(-2.0 * std::log(1.0 - to_unit(r[0], r[1])));
        const double angle = 2.0 * std::numbers::pi * to_unit(r[2], r[3]);
        if (index % 2 == 0) {
            out[n++] = scale * radius * std::cos(angle);
            if (n == out.size()) break;
        }
        out[n++] = scale * radius * std::sin(angle);
    }
}

double GaussianSource::uniform(std::uint64_t index) const noexcept {
    const Philox4x32::Key key{static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32)};
    const auto r = Philox4x32::block(counter(index / 2), key);
    return (index % 2 == 0) ? to_unit(r[0], r[1]) : to_unit(r[2], r[3]);
}

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t tag) noexcept {
    std::uint64_t z = base + 0x9E3779B97F4A7C15ull * (tag + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace fimstat
