#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace fimstat {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
/// Output is a pure function of (key, counter), so any element of a random
/// stream can be produced independently of the others.
struct Philox4x32 {
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter block(Counter ctr, Key key) noexcept;
};

/// Stream tags keep weights, biases, inputs and shuffles of the same seed
/// decorrelated.
enum class Stream : std::uint32_t {
    weights = 1,
    biases = 2,
    inputs = 3,
    shuffle = 4,
    generic = 5,
};

/// Random-access N(0,1) and U[0,1) variates addressed by
/// (seed, stream, lane, index). Two normals come from one Philox block via
/// Box-Muller, so results do not depend on the C++ standard library.
class GaussianSource {
public:
    GaussianSource(std::uint64_t seed, Stream stream, std::uint32_t lane = 0) noexcept
        : seed_(seed), stream_(stream), lane_(lane) {}

    double normal(std::uint64_t index) const noexcept;
    double uniform(std::uint64_t index) const noexcept;

    /// out[n] = scale * normal(first + n); same values as calling normal().
    void fill_normal(std::span<double> out, std::uint64_t first, double scale = 1.0) const noexcept;

    std::uint64_t seed() const noexcept { return seed_; }

private:
    Philox4x32::Counter counter(std::uint64_t block_index) const noexcept;

    std::uint64_t seed_;
    Stream stream_;
    std::uint32_t lane_;
};

/// SplitMix64 finaliser; used to derive child seeds (teacher, student, data,
/// trial) from one base seed.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t tag) noexcept;

}  // namespace fimstat
