#pragma once

#include <array>
#include <cstdint>

namespace chaosbound {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
struct Philox4x32 {
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    [[nodiscard]] static Counter block(Counter ctr, Key key);
};

// Deterministic stream of standard normals addressed by (seed, stream tag,
// replicate). Draw j of a stream depends only on those three values and j,
// never on which thread produced it.
class GaussianStream {
public:
    GaussianStream(std::uint64_t seed, std::uint32_t stream, std::uint64_t replicate);

    [[nodiscard]] double next();
    [[nodiscard]] double next_uniform();

private:
    void refill();

    Philox4x32::Key key_;
    Philox4x32::Counter ctr_;
    std::uint64_t block_ = 0;
    std::array<std::uint64_t, 2> words_{};
    int used_ = 2;
};

/// Inverse standard normal CDF on (0, 1).
[[nodiscard]] double normal_quantile(double u);

// Stream tags, so that different consumers of one seed never share draws.
inline constexpr std::uint32_t kStreamFgn = 0x66474e31;        // fGn paths
inline constexpr std::uint32_t kStreamDirect = 0x4e524d31;     // direct normal draws
inline constexpr std::uint32_t kStreamChaosMc = 0x43484d31;    // chaos polynomial MC
inline constexpr std::uint32_t kStreamSelftest = 0x53544631;   // random kernels

}  // namespace chaosbound
