#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace wsbr {

inline constexpr int kDefaultDepth = 64;

// Dual roughness pair with kappa * gamma = 1/2.
class Roughness {
public:
    // gamma in (1/2, 1]; gamma = 1 is the kappa = 1/2 endpoint used by the
    // certification literature, where W itself is undefined.
    static Roughness from_gamma(double gamma);
    // kappa in [1/2, 1).
    static Roughness from_kappa(double kappa);

    double gamma() const { return gamma_; }
    double kappa() const { return kappa_; }
    // H = log(gamma) / log(1/2)
    double hurst() const;
    bool w_defined() const { return gamma_ < 1.0; }

private:
    Roughness(double g, double k) : gamma_(g), kappa_(k) {}
    double gamma_;
    double kappa_;
};

// Finite dyadic expansion, bits[0] the most significant digit.
struct BitSequence {
    std::vector<std::uint8_t> bits;

    int depth() const { return static_cast<int>(bits.size()); }
    std::uint8_t operator[](int i) const { return bits[static_cast<std::size_t>(i)]; }
    bool operator==(const BitSequence&) const = default;

    static BitSequence zeros(int depth);
    // The top `depth` bits of w, most significant first; depth <= 64.
    static BitSequence from_word(std::uint64_t w, int depth = 64);
    // Packs the first min(depth, 64) bits back into a word.
    std::uint64_t top_word() const;
};

struct JumpTimes {
    std::vector<int> times;
    int depth = kDefaultDepth;
    bool operator==(const JumpTimes&) const = default;
};

struct PhasePoint {
    BitSequence xi;
    double x = 0.0;
};

BitSequence encode(double value, int depth);
double decode(const BitSequence& b);

// (xi_k, x_k) = B^k(xi, x). Forward steps consume digits of xi, backward
// steps prepend digits of x.
PhasePoint baker(const PhasePoint& p, int k);

// B_2^n(xi, x): second coordinate after n forward steps, without touching xi.
double baker_x(const BitSequence& xi, double x, int n);

JumpTimes jump_times(const BitSequence& b);
BitSequence bits_from_jumps(const JumpTimes& t, int depth);

// Seeded random stream; (seed, stream_id) fully determines the output.
class Stream {
public:
    explicit Stream(std::uint64_t seed, std::uint64_t stream_id = 0);
    std::uint64_t next() { return eng_(); }
    // Uniform on [0,1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    // Uniform dyadic m / 2^52; sums with a single digit stay exact.
    double uniform_dyadic52() { return static_cast<double>(next() >> 12) * 0x1.0p-52; }

private:
    std::mt19937_64 eng_;
};

BitSequence random_bits(Stream& s, int depth = kDefaultDepth);

// Rejection sampler on {xi - eta > 1/2}; 3 <= depth <= 64.
std::pair<BitSequence, BitSequence> sample_macroscopic_pair(Stream& s, int depth = kDefaultDepth);

// Same sampler on raw 64-bit words; used by the Monte Carlo kernels.
std::pair<std::uint64_t, std::uint64_t> sample_macroscopic_words(Stream& s);

}  // namespace wsbr
