#include "wsbr/dyadic.hpp"

#include "wsbr/errors.hpp"

#include <cmath>
#include <string>

namespace wsbr {

Roughness Roughness::from_gamma(double gamma)
{
    if (!(gamma > 0.5 && gamma <= 1.0))
        throw DomainError("gamma must lie in (1/2, 1], got " + std::to_string(gamma));
    return Roughness(gamma, 0.5 / gamma);
}

Roughness Roughness::from_kappa(double kappa)
{
    if (!(kappa >= 0.5 && kappa < 1.0))
        throw DomainError("kappa must lie in [1/2, 1), got " + std::to_string(kappa));
    return Roughness(0.5 / kappa, kappa);
}

double Roughness::hurst() const { return std::log(gamma_) / std::log(0.5); }

BitSequence BitSequence::zeros(int depth)
{
    if (depth <= 0)
        throw DomainError("depth must be positive");
    return BitSequence{std::vector<std::uint8_t>(static_cast<std::size_t>(depth), 0)};
}

BitSequence BitSequence::from_word(std::uint64_t w, int depth)
{
    if (depth <= 0 || depth > 64)
        throw DomainError("from_word depth must be in [1, 64]");
    BitSequence b;
    b.bits.resize(static_cast<std::size_t>(depth));
    for (int i = 0; i < depth; ++i)
        b.bits[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((w >> (63 - i)) & 1u);
    return b;
}

std::uint64_t BitSequence::top_word() const
{
    std::uint64_t w = 0;
    const int n = depth() < 64 ? depth() : 64;
    for (int i = 0; i < n; ++i)
        if (bits[static_cast<std::size_t>(i)])
            w |= std::uint64_t{1} << (63 - i);
    return w;
}

BitSequence encode(double value, int depth)
{
    if (!(value >= 0.0 && value < 1.0))
        throw DomainError("encode: value outside [0,1)");
    if (depth <= 0)
        throw DomainError("encode: depth must be positive");
    BitSequence b;
    b.bits.resize(static_cast<std::size_t>(depth));
    double v = value;
    for (int i = 0; i < depth; ++i) {
        v *= 2.0;  // exact in binary floating point
        const std::uint8_t d = v >= 1.0 ? 1 : 0;
        b.bits[static_cast<std::size_t>(i)] = d;
        v -= d;
    }
    return b;
}

double decode(const BitSequence& b)
{
    // Least significant digit first keeps every partial sum exact up to 53 digits.
    double v = 0.0;
    for (int i = b.depth() - 1; i >= 0; --i)
        v = (v + b[i]) * 0.5;
    return v;
}

double baker_x(const BitSequence& xi, double x, int n)
{
    if (n > xi.depth())
        throw PrecisionError("baker_x: " + std::to_string(n) + " steps exceed depth " + std::to_string(xi.depth()));
    double b = x;
    for (int i = 0; i < n; ++i)
        b = (xi[i] + b) * 0.5;
    return b;
}

PhasePoint baker(const PhasePoint& p, int k)
{
    if (!(p.x >= 0.0 && p.x <= 1.0))
        throw DomainError("baker: x outside [0,1]");
    if (k >= 0) {
        if (k > p.xi.depth())
            throw PrecisionError("baker: forward step " + std::to_string(k) + " exceeds digit depth "
                                 + std::to_string(p.xi.depth()));
        PhasePoint q;
        q.x = baker_x(p.xi, p.x, k);
        q.xi.bits.assign(p.xi.bits.begin() + k, p.xi.bits.end());
        if (q.xi.bits.empty())
            throw PrecisionError("baker: digit expansion exhausted");
        return q;
    }
    const int m = -k;
    if (m > 53)
        throw PrecisionError("baker: backward step " + std::to_string(m) + " exceeds the digits carried by x");
    // Digits x_1..x_m of x, then xi_{-m} = 0.x_m ... x_1 xi.
    std::vector<std::uint8_t> xd(static_cast<std::size_t>(m));
    double v = p.x;
    if (v >= 1.0)
        v = 0.0;  // x = 1 is identified with the digit string 0.111...
    for (int i = 0; i < m; ++i) {
        v *= 2.0;
        const std::uint8_t d = v >= 1.0 ? 1 : 0;
        xd[static_cast<std::size_t>(i)] = d;
        v -= d;
    }
    PhasePoint q;
    q.x = v;
    q.xi.bits.reserve(static_cast<std::size_t>(m + p.xi.depth()));
    for (int i = m - 1; i >= 0; --i)
        q.xi.bits.push_back(xd[static_cast<std::size_t>(i)]);
    q.xi.bits.insert(q.xi.bits.end(), p.xi.bits.begin(), p.xi.bits.end());
    return q;
}

JumpTimes jump_times(const BitSequence& b)
{
    JumpTimes t;
    t.depth = b.depth();
    for (int i = 0; i < b.depth(); ++i)
        if (b[i])
            t.times.push_back(i);
    return t;
}

BitSequence bits_from_jumps(const JumpTimes& t, int depth)
{
    BitSequence b = BitSequence::zeros(depth);
    int prev = -1;
    for (int j : t.times) {
        if (j < 0 || j >= depth)
            throw DomainError("bits_from_jumps: time " + std::to_string(j) + " outside [0, depth)");
        if (j <= prev)
            throw DomainError("bits_from_jumps: times must be strictly increasing");
        b.bits[static_cast<std::size_t>(j)] = 1;
        prev = j;
    }
    return b;
}

Stream::Stream(std::uint64_t seed, std::uint64_t stream_id)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream_id), static_cast<std::uint32_t>(stream_id >> 32),
                      0x5eedu};
    eng_.seed(seq);
}

BitSequence random_bits(Stream& s, int depth)
{
    if (depth <= 0)
        throw DomainError("random_bits: depth must be positive");
    BitSequence b;
    b.bits.reserve(static_cast<std::size_t>(depth));
    for (int done = 0; done < depth; done += 64) {
        const int n = depth - done < 64 ? depth - done : 64;
        const BitSequence part = BitSequence::from_word(s.next(), n);
        b.bits.insert(b.bits.end(), part.bits.begin(), part.bits.end());
    }
    return b;
}

std::pair<std::uint64_t, std::uint64_t> sample_macroscopic_words(Stream& s)
{
    constexpr std::uint64_t half = std::uint64_t{1} << 63;
    for (;;) {
        const std::uint64_t a = s.next();
        const std::uint64_t b = s.next();
        if (a > b && a - b > half)
            return {a, b};
    }
}

std::pair<BitSequence, BitSequence> sample_macroscopic_pair(Stream& s, int depth)
{
    if (depth < 3 || depth > 64)
        throw DomainError("sample_macroscopic_pair: depth must be in [3, 64]");
    constexpr std::uint64_t half = std::uint64_t{1} << 63;
    const std::uint64_t mask = depth == 64 ? ~std::uint64_t{0} : ~((std::uint64_t{1} << (64 - depth)) - 1);
    for (;;) {
        const std::uint64_t a = s.next() & mask;
        const std::uint64_t b = s.next() & mask;
        if (a > b && a - b > half)
            return {BitSequence::from_word(a, depth), BitSequence::from_word(b, depth)};
    }
}

}  // namespace wsbr
