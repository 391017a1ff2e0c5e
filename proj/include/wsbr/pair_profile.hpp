#pragma once

#include "wsbr/dyadic.hpp"

#include <array>
#include <cstdint>

namespace wsbr {

// f(x) = S(xi,x) - S(eta,x) truncated after `terms` terms, written as
// sum c_n cos(theta_n + omega_n x) by the sum-to-product identity, so that
// f, f' and f'' cost one sincos per term.
class PairProfile {
public:
    static constexpr int kMaxTerms = 64;

    PairProfile(std::uint64_t xi, std::uint64_t eta, const Roughness& r, int terms);
    PairProfile(const BitSequence& xi, const BitSequence& eta, const Roughness& r, int terms);

    double f(double x) const;
    void f_df(double x, double& f, double& df) const;
    void df_ddf(double x, double& df, double& ddf) const;

    // Truncation bounds for f and f'.
    double tail_f() const { return tail_f_; }
    double tail_df() const { return tail_df_; }
    int terms() const { return n_; }

private:
    void init(const std::uint8_t* xb, const std::uint8_t* eb, const Roughness& r);
    int n_;
    std::array<double, kMaxTerms> c_{};
    std::array<double, kMaxTerms> theta_{};
    std::array<double, kMaxTerms> omega_{};
    double tail_f_ = 0.0;
    double tail_df_ = 0.0;
};

// Chebyshev interpolant of a PairProfile on [0,1]. Every frequency is at most
// pi, so degree 24 reproduces f, f' and f'' to roughly 1e-13 and evaluation
// needs no trigonometric calls.
class ChebProfile {
public:
    static constexpr int kDegree = 24;

    explicit ChebProfile(const PairProfile& p);

    double f(double x) const;
    void f_df(double x, double& f, double& df) const;
    void df_ddf(double x, double& df, double& ddf) const;

private:
    using Coeffs = std::array<double, kDegree + 1>;
    static double clenshaw(const Coeffs& c, double t);
    Coeffs c0_{}, c1_{}, c2_{};
};

}  // namespace wsbr
