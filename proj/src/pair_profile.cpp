#include "wsbr/pair_profile.hpp"

#include "wsbr/errors.hpp"

#include <cmath>
#include <numbers>

namespace wsbr {

namespace {
constexpr double pi = std::numbers::pi;
}

PairProfile::PairProfile(std::uint64_t xi, std::uint64_t eta, const Roughness& r, int terms) : n_(terms)
{
    if (terms < 1 || terms > kMaxTerms)
        throw DomainError("PairProfile: terms must be in 1..64");
    std::array<std::uint8_t, kMaxTerms> xb{}, eb{};
    for (int i = 0; i < terms; ++i) {
        xb[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((xi >> (63 - i)) & 1u);
        eb[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((eta >> (63 - i)) & 1u);
    }
    init(xb.data(), eb.data(), r);
}

PairProfile::PairProfile(const BitSequence& xi, const BitSequence& eta, const Roughness& r, int terms) : n_(terms)
{
    if (terms < 1 || terms > kMaxTerms)
        throw DomainError("PairProfile: terms must be in 1..64");
    if (terms > xi.depth() || terms > eta.depth())
        throw PrecisionError("PairProfile: terms exceed digit depth");
    init(xi.bits.data(), eta.bits.data(), r);
}

void PairProfile::init(const std::uint8_t* xb, const std::uint8_t* eb, const Roughness& r)
{
    const double k = r.kappa();
    double a = 0.0, b = 0.0, kn = 1.0, w = 2.0 * pi;
    for (int n = 1; n <= n_; ++n) {
        a = (xb[n - 1] + a) * 0.5;
        b = (eb[n - 1] + b) * 0.5;
        kn *= k;
        w *= 0.5;
        const std::size_t i = static_cast<std::size_t>(n - 1);
        // sin(2pi(a + x/2^n)) - sin(2pi(b + x/2^n)) = 2 sin(pi(a-b)) cos(pi(a+b) + 2pi x/2^n)
        c_[i] = 4.0 * pi * kn * std::sin(pi * (a - b));
        theta_[i] = pi * (a + b);
        omega_[i] = w;
    }
    tail_f_ = 2.0 * 2.0 * pi * kn * k / (1.0 - k);
    const double h = k / 2.0;
    tail_df_ = 2.0 * 4.0 * pi * pi * std::pow(h, n_ + 1) / (1.0 - h);
}

double PairProfile::f(double x) const
{
    double s = 0.0;
    for (int i = 0; i < n_; ++i)
        s += c_[i] * std::cos(theta_[i] + omega_[i] * x);
    return s;
}

void PairProfile::f_df(double x, double& f, double& df) const
{
    double s0 = 0.0, s1 = 0.0;
    for (int i = 0; i < n_; ++i) {
        const double a = theta_[i] + omega_[i] * x;
        s0 += c_[i] * std::cos(a);
        s1 -= c_[i] * omega_[i] * std::sin(a);
    }
    f = s0;
    df = s1;
}

void PairProfile::df_ddf(double x, double& df, double& ddf) const
{
    double s1 = 0.0, s2 = 0.0;
    for (int i = 0; i < n_; ++i) {
        const double a = theta_[i] + omega_[i] * x;
        const double cw = c_[i] * omega_[i];
        s1 -= cw * std::sin(a);
        s2 -= cw * omega_[i] * std::cos(a);
    }
    df = s1;
    ddf = s2;
}

namespace {

constexpr int kNodes = ChebProfile::kDegree + 1;

// cos(pi j (k + 1/2) / N)
const std::array<std::array<double, kNodes>, kNodes>& cheb_table()
{
    static const auto t = [] {
        std::array<std::array<double, kNodes>, kNodes> m{};
        for (int j = 0; j < kNodes; ++j)
            for (int k = 0; k < kNodes; ++k)
                m[j][k] = std::cos(pi * j * (k + 0.5) / kNodes);
        return m;
    }();
    return t;
}

// Coefficients of d/dx (x = (t+1)/2, so d/dx = 2 d/dt).
template <class C>
C derivative(const C& c)
{
    constexpr int n = ChebProfile::kDegree;
    C d{};
    d[n - 1] = 2.0 * n * c[n];
    for (int j = n - 1; j >= 1; --j)
        d[j - 1] = (j + 1 <= n ? d[j + 1] : 0.0) + 2.0 * j * c[j];
    d[0] *= 0.5;
    for (double& v : d)
        v *= 2.0;
    return d;
}

}  // namespace

ChebProfile::ChebProfile(const PairProfile& p)
{
    const auto& tab = cheb_table();
    std::array<double, kNodes> fx{};
    for (int k = 0; k < kNodes; ++k)
        fx[k] = p.f(0.5 * (tab[1][k] + 1.0));
    for (int j = 0; j < kNodes; ++j) {
        double s = 0.0;
        for (int k = 0; k < kNodes; ++k)
            s += fx[k] * tab[j][k];
        c0_[j] = 2.0 * s / kNodes;
    }
    c0_[0] *= 0.5;
    c1_ = derivative(c0_);
    c2_ = derivative(c1_);
}

double ChebProfile::clenshaw(const Coeffs& c, double t)
{
    double b1 = 0.0, b2 = 0.0;
    for (int j = kDegree; j >= 1; --j) {
        const double b = 2.0 * t * b1 - b2 + c[j];
        b2 = b1;
        b1 = b;
    }
    return t * b1 - b2 + c[0];
}

double ChebProfile::f(double x) const { return clenshaw(c0_, 2.0 * x - 1.0); }

void ChebProfile::f_df(double x, double& f, double& df) const
{
    const double t = 2.0 * x - 1.0;
    f = clenshaw(c0_, t);
    df = clenshaw(c1_, t);
}

void ChebProfile::df_ddf(double x, double& df, double& ddf) const
{
    const double t = 2.0 * x - 1.0;
    df = clenshaw(c1_, t);
    ddf = clenshaw(c2_, t);
}

}  // namespace wsbr
