#pragma once

#include "wsbr/bounded.hpp"
#include "wsbr/dyadic.hpp"

namespace wsbr {

inline constexpr int kCertTerms = 60;
inline constexpr int kOracleTerms = 200;

// W(x) = sum gamma^n cos(2 pi 2^n x). Arguments 2^n x mod 1 are formed by
// exact doubling; once they reach 0 the remaining tail is summed in closed form.
BoundedValue eval_W(double x, const Roughness& r, int terms);

// S(xi,x) = 2 pi sum_{n>=1} kappa^n sin(2 pi B_2^n(xi,x)) and its x-derivatives
// (order 0, 1, 2). Requires terms <= depth(xi).
BoundedValue eval_S(const PhasePoint& p, const Roughness& r, int terms, int order = 0);

// g and its derivatives up to order 3.
BoundedValue eval_g(double x, int order, const Roughness& r, int terms = kCertTerms);

// G(xi,x) = sum_l kappa^(tau_l+1) g(B_2^tau_l(xi,x)); order d differentiates in x.
BoundedValue eval_G_jumps(const JumpTimes& xi, double x, const Roughness& r, int order = 0,
                          int terms = kCertTerms);

enum class DiffMethod { direct, jumps };

BoundedValue eval_S_diff(const BitSequence& xi, const BitSequence& eta, double x, const Roughness& r,
                         DiffMethod method, int order = 0, int terms = kCertTerms);

struct SupBounds {
    double sup_g = 0;   // 2 pi^2 / (1 - kappa/2)
    double sup_g1 = 0;  // 4 pi^2 / (1 - kappa/2)
    double sup_g2 = 0;  // 4 pi^3 / (1 - kappa/4)
    double sup_g3 = 0;  // 4 pi^4 / (1 - kappa/8)
    double sup_S = 0;   // 2 pi kappa / (1 - kappa)

    double for_order(int order) const;
};

SupBounds sup_bounds(const Roughness& r);

// Certified upper bound on sup |g^(order)| over [0,1]: dense-grid maximum of
// the enclosure plus half the spacing times the analytic bound on the next
// derivative. Much tighter than sup_bounds for order 0.
double certified_sup_abs_g(const Roughness& r, int order = 0, int grid = 10000, int terms = kCertTerms);

}  // namespace wsbr
