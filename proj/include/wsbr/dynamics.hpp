#pragma once

#include "wsbr/bounded.hpp"
#include "wsbr/dyadic.hpp"
#include "wsbr/series.hpp"

#include <array>

namespace wsbr {

struct ExtendedPoint {
    BitSequence xi;
    double x = 0.0;
    double y = 0.0;
};

using Jacobian3 = std::array<std::array<double, 3>, 3>;

// F(xi,x,y) = (B(xi,x), gamma y + cos(2 pi B_2(xi,x)))
ExtendedPoint step_F(const ExtendedPoint& p, const Roughness& r);

// Gamma(xi,x,v) = (B(xi,x), 2 gamma v - 2 pi sin(2 pi B_2(xi,x)))
ExtendedPoint step_Gamma(const ExtendedPoint& p, const Roughness& r);

Jacobian3 jacobian_F(const PhasePoint& p, const Roughness& r);

Jacobian3 multiply(const Jacobian3& a, const Jacobian3& b);

struct StableVector {
    double c0 = 0.0;
    double c1 = 1.0;
    BoundedValue c2;
};

// X(xi,x) = (0, 1, S(xi,x))
StableVector stable_X(const PhasePoint& p, const Roughness& r, int terms = kCertTerms);

// Exponent estimate from the witness sequence x_n = 0, y_n = 2^-n.
double holder_estimate(const Roughness& r, int n_min, int n_max, int terms = kOracleTerms);

}  // namespace wsbr
