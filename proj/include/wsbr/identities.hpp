#pragma once

#include "wsbr/dyadic.hpp"

#include <cstdint>
#include <string>

namespace wsbr {

// Outcome of a randomized identity check. A violation is a sample where the
// two sides' enclosures (plus the stated slack) are disjoint.
struct IdentityResult {
    std::string name;
    int samples = 0;
    int violations = 0;
    double max_residual = 0.0;
    double max_width = 0.0;
};

// G(B^-1(xi,x)) = kappa G(xi,x); with corrected = true the right side gains
// kappa g(2x - 1) when the leading digit of x is 1.
IdentityResult check_scaling_identity(const Roughness& r, int n, std::uint64_t seed, bool corrected);

// G(B^-1 p) - G(B^-1 q) = kappa (G(p) - G(q)) for p, q sharing x.
IdentityResult check_scaling_difference(const Roughness& r, int n, std::uint64_t seed);

// W(B_2(xi,x)) = cos(2 pi B_2(xi,x)) + gamma W(x)
IdentityResult check_attractor_identity(const Roughness& r, int n, std::uint64_t seed);

// S(B(xi,x)) = 2 gamma S(xi,x) - 2 pi sin(2 pi B_2(xi,x))
IdentityResult check_section_identity(const Roughness& r, int n, std::uint64_t seed);

// DF(p) X(p) = X(B p) / 2
IdentityResult check_stable_direction(const Roughness& r, int n, std::uint64_t seed);

// |y_k - W(x_k)| = gamma^k |y_0 - W(x_0)| along F-orbits, relative tolerance rel_tol.
IdentityResult check_fiber_contraction(const Roughness& r, int n, std::uint64_t seed, int steps = 20,
                                       double rel_tol = 1e-8);

}  // namespace wsbr
