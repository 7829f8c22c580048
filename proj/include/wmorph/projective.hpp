#pragma once

#include "wmorph/geometry.hpp"
#include "wmorph/rng.hpp"

namespace wmorph {

// Affine chart of CP^n covering the complement of the w_{n+1} = 0
// hypersurface; the chart image is dense and the complement has measure zero.
// n >= 2 is required so the SU(2) block leaves at least one coordinate fixed.
struct Chart {
    int n;
    explicit Chart(int n);
};

// (z_1, ..., z_n)  ->  [z_1 : ... : z_n : sqrt(1 - sum |z_j|^2)].
// The result has a unit-norm coordinate vector with real positive last entry.
ProjPoint embed(const Chart& chart, const BallPoint& z);

// Inverse of embed on the chart: scale w to unit norm with w_{n+1} real
// positive, then drop the last coordinate. Throws HypersurfacePoint when
// w_{n+1} = 0 (exactly, or within roundoff of the hypersurface).
BallPoint chart_inverse(const Chart& chart, const ProjPoint& p);

// SU(2) acting on the first two homogeneous coordinates:
// [w_1 : w_2 : rest] -> [A(w_1, w_2) : rest]. Well defined on projective
// classes.
ProjPoint act_proj(const SU2Element& A, const ProjPoint& p);

// Same block action on C^n; the unit ball is invariant and |z| is preserved.
BallPoint act_ball(const SU2Element& A, const BallPoint& z);

// Haar-uniform element of SU(2): four independent standard Gaussians
// normalized to the unit 3-sphere of C^2. Branch-free and bias-free.
SU2Element haar_sample(rng::Stream& stream);

// Lebesgue-uniform point of B^{2n}(1): Gaussian direction times radius
// U^{1/(2n)}. Draw order is fixed (2n Gaussians, then the radius uniform).
BallPoint sample_ball(int n, rng::Stream& stream);

}  // namespace wmorph
