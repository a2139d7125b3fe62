#pragma once

#include <utility>

#include "gwci/lossy.hpp"
#include "gwci/solver.hpp"

namespace gwci {

struct RatePoint {
    double r0 = 0.0, r1 = 0.0, r2 = 0.0;
    double sum() const { return r0 + r1 + r2; }
};

// Lossless corner generated by an auxiliary decomposition:
// (I(X,Y;U), H(X|U), H(Y|U)).
RatePoint lossless_point(const JointPMF& pmf, const AuxDecomposition& aux);

struct LossyPointResult {
    RatePoint point;  // (I(X,Y;U), I(X;Xh|U), I(Y;Yh|U))
    double d1 = 0.0, d2 = 0.0;
};
LossyPointResult lossy_point(const NDDist& joint5, const DistortionSpec& spec);

// Corner used in the alternate (complete) region characterization, plus the
// four bound values it must dominate.
struct VkgPoint {
    RatePoint corner;   // (I(XY;U), I(XY;Xh|U), I(XY;Yh|U,Xh))
    double b0 = 0.0;    // I(XY;U)
    double b01 = 0.0;   // I(XY;U,Xh)
    double b02 = 0.0;   // I(XY;U,Yh)
    double bsum = 0.0;  // I(XY;U,Xh,Yh) + I(Xh;Yh|U)
};
VkgPoint vkg_point(const NDDist& joint5, const DistortionSpec& spec);

double pangloss_gap(const RatePoint& point, double target_sum);

// (r0+r1 - target_x, r0+r2 - target_y)
std::pair<double, double> gk_plane_gap(const RatePoint& point, double target_x,
                                       double target_y);

}  // namespace gwci
