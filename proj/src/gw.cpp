#include "gwci/gw.hpp"

#include <cmath>

#include "gwci/errors.hpp"

namespace gwci {

RatePoint lossless_point(const JointPMF& pmf, const AuxDecomposition& aux) {
    // the induced (X,Y) marginal must reproduce the source
    NDDist marg = aux.induced.marginal({"X", "Y"});
    const auto& q = marg.p();
    if (q.size() != pmf.p.a.size()) throw MarginalMismatchError("alphabet size mismatch");
    for (std::size_t i = 0; i < q.size(); ++i)
        if (std::abs(q[i] - pmf.p.a[i]) > 1e-9)
            throw MarginalMismatchError("decomposition does not match the source joint");
    RatePoint p;
    p.r0 = aux.induced.mutual_information({"X", "Y"}, {"U"});
    p.r1 = clamp_info(aux.induced.entropy({"X", "U"}) - aux.induced.entropy({"U"}));
    p.r2 = clamp_info(aux.induced.entropy({"Y", "U"}) - aux.induced.entropy({"U"}));
    return p;
}

LossyPointResult lossy_point(const NDDist& joint5, const DistortionSpec& spec) {
    LossyPointResult out;
    out.point.r0 = joint5.mutual_information({"X", "Y"}, {"U"});
    out.point.r1 = joint5.conditional_mutual_information({"X"}, {"Xh"}, {"U"});
    out.point.r2 = joint5.conditional_mutual_information({"Y"}, {"Yh"}, {"U"});
    NDDist dx = joint5.marginal({"X", "Xh"});
    NDDist dy = joint5.marginal({"Y", "Yh"});
    const std::size_t nx = dx.axes()[0].size(), nxh = dx.axes()[1].size();
    const std::size_t ny = dy.axes()[0].size(), nyh = dy.axes()[1].size();
    if (spec.d_x.rows != nx || spec.d_x.cols != nxh || spec.d_y.rows != ny ||
        spec.d_y.cols != nyh)
        throw ShapeMismatchError("distortion matrices do not match joint axes");
    for (std::size_t x = 0; x < nx; ++x)
        for (std::size_t h = 0; h < nxh; ++h)
            out.d1 += dx.p()[x * nxh + h] * spec.d_x(x, h);
    for (std::size_t y = 0; y < ny; ++y)
        for (std::size_t h = 0; h < nyh; ++h)
            out.d2 += dy.p()[y * nyh + h] * spec.d_y(y, h);
    return out;
}

VkgPoint vkg_point(const NDDist& joint5, const DistortionSpec& spec) {
    (void)spec;
    VkgPoint out;
    out.corner.r0 = joint5.mutual_information({"X", "Y"}, {"U"});
    out.corner.r1 = joint5.conditional_mutual_information({"X", "Y"}, {"Xh"}, {"U"});
    out.corner.r2 = joint5.conditional_mutual_information({"X", "Y"}, {"Yh"}, {"U", "Xh"});
    out.b0 = out.corner.r0;
    out.b01 = joint5.mutual_information({"X", "Y"}, {"U", "Xh"});
    out.b02 = joint5.mutual_information({"X", "Y"}, {"U", "Yh"});
    out.bsum = joint5.mutual_information({"X", "Y"}, {"U", "Xh", "Yh"}) +
               joint5.conditional_mutual_information({"Xh"}, {"Yh"}, {"U"});
    return out;
}

double pangloss_gap(const RatePoint& point, double target_sum) {
    return point.sum() - target_sum;
}

std::pair<double, double> gk_plane_gap(const RatePoint& point, double target_x,
                                       double target_y) {
    return {point.r0 + point.r1 - target_x, point.r0 + point.r2 - target_y};
}

}  // namespace gwci
