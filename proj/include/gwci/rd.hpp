#pragma once

#include <string>
#include <vector>

#include "gwci/pmf.hpp"

namespace gwci {

struct DistortionSpec {
    Mat d_x;  // |X| x |Xhat|
    Mat d_y;  // |Y| x |Yhat|
    std::string name = "custom";

    static DistortionSpec hamming(std::size_t nx, std::size_t ny);
    bool is_hamming() const { return name == "hamming"; }
};

struct RDConfig {
    int bisect_iters = 60;
    double dist_tol = 1e-6;
    double rd_tol = 1e-8;
    double mu_max = 700.0;  // nats per unit distortion
    int ba_max_iters = 20000;
};

struct RDSolution {
    Mat test_channel;  // (|X||Y|) x (|Xhat||Yhat|), rows are P(xh,yh | x,y)
    double rate = 0.0;  // bits
    double d1_achieved = 0.0;
    double d2_achieved = 0.0;
    double d1_target = 0.0;
    double d2_target = 0.0;
    double mu1 = 0.0, mu2 = 0.0;  // nats
    bool converged = true;
    std::size_t n_xhat = 0, n_yhat = 0;
};

// R_{X,Y}(D1,D2) by alternating minimization on the Lagrangian
// I + mu1*E d_X + mu2*E d_Y with nested bisection on (mu1, mu2).
RDSolution joint_rd(const JointPMF& pmf, const DistortionSpec& spec, double d1, double d2,
                    const RDConfig& cfg = {});

struct MarginalRD {
    Mat channel;  // |X| x |Xhat|
    double rate = 0.0;
    double d_achieved = 0.0;
    double mu = 0.0;
};

MarginalRD marginal_rd(const std::vector<double>& p, const Mat& d, double target,
                       const RDConfig& cfg = {});

// Shannon lower bound for a Hamming distortion matrix on an m-ary alphabet:
// H(X) - h(D) - D log2(m-1), clamped at zero.
double slb_discrete(double marginal_entropy_bits, const Mat& distortion, double d);

}  // namespace gwci
