#pragma once

#include <map>
#include <string>

#include "gwci/nddist.hpp"
#include "gwci/rd.hpp"
#include "gwci/solver.hpp"

namespace gwci {

// Relaxation diagnostics in the spirit of epsilon-relaxed bounds: the reported
// value sits between `lower` and `upper`, which collapse together as the
// constraint residuals go to zero.
struct BoundsReport {
    double epsilon = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    std::map<std::string, double> residuals;
};

struct LossyWynerResult {
    double value = 0.0;      // I(X,Y;U) of the best feasible run
    double residual = 0.0;   // I(Xhat;Yhat|U)
    Mat q;                   // q(u | xhat,yhat)
    NDDist joint5;           // over (X, Y, Xh, Yh, U)
    RDSolution rd;
    BoundsReport bounds;
    bool converged = true;
};

// Lossy Wyner CI: with the RD-optimal test channel fixed, minimize I(X,Y;U)
// over q(u|xhat,yhat) (structural (X,Y)-(Xh,Yh)-U Markov) with a Lagrange
// penalty driving I(Xhat;Yhat|U) to zero.
LossyWynerResult lossy_wyner_ci(const JointPMF& pmf, const DistortionSpec& spec, double d1,
                                double d2, const SolverConfig& cfg = {},
                                const RDConfig& rd_cfg = {});
LossyWynerResult lossy_wyner_ci(const JointPMF& pmf, const DistortionSpec& spec,
                                const RDSolution& rd, const SolverConfig& cfg = {});

struct Corollary1Report {
    double i_xh_yh_given_xyu = 0.0;  // I(Xh;Yh | X,Y,U)
    double i_xh_y_given_xu = 0.0;    // I(Xh;Y  | X,U)
    double i_yh_x_given_yu = 0.0;    // I(Yh;X  | Y,U)
    double tol = 1e-3;
    bool pass = false;
};

// Markov factorization checks on a 5-way joint with axes X, Y, Xh, Yh, U.
Corollary1Report check_corollary1(const NDDist& joint5, double tol = 1e-3);

struct LossyGKResult {
    double value = 0.0;     // I(X,Y;U) = I(J;U) of the best feasible tilt
    double residual = 0.0;  // I(U;X|Xhat) + I(U;Y|Yhat)
    bool converged = true;
    bool j_restricted = true;  // U ranges over functions of the ergodic class
};

// Lossy Gacs-Korner CI with U restricted to (stochastic functions of) the
// ergodic class J; the two reconstruction-side Markov conditions are enforced
// as a residual budget of cfg.tol. Result clamped to [0, C_GK(X,Y)].
LossyGKResult lossy_gk_ci(const JointPMF& pmf, const DistortionSpec& spec, double d1,
                          double d2, const SolverConfig& cfg = {},
                          const RDConfig& rd_cfg = {});

// Helper shared with gw-region: p(x,y) * P*(xh,yh|x,y) * q(u|xh,yh).
NDDist build_joint5(const JointPMF& pmf, const RDSolution& rd, const Mat& q);

}  // namespace gwci
