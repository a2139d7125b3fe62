#pragma once

#include <cstdint>
#include <vector>

#include "gwci/gk.hpp"
#include "gwci/pmf.hpp"

namespace gwci {

struct SolverConfig {
    int restarts = 8;
    int max_iters = 2000;
    double tol = 1e-4;  // Markov-residual feasibility for wyner_ci
    std::uint64_t rng_seed = 0;
    std::vector<double> lagrange_grid;  // empty -> default_lagrange_grid()
    int u_card = 0;                     // 0 -> |X||Y|

    // geometric grid on [0.5, 64] plus extra weights near 1 where the
    // Theorem-4 kinks live
    static std::vector<double> default_lagrange_grid();
};

// Conditional law q(u|x,y) with the induced joint over (X,Y,U).
struct AuxDecomposition {
    Mat q;  // (|X||Y|) x u_card, rows are PMFs
    int u_card = 0;
    NDDist induced;
};

AuxDecomposition make_aux_decomposition(const JointPMF& pmf, const Mat& q);

struct CurvePoint {
    double excess_rate = 0.0;   // R'  (c-curve) or R'' (k-curve)
    double shared_rate = 0.0;   // C = I(X,Y;U)  or  K = I(X,Y;W)
    double lagrange_weight = 0.0;
    double residual = 0.0;      // inner-solver convergence defect
    bool converged = true;
    Mat q;                      // witness conditional law
};

struct WynerResult {
    double value = 0.0;     // I(X,Y;U) of the best feasible run
    double residual = 0.0;  // I(X;Y|U) at that run
    Mat q;
    bool converged = true;      // residual <= cfg.tol
    bool multiple_optima = false;
};

// min I(X,Y;U) subject to X<->U<->Y, by Lagrangian continuation with
// Blahut-Arimoto style inner updates and multi-start.
WynerResult wyner_ci(const JointPMF& pmf, const SolverConfig& cfg = {});

// Lower boundary of { (I(X;Y|U), I(X,Y;U)) }: one point per Lagrange weight,
// sorted by excess rate, exact separate-encoding endpoint appended.
std::vector<CurvePoint> c_curve(const JointPMF& pmf, const SolverConfig& cfg = {});

// Upper boundary of { (I(X;W|Y)+I(Y;W|X), I(X,Y;W)) }: deterministic-map
// enumeration (|X||Y| <= 9) plus multi-start ascent; exact endpoints at
// W = J and W = (X,Y) appended.
std::vector<CurvePoint> k_curve(const JointPMF& pmf, const SolverConfig& cfg = {});

struct OracleCurve {
    std::vector<CurvePoint> points;  // lower hull of the enumerated cloud
    double r0_value = 0.0;           // extrapolated value at excess rate 0
    double exact_zero_value = 0.0;   // best C among exactly-Markov grid points
    std::size_t evaluations = 0;
};

// Brute-force reference: exhaustive grid over the rows of q(u|x,y), followed
// by exhaustive sub-grid refinement rounds around the envelope winners.
// Only for |X||Y| <= 4 and u_card <= 3 (TooLargeError otherwise).
OracleCurve oracle_c_curve(const JointPMF& pmf, int u_card = 2, double grid_step = 0.04,
                           int refine_rounds = 4, int refine_factor = 4);

// (C at the smallest R' whose forward slope is within slope_tol of -1), or 0.
double gk_from_curve(const std::vector<CurvePoint>& c_points, double slope_tol = 5e-2);

// (K at the smallest R'' whose forward slope is within slope_tol of +1),
// falling back to max K = H(X,Y) when no such segment exists.
double wyner_from_curve(const std::vector<CurvePoint>& k_points, double slope_tol = 5e-2);

struct TradeoffPoint {
    double transmit_rate = 0.0;  // R_t = R0+R1+R2
    double receive_rate = 0.0;   // min R_r = 2*R0+R1+R2 at that R_t
};

std::vector<TradeoffPoint> transmit_receive_tradeoff(const std::vector<CurvePoint>& c_points,
                                                     const std::vector<CurvePoint>& k_points,
                                                     const JointPMF& pmf);

}  // namespace gwci
