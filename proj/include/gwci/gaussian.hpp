#pragma once

#include <span>
#include <string>
#include <vector>

namespace gwci {

// Standardized bivariate Gaussian source under MSE distortion. Negative
// correlations are folded to |rho|; rho = 1 is degenerate and rejected.
struct GaussianSource {
    double rho;
    bool folded_negative = false;

    explicit GaussianSource(double r);
};

enum class Regime {
    I_lossless_ci,   // max(D1,D2) <= 1-rho: lossy CI equals the lossless CI
    II_all_shared,   // (1-D1)(1-D2) <= rho^2: everything on the shared branch
    III_d1_excess,   // D1 > 1-rho, product above rho^2
    IV_d2_excess,    // symmetric in D2
    degenerate_zero  // D1 >= 1 or D2 >= 1
};

const char* regime_name(Regime r);

double gaussian_joint_rd(const GaussianSource& src, double d1, double d2);
double gaussian_wyner_ci_lossless(const GaussianSource& src);
Regime classify_regime(const GaussianSource& src, double d1, double d2);
double gaussian_lossy_wyner_ci(const GaussianSource& src, double d1, double d2);

// C_GK of a bivariate Gaussian with rho < 1 is zero at every distortion pair.
double gaussian_lossy_gk(const GaussianSource& src, double d1, double d2);

struct SLBResult {
    double value = 0.0;
    bool tight = false;
};
SLBResult gaussian_slb(const GaussianSource& src, double d1, double d2);

struct Fig2Point {
    double d1 = 0.0;
    double value = 0.0;
    Regime regime = Regime::I_lossless_ci;
};
struct Fig2Curve {
    std::vector<Fig2Point> points;
    double point_a = 0.0;  // D1 = 1 - rho
    double point_b = 0.0;  // D1 = 1 - rho^2 / (1 - D2)
};
Fig2Curve fig2_curve(const GaussianSource& src, double d2, std::span<const double> d1_grid);

// Covariance-algebra check of the regime-I construction: builds the 5x5
// covariance of (X, Y, Xh, Yh, U) from the channel coefficients and verifies
// the reconstruction covariance, both Markov chains and the achieved MSE.
// `coef_perturb` shifts the Xh<-U coefficient (negative-control hook).
struct GaussianConstructionReport {
    double cov_mismatch = 0.0;         // reconstruction covariance vs closed form
    double markov_xh_u_yh = 0.0;       // Xh - U - Yh residual
    double markov_xy_rec_u = 0.0;      // (X,Y) - (Xh,Yh) - U residual
    double markov_x_u_y = 0.0;         // X - U - Y residual
    double mse_x_err = 0.0, mse_y_err = 0.0;
    bool pass = false;
};
GaussianConstructionReport verify_gaussian_construction(const GaussianSource& src, double d1,
                                                        double d2, double coef_perturb = 0.0);

}  // namespace gwci
