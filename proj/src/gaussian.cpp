#include "gwci/gaussian.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "gwci/errors.hpp"

namespace gwci {

namespace {
double half_log2(double x) { return 0.5 * std::log2(x); }
}  // namespace

GaussianSource::GaussianSource(double r) {
    if (r < 0.0) {
        r = -r;
        folded_negative = true;
    }
    if (!(r >= 0.0) || r >= 1.0)
        throw BadParameterError("correlation must satisfy 0 <= |rho| < 1");
    rho = r;
}

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::I_lossless_ci: return "I";
        case Regime::II_all_shared: return "II";
        case Regime::III_d1_excess: return "III";
        case Regime::IV_d2_excess: return "IV";
        case Regime::degenerate_zero: return "degenerate";
    }
    return "?";
}

double gaussian_joint_rd(const GaussianSource& src, double d1, double d2) {
    if (d1 <= 0.0 || d2 <= 0.0) throw NonPositiveDistortionError("distortions must be > 0");
    const double rho = src.rho, r2 = rho * rho;
    const double b1 = 1.0 - d1, b2 = 1.0 - d2;
    if (d1 >= 1.0 && d2 >= 1.0) return 0.0;
    if (b1 * b2 >= r2) {
        return half_log2((1.0 - r2) / (d1 * d2));
    }
    const double ratio = std::min(b1 / b2, b2 / b1);
    if (ratio >= r2) {
        double root = rho - std::sqrt(b1 * b2);
        return half_log2((1.0 - r2) / (d1 * d2 - root * root));
    }
    return std::max(half_log2(1.0 / std::min(d1, d2)), 0.0);
}

double gaussian_wyner_ci_lossless(const GaussianSource& src) {
    if (src.rho == 0.0) return 0.0;
    return half_log2((1.0 + src.rho) / (1.0 - src.rho));
}

Regime classify_regime(const GaussianSource& src, double d1, double d2) {
    if (d1 <= 0.0 || d2 <= 0.0) throw NonPositiveDistortionError("distortions must be > 0");
    if (d1 >= 1.0 || d2 >= 1.0) return Regime::degenerate_zero;
    const double rho = src.rho, r2 = rho * rho;
    // boundaries go to the lower-numbered regime; continuity makes the choice
    // observationally irrelevant
    if (std::max(d1, d2) <= 1.0 - rho) return Regime::I_lossless_ci;
    if ((1.0 - d1) * (1.0 - d2) <= r2) return Regime::II_all_shared;
    if (d1 > 1.0 - rho) return Regime::III_d1_excess;
    return Regime::IV_d2_excess;
}

double gaussian_lossy_wyner_ci(const GaussianSource& src, double d1, double d2) {
    const double rho = src.rho, r2 = rho * rho;
    switch (classify_regime(src, d1, d2)) {
        case Regime::I_lossless_ci:
            return gaussian_wyner_ci_lossless(src);
        case Regime::II_all_shared:
            return gaussian_joint_rd(src, d1, d2);
        case Regime::III_d1_excess:
            return half_log2((1.0 - r2) / ((1.0 - r2 / (1.0 - d1)) * d1));
        case Regime::IV_d2_excess:
            return half_log2((1.0 - r2) / ((1.0 - r2 / (1.0 - d2)) * d2));
        case Regime::degenerate_zero:
            return 0.0;
    }
    return 0.0;
}

double gaussian_lossy_gk(const GaussianSource& src, double d1, double d2) {
    if (d1 <= 0.0 || d2 <= 0.0) throw NonPositiveDistortionError("distortions must be > 0");
    (void)src;
    return 0.0;
}

SLBResult gaussian_slb(const GaussianSource& src, double d1, double d2) {
    if (d1 <= 0.0 || d2 <= 0.0) throw NonPositiveDistortionError("distortions must be > 0");
    const double r2 = src.rho * src.rho;
    SLBResult out;
    out.value = half_log2((1.0 - r2) / (d1 * d2));
    out.tight = (1.0 - d1) * (1.0 - d2) >= r2;
    return out;
}

Fig2Curve fig2_curve(const GaussianSource& src, double d2, std::span<const double> d1_grid) {
    Fig2Curve out;
    out.point_a = 1.0 - src.rho;
    out.point_b = 1.0 - src.rho * src.rho / (1.0 - d2);
    out.points.reserve(d1_grid.size());
    for (double d1 : d1_grid) {
        Fig2Point p;
        p.d1 = d1;
        p.value = gaussian_lossy_wyner_ci(src, d1, d2);
        p.regime = classify_regime(src, d1, d2);
        out.points.push_back(p);
    }
    return out;
}

GaussianConstructionReport verify_gaussian_construction(const GaussianSource& src, double d1,
                                                        double d2, double coef_perturb) {
    if (d1 <= 0.0 || d2 <= 0.0) throw NonPositiveDistortionError("distortions must be > 0");
    const double rho = src.rho;
    if (std::max(d1, d2) > 1.0 - rho + 1e-12)
        throw RegimeMismatchError("construction is defined for max(D1,D2) <= 1-rho");

    // factors: (U, N1, N2, M1, M2), all standard independent.
    // X  = sqrt(rho) U + sqrt(1-rho) N1
    // Xh = sqrt(rho) U + sqrt(1-d1-rho) T1,  T1 = c1 N1 + sqrt(1-c1^2) M1
    // with c1 chosen so the backward channel X = Xh + Z1 has Z1 _|_ Xh.
    const double a = std::sqrt(rho);
    const double nx = std::sqrt(1.0 - rho);
    const double tx = std::sqrt(std::max(1.0 - d1 - rho, 0.0));
    const double ty = std::sqrt(std::max(1.0 - d2 - rho, 0.0));
    const double c1 = nx > 0 ? tx / nx : 0.0;
    const double c2 = nx > 0 ? ty / nx : 0.0;

    std::array<std::array<double, 5>, 5> L{};  // rows: X, Y, Xh, Yh, U
    L[0] = {a, nx, 0, 0, 0};
    L[1] = {a, 0, nx, 0, 0};
    L[2] = {a + coef_perturb, tx * c1, 0, tx * std::sqrt(std::max(1.0 - c1 * c1, 0.0)), 0};
    L[3] = {a, 0, ty * c2, 0, ty * std::sqrt(std::max(1.0 - c2 * c2, 0.0))};
    L[4] = {1, 0, 0, 0, 0};

    std::array<std::array<double, 5>, 5> S{};
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            double s = 0.0;
            for (int f = 0; f < 5; ++f) s += L[i][f] * L[j][f];
            S[i][j] = s;
        }

    GaussianConstructionReport rep;
    // reconstruction covariance vs the closed form [[1-d1, rho],[rho, 1-d2]]
    rep.cov_mismatch = std::max(
        {std::abs(S[2][2] - (1.0 - d1)), std::abs(S[3][3] - (1.0 - d2)),
         std::abs(S[2][3] - rho)});
    // Xh - U - Yh (U scalar): Cov(Xh,Yh) - Cov(Xh,U) Cov(U,Yh) / Var(U)
    rep.markov_xh_u_yh = std::abs(S[2][3] - S[2][4] * S[4][3] / S[4][4]);
    rep.markov_x_u_y = std::abs(S[0][1] - S[0][4] * S[4][1] / S[4][4]);
    // (X,Y) - (Xh,Yh) - U: Sigma_AB - Sigma_AC Sigma_C^-1 Sigma_CB, A=(X,Y), B=U
    {
        const double c11 = S[2][2], c12 = S[2][3], c22 = S[3][3];
        const double det = c11 * c22 - c12 * c12;
        double resid = 0.0;
        if (std::abs(det) > 1e-15) {
            for (int i = 0; i < 2; ++i) {
                double a1 = S[i][2], a2 = S[i][3];
                double s1 = (a1 * c22 - a2 * c12) / det;
                double s2 = (a2 * c11 - a1 * c12) / det;
                double pred = s1 * S[2][4] + s2 * S[3][4];
                resid = std::max(resid, std::abs(S[i][4] - pred));
            }
        } else {
            // boundary degeneracy (1 - d - rho = 0): reconstruction equals
            // sqrt(rho) U, chain holds through the scalar component
            for (int i = 0; i < 2; ++i)
                resid = std::max(resid, std::abs(S[i][4] - S[i][2] * S[2][4] /
                                                               std::max(c11, 1e-300)));
        }
        rep.markov_xy_rec_u = resid;
    }
    rep.mse_x_err = std::abs((S[0][0] + S[2][2] - 2 * S[0][2]) - d1);
    rep.mse_y_err = std::abs((S[1][1] + S[3][3] - 2 * S[1][3]) - d2);
    rep.pass = rep.cov_mismatch <= 1e-12 && rep.markov_xh_u_yh <= 1e-12 &&
               rep.markov_xy_rec_u <= 1e-12 && rep.markov_x_u_y <= 1e-12 &&
               rep.mse_x_err <= 1e-12 && rep.mse_y_err <= 1e-12;
    return rep;
}

}  // namespace gwci
