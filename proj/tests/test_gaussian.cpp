#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "gwci/gaussian.hpp"
#include "gwci/rd.hpp"

using namespace gwci;

TEST_CASE("joint rate distortion closed form") {
    GaussianSource g(0.5);
    CHECK(gaussian_joint_rd(g, 0.9, 0.9) ==
          doctest::Approx(0.5 * std::log2(0.75 / 0.65)).epsilon(1e-12));

    GaussianSource ind(0.0);
    CHECK(gaussian_joint_rd(ind, 0.25, 0.25) == doctest::Approx(2.0).epsilon(1e-12));

    // degenerate third case: the cheaper source is free
    CHECK(gaussian_joint_rd(g, 0.02, 0.98) ==
          doctest::Approx(0.5 * std::log2(1.0 / 0.02)).epsilon(1e-12));
    CHECK(std::abs(gaussian_joint_rd(g, 0.02, 0.98) - 2.82193) < 1e-5);

    CHECK(gaussian_joint_rd(g, 1.5, 1.2) == 0.0);
    CHECK_THROWS_AS(gaussian_joint_rd(g, 0.0, 0.5), NonPositiveDistortionError);
}

TEST_CASE("lossless wyner ci closed form") {
    CHECK(gaussian_wyner_ci_lossless(GaussianSource(0.0)) == 0.0);
    CHECK(gaussian_wyner_ci_lossless(GaussianSource(0.5)) ==
          doctest::Approx(0.5 * std::log2(3.0)).epsilon(1e-12));
    CHECK(std::abs(gaussian_wyner_ci_lossless(GaussianSource(0.5)) - 0.792481) < 1e-6);
    CHECK(gaussian_wyner_ci_lossless(GaussianSource(0.99)) ==
          doctest::Approx(0.5 * std::log2(1.99 / 0.01)).epsilon(1e-12));

    GaussianSource folded(-0.5);
    CHECK(folded.rho == 0.5);
    CHECK(folded.folded_negative);
    CHECK_THROWS_AS(GaussianSource(1.0), BadParameterError);
}

TEST_CASE("regime classification") {
    GaussianSource g(0.5);
    CHECK(classify_regime(g, 0.3, 0.3) == Regime::I_lossless_ci);
    CHECK(classify_regime(g, 0.9, 0.9) == Regime::II_all_shared);
    CHECK(classify_regime(g, 0.6, 0.2) == Regime::III_d1_excess);
    CHECK(classify_regime(g, 0.2, 0.6) == Regime::IV_d2_excess);
    CHECK(classify_regime(g, 1.0, 0.5) == Regime::degenerate_zero);
    // boundary point satisfying both I and II goes to I
    CHECK(classify_regime(g, 0.5, 0.5) == Regime::I_lossless_ci);
}

TEST_CASE("lossy wyner ci closed form") {
    GaussianSource g(0.5);
    CHECK(gaussian_lossy_wyner_ci(g, 0.3, 0.3) ==
          doctest::Approx(0.5 * std::log2(3.0)).epsilon(1e-12));
    double r3 = gaussian_lossy_wyner_ci(g, 0.6, 0.2);
    CHECK(r3 == doctest::Approx(0.5 * std::log2(0.75 / 0.225)).epsilon(1e-12));
    CHECK(r3 > gaussian_wyner_ci_lossless(g));  // strictly above the lossless value
    CHECK(gaussian_lossy_wyner_ci(g, 0.9, 0.9) ==
          doctest::Approx(gaussian_joint_rd(g, 0.9, 0.9)).epsilon(1e-12));
    CHECK(gaussian_lossy_wyner_ci(g, 1.2, 0.5) == 0.0);
}

TEST_CASE("fig2 sweep structure") {
    GaussianSource g(0.5);
    std::vector<double> grid;
    for (double d = 0.05; d < 0.995; d += 0.01) grid.push_back(d);
    Fig2Curve c = fig2_curve(g, 0.2, grid);
    CHECK(c.point_a == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(c.point_b == doctest::Approx(0.6875).epsilon(1e-12));

    // constant segment before A
    double v1 = gaussian_lossy_wyner_ci(g, 0.3, 0.2);
    double v2 = gaussian_lossy_wyner_ci(g, 0.49, 0.2);
    CHECK(v1 == v2);

    // continuity at both boundary points
    for (double b : {c.point_a, c.point_b}) {
        double lo = gaussian_lossy_wyner_ci(g, b - 1e-9, 0.2);
        double ri = gaussian_lossy_wyner_ci(g, b + 1e-9, 0.2);
        CHECK(std::abs(lo - ri) < 1e-6);
    }

    // rises between A and B, falls after B
    CHECK(gaussian_lossy_wyner_ci(g, 0.55, 0.2) > gaussian_lossy_wyner_ci(g, 0.49, 0.2));
    CHECK(gaussian_lossy_wyner_ci(g, 0.8, 0.2) < gaussian_lossy_wyner_ci(g, 0.6875, 0.2));
}

TEST_CASE("gaussian slb") {
    GaussianSource g(0.5);
    SLBResult s = gaussian_slb(g, 0.3, 0.3);
    CHECK(s.value == doctest::Approx(0.5 * std::log2(0.75 / 0.09)).epsilon(1e-12));
    CHECK(s.tight);

    GaussianSource ind(0.0);
    SLBResult si = gaussian_slb(ind, 0.3, 0.4);
    CHECK(si.value ==
          doctest::Approx(0.5 * std::log2(1 / 0.3) + 0.5 * std::log2(1 / 0.4)).epsilon(1e-12));
    CHECK(si.tight);

    CHECK_FALSE(gaussian_slb(g, 0.9, 0.9).tight);

    // joint RD equals SLB exactly iff tight
    CHECK(gaussian_joint_rd(g, 0.3, 0.3) == doctest::Approx(s.value).epsilon(1e-15));
    CHECK(gaussian_joint_rd(g, 0.9, 0.9) > gaussian_slb(g, 0.9, 0.9).value);
}

TEST_CASE("construction covariance check") {
    GaussianSource g(0.5);
    auto rep = verify_gaussian_construction(g, 0.3, 0.3);
    CHECK(rep.pass);
    CHECK(rep.markov_xh_u_yh <= 1e-12);
    CHECK(rep.markov_xy_rec_u <= 1e-12);
    CHECK(rep.mse_x_err <= 1e-12);

    // boundary degeneracy: zero channel noise on the reconstruction
    auto repb = verify_gaussian_construction(g, 0.5, 0.5);
    CHECK(repb.pass);

    // negative control: a perturbed coefficient breaks Markovity
    auto bad = verify_gaussian_construction(g, 0.3, 0.3, 0.01);
    CHECK_FALSE(bad.pass);
    CHECK((bad.markov_xh_u_yh > 1e-4 || bad.markov_xy_rec_u > 1e-4 ||
           bad.cov_mismatch > 1e-4));

    CHECK_THROWS_AS(verify_gaussian_construction(g, 0.6, 0.2), RegimeMismatchError);
}

TEST_CASE("regime boundary continuity scan") {
    for (double rho : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        GaussianSource g(rho);
        // crossing D1 = 1-rho at several D2
        for (double d2 = 0.05; d2 < 1.0 - rho; d2 += 0.1) {
            double b = 1.0 - rho;
            CHECK(std::abs(gaussian_lossy_wyner_ci(g, b - 1e-9, d2) -
                           gaussian_lossy_wyner_ci(g, b + 1e-9, d2)) < 1e-6);
        }
        // crossing (1-D1)(1-D2) = rho^2
        for (double d1 = 1.0 - rho + 0.02; d1 < 0.98; d1 += 0.05) {
            double d2b = 1.0 - rho * rho / (1.0 - d1);
            if (d2b < 1e-3 || d2b > 0.999) continue;
            CHECK(std::abs(gaussian_lossy_wyner_ci(g, d1, d2b - 1e-9) -
                           gaussian_lossy_wyner_ci(g, d1, d2b + 1e-9)) < 1e-6);
        }
    }
}

TEST_CASE("gaussian lossy gk is zero") {
    for (double rho : {0.1, 0.5, 0.9}) {
        GaussianSource g(rho);
        CHECK(gaussian_lossy_gk(g, 0.2, 0.7) == 0.0);
    }
}

TEST_CASE("discrete shannon lower bound") {
    Mat h2 = DistortionSpec::hamming(2, 2).d_x;
    CHECK(slb_discrete(1.0, h2, 0.0) == 1.0);
    CHECK(slb_discrete(1.0, h2, 0.5) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(std::abs(slb_discrete(1.0, h2, 0.1) - 0.5310) < 1e-4);

    Mat m4 = DistortionSpec::hamming(4, 4).d_x;
    CHECK(slb_discrete(2.0, m4, 0.1) ==
          doctest::Approx(2.0 - binary_entropy(0.1) - 0.1 * std::log2(3.0)).epsilon(1e-12));

    Mat mse(2, 2);
    mse(0, 1) = mse(1, 0) = 4.0;  // not Hamming
    CHECK_THROWS_AS(slb_discrete(1.0, mse, 0.1), UnsupportedDistortionError);
}
