#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gwci/gk.hpp"
#include "gwci/gw.hpp"
#include "gwci/lossy.hpp"

using namespace gwci;

namespace {

double dsbs_wyner(double p) {
    double al = (1.0 - std::sqrt(1.0 - 2.0 * p)) / 2.0;
    return 1.0 + binary_entropy(p) - 2.0 * binary_entropy(al);
}

Mat const_kernel(std::size_t rows, std::size_t nu) {
    Mat q(rows, nu);
    for (std::size_t z = 0; z < rows; ++z) q(z, 0) = 1.0;
    return q;
}

Mat identity_kernel(std::size_t rows) {
    Mat q(rows, rows);
    for (std::size_t z = 0; z < rows; ++z) q(z, z) = 1.0;
    return q;
}

JointPMF independent_pair() {
    Mat m(2, 2);
    m(0, 0) = 0.3 * 0.6;
    m(0, 1) = 0.3 * 0.4;
    m(1, 0) = 0.7 * 0.6;
    m(1, 1) = 0.7 * 0.4;
    return validate_and_trim(m, {"0", "1"}, {"0", "1"});
}

}  // namespace

TEST_CASE("lossless corners") {
    auto pmf = make_dsbs(0.1);
    auto cu = make_aux_decomposition(pmf, const_kernel(4, 2));
    RatePoint p0 = lossless_point(pmf, cu);
    CHECK(p0.r0 == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(p0.r1 == doctest::Approx(pmf.hx()).epsilon(1e-12));
    CHECK(p0.r2 == doctest::Approx(pmf.hy()).epsilon(1e-12));

    auto full = make_aux_decomposition(pmf, identity_kernel(4));
    RatePoint pf = lossless_point(pmf, full);
    CHECK(pf.r0 == doctest::Approx(pmf.hxy()).epsilon(1e-12));
    CHECK(pf.r1 == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(pf.r2 == doctest::Approx(0.0).epsilon(1e-12));

    // solver-optimal point lands on the Pangloss plane
    SolverConfig cfg;
    cfg.restarts = 6;
    auto w = wyner_ci(pmf, cfg);
    RatePoint pw = lossless_point(pmf, make_aux_decomposition(pmf, w.q));
    CHECK(std::abs(pw.r0 - dsbs_wyner(0.1)) < 1e-2);
    CHECK(std::abs(pangloss_gap(pw, pmf.hxy())) < 2e-2);

    // mismatched source is rejected
    auto other = make_dsbs(0.3);
    CHECK_THROWS_AS(lossless_point(other, cu), MarginalMismatchError);
}

TEST_CASE("lossless point inequalities on random decompositions") {
    SplitMix64 rng(11);
    auto pmf = make_dsbs(0.15);
    for (int t = 0; t < 25; ++t) {
        Mat q(4, 3);
        for (std::size_t z = 0; z < 4; ++z) rng.dirichlet_row({q.a.data() + z * 3, 3});
        RatePoint p = lossless_point(pmf, make_aux_decomposition(pmf, q));
        CHECK(p.r0 + p.r1 >= pmf.hx() - 1e-9);
        CHECK(p.r0 + p.r2 >= pmf.hy() - 1e-9);
        CHECK(p.sum() >= pmf.hxy() - 1e-9);
    }
}

TEST_CASE("lossy corners") {
    auto pmf = make_dsbs(0.1);
    auto spec = DistortionSpec::hamming(2, 2);
    auto rd0 = joint_rd(pmf, spec, 0.0, 0.0);

    // identity reconstruction, constant U
    NDDist j5 = build_joint5(pmf, rd0, const_kernel(4, 2));
    auto lp = lossy_point(j5, spec);
    CHECK(lp.point.r0 == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(lp.point.r1 == doctest::Approx(pmf.hx()).epsilon(1e-6));
    CHECK(lp.point.r2 == doctest::Approx(pmf.hy()).epsilon(1e-6));
    CHECK(lp.d1 < 1e-9);
    CHECK(lp.d2 < 1e-9);

    // U = (Xh, Yh): private branches vanish
    NDDist j5u = build_joint5(pmf, rd0, identity_kernel(4));
    auto lpu = lossy_point(j5u, spec);
    CHECK(lpu.point.r1 == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(lpu.point.r2 == doctest::Approx(0.0).epsilon(1e-9));

    // Theorem-1 optimal joint sums to the RD function on the Pangloss plane
    SolverConfig cfg;
    cfg.restarts = 6;
    auto rd = joint_rd(pmf, spec, 0.02, 0.02);
    auto lw = lossy_wyner_ci(pmf, spec, rd, cfg);
    auto lopt = lossy_point(lw.joint5, spec);
    CHECK(std::abs(lopt.point.sum() - rd.rate) < 2e-2);
    CHECK(lopt.d1 <= 0.02 + 1e-5);
}

TEST_CASE("vkg corners") {
    auto pmf = make_dsbs(0.1);
    auto spec = DistortionSpec::hamming(2, 2);
    auto rd0 = joint_rd(pmf, spec, 0.0, 0.0);

    // U const, Xh=X, Yh=Y: sum bound is H(X,Y) + I(X;Y)
    NDDist j5 = build_joint5(pmf, rd0, const_kernel(4, 2));
    auto v = vkg_point(j5, spec);
    CHECK(v.bsum == doctest::Approx(pmf.hxy() + pmf.ixy()).epsilon(1e-6));

    // Markov-compliant joint: the conditional dependence term vanishes
    SolverConfig cfg;
    cfg.restarts = 6;
    auto rd = joint_rd(pmf, spec, 0.02, 0.02);
    auto lw = lossy_wyner_ci(pmf, spec, rd, cfg);
    auto vm = vkg_point(lw.joint5, spec);
    double i_xy_rec = lw.joint5.mutual_information({"X", "Y"}, {"Xh", "Yh"});
    CHECK(std::abs(vm.bsum - i_xy_rec) < 1e-3);
    CHECK(std::abs(vm.bsum - rd.rate) < 2e-2);

    // corner dominance over the plain lossy corner; the slack scales with the
    // joint's actual Markov residual (exactly-compliant joints get 1e-9)
    auto lp = lossy_point(lw.joint5, spec);
    double markov_res = lw.joint5.conditional_mutual_information({"Xh"}, {"Yh"}, {"U"});
    CHECK(vm.corner.r0 == doctest::Approx(lp.point.r0).epsilon(1e-12));
    CHECK(vm.corner.r1 >= lp.point.r1 - 1e-9);
    CHECK(vm.corner.r2 >= lp.point.r2 - markov_res - 1e-9);

    // an exactly Markov-compliant joint: U = (Xh, Yh)
    Mat qid(4, 4);
    for (std::size_t s = 0; s < 4; ++s) qid(s, s) = 1.0;
    NDDist jex = build_joint5(pmf, rd0, qid);
    CHECK(jex.conditional_mutual_information({"Xh"}, {"Yh"}, {"U"}) <= 1e-12);
    auto vex = vkg_point(jex, spec);
    auto lex = lossy_point(jex, spec);
    CHECK(vex.corner.r1 >= lex.point.r1 - 1e-9);
    CHECK(vex.corner.r2 >= lex.point.r2 - 1e-9);
}

TEST_CASE("plane gaps") {
    auto ind = independent_pair();
    auto cu = make_aux_decomposition(ind, const_kernel(4, 2));
    RatePoint p0 = lossless_point(ind, cu);
    CHECK(std::abs(pangloss_gap(p0, ind.hxy())) < 1e-9);

    auto pmf = make_dsbs(0.1);
    RatePoint pd = lossless_point(pmf, make_aux_decomposition(pmf, const_kernel(4, 2)));
    CHECK(std::abs(pangloss_gap(pd, pmf.hxy()) - 0.53100) < 1e-5);

    auto [gx, gy] = gk_plane_gap(pd, pmf.hx(), pmf.hy());
    CHECK(std::abs(gx) < 1e-9);
    CHECK(std::abs(gy) < 1e-9);

    // U = (X,Y): gaps (H(Y|X), H(X|Y))
    RatePoint pfull = lossless_point(pmf, make_aux_decomposition(pmf, identity_kernel(4)));
    auto [g1, g2] = gk_plane_gap(pfull, pmf.hx(), pmf.hy());
    CHECK(g1 == doctest::Approx(pmf.hxy() - pmf.hx()).epsilon(1e-9));
    CHECK(g2 == doctest::Approx(pmf.hxy() - pmf.hy()).epsilon(1e-9));

    // U = J on the two-block source: on both GK planes
    auto blk = make_block_diagonal({2, 2}, {0.5, 0.5});
    auto dec = ergodic_decomposition(blk);
    Mat qj(16, 2);
    for (std::size_t z = 0; z < 16; ++z) qj(z, dec.j_of_x[z / 4]) = 1.0;
    RatePoint pj = lossless_point(blk, make_aux_decomposition(blk, qj));
    auto [b1, b2] = gk_plane_gap(pj, blk.hx(), blk.hy());
    CHECK(std::abs(b1) < 1e-9);
    CHECK(std::abs(b2) < 1e-9);
}
