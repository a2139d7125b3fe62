#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "gwci/csv.hpp"
#include "gwci/solver.hpp"

using namespace gwci;

namespace {

// closed-form Wyner CI of a doubly symmetric binary source
double dsbs_wyner(double p) {
    double al = (1.0 - std::sqrt(1.0 - 2.0 * p)) / 2.0;
    return 1.0 + binary_entropy(p) - 2.0 * binary_entropy(al);
}

JointPMF independent_pair() {
    Mat m(2, 2);
    m(0, 0) = 0.3 * 0.6;
    m(0, 1) = 0.3 * 0.4;
    m(1, 0) = 0.7 * 0.6;
    m(1, 1) = 0.7 * 0.4;
    return validate_and_trim(m, {"0", "1"}, {"0", "1"});
}

JointPMF identity_pair() {
    Mat m(2, 2);
    m(0, 0) = m(1, 1) = 0.5;
    return validate_and_trim(m, {"0", "1"}, {"0", "1"});
}

std::vector<CurvePoint> dedupe(const std::vector<CurvePoint>& pts) {
    std::vector<CurvePoint> out;
    for (const CurvePoint& p : pts)
        if (out.empty() || std::abs(p.excess_rate - out.back().excess_rate) > 1e-9 ||
            std::abs(p.shared_rate - out.back().shared_rate) > 1e-9)
            out.push_back(p);
    return out;
}

}  // namespace

TEST_CASE("wyner ci endpoints") {
    SolverConfig cfg;
    cfg.restarts = 4;

    auto ind = wyner_ci(independent_pair(), cfg);
    CHECK(ind.value < 1e-6);
    CHECK(ind.residual < 1e-6);

    auto eq = wyner_ci(identity_pair(), cfg);
    CHECK(eq.value == doctest::Approx(1.0).epsilon(1e-6));

    auto d = wyner_ci(make_dsbs(0.1), cfg);
    CHECK(d.converged);
    CHECK(std::abs(d.value - dsbs_wyner(0.1)) < 5e-3);
    CHECK(d.value >= make_dsbs(0.1).ixy() - cfg.tol);
    // the decomposition reproduces the source marginal
    auto aux = make_aux_decomposition(make_dsbs(0.1), d.q);
    auto marg = aux.induced.marginal({"X", "Y"});
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(std::abs(marg.p()[i] - make_dsbs(0.1).p.a[i]) < 1e-9);
}

TEST_CASE("c curve shape on dsbs") {
    SolverConfig cfg;
    cfg.restarts = 6;
    auto pmf = make_dsbs(0.1);
    auto pts = c_curve(pmf, cfg);
    REQUIRE(pts.size() >= 3);

    double ixy = pmf.ixy();
    // endpoint exactly at (I(X;Y), 0)
    CHECK(pts.back().excess_rate == doctest::Approx(ixy).epsilon(1e-12));
    CHECK(pts.back().shared_rate == 0.0);

    auto d = dedupe(pts);
    // convex, strictly decreasing, slopes <= -1
    for (std::size_t i = 0; i + 1 < d.size(); ++i) {
        double dr = d[i + 1].excess_rate - d[i].excess_rate;
        if (dr < 1e-9) continue;
        double slope = (d[i + 1].shared_rate - d[i].shared_rate) / dr;
        CHECK(slope <= -1.0 + 1e-3);
        CHECK(d[i + 1].shared_rate < d[i].shared_rate + 1e-9);
    }
    for (std::size_t i = 0; i + 2 < d.size(); ++i) {
        double r0 = d[i].excess_rate, r1 = d[i + 1].excess_rate, r2 = d[i + 2].excess_rate;
        if (r1 - r0 < 1e-9 || r2 - r1 < 1e-9) continue;
        double s1 = (d[i + 1].shared_rate - d[i].shared_rate) / (r1 - r0);
        double s2 = (d[i + 2].shared_rate - d[i + 1].shared_rate) / (r2 - r1);
        CHECK(s2 >= s1 - 1e-6);
    }
    // left end recovers the Wyner value
    CHECK(std::abs(d.front().shared_rate - dsbs_wyner(0.1)) < 5e-3);
}

TEST_CASE("c curve degenerate cases") {
    SolverConfig cfg;
    cfg.restarts = 4;
    // X = Y: collapses onto the segment joining (0,1)-(1,0)
    auto pts = c_curve(identity_pair(), cfg);
    for (const CurvePoint& p : pts) {
        CHECK(std::abs(p.shared_rate - (1.0 - p.excess_rate)) < 1e-6);
    }
    CHECK(pts.front().excess_rate < 1e-6);
    CHECK(pts.front().shared_rate == doctest::Approx(1.0).epsilon(1e-6));

    // independent: the whole curve sits at the origin
    auto pts2 = c_curve(independent_pair(), cfg);
    for (const CurvePoint& p : pts2) {
        CHECK(p.excess_rate < 1e-6);
        CHECK(p.shared_rate < 1e-6);
    }
}

TEST_CASE("k curve endpoints and shape") {
    SolverConfig cfg;
    cfg.restarts = 4;
    auto pmf = make_dsbs(0.1);
    auto pts = k_curve(pmf, cfg);
    REQUIRE(pts.size() >= 3);
    double hxy = pmf.hxy(), ixy = pmf.ixy();

    // K(0) = C_GK = 0 for the full-support source (exact J witness)
    CHECK(pts.front().excess_rate == 0.0);
    CHECK(pts.front().shared_rate == 0.0);
    // top endpoint (H(X,Y)-I(X;Y), H(X,Y)) via W=(X,Y)
    bool has_top = false;
    for (const CurvePoint& p : pts)
        if (std::abs(p.excess_rate - (hxy - ixy)) < 1e-9 &&
            std::abs(p.shared_rate - hxy) < 1e-9)
            has_top = true;
    CHECK(has_top);

    auto d = dedupe(pts);
    for (std::size_t i = 0; i + 1 < d.size(); ++i) {
        double dr = d[i + 1].excess_rate - d[i].excess_rate;
        if (dr < 1e-9) continue;
        double slope = (d[i + 1].shared_rate - d[i].shared_rate) / dr;
        CHECK(slope >= 1.0 - 1e-3);
        CHECK(d[i + 1].shared_rate > d[i].shared_rate - 1e-9);
    }
    // concavity
    for (std::size_t i = 0; i + 2 < d.size(); ++i) {
        double r0 = d[i].excess_rate, r1 = d[i + 1].excess_rate, r2 = d[i + 2].excess_rate;
        if (r1 - r0 < 1e-9 || r2 - r1 < 1e-9) continue;
        double s1 = (d[i + 1].shared_rate - d[i].shared_rate) / (r1 - r0);
        double s2 = (d[i + 2].shared_rate - d[i + 1].shared_rate) / (r2 - r1);
        CHECK(s2 <= s1 + 1e-6);
    }

    // two-block source: K(0) equals H(J) = 1 via the gk module
    auto blk = make_block_diagonal({2, 2}, {0.5, 0.5});
    auto bpts = k_curve(blk, cfg);
    CHECK(bpts.front().excess_rate == 0.0);
    CHECK(bpts.front().shared_rate == doctest::Approx(1.0).epsilon(1e-9));

    // independent: K(0) = 0
    auto ipts = k_curve(independent_pair(), cfg);
    CHECK(ipts.front().shared_rate < 1e-9);
}

TEST_CASE("theorem-4 style extraction") {
    SolverConfig cfg;
    cfg.restarts = 6;

    // full-support DSBS: no slope -1 segment, so 0
    auto cd = c_curve(make_dsbs(0.1), cfg);
    CHECK(gk_from_curve(cd) == 0.0);

    // two-block: the whole curve is the -1 segment; value = C_GK = 1
    auto blk = make_block_diagonal({2, 2}, {0.5, 0.5});
    auto cb = c_curve(blk, cfg);
    CHECK(std::abs(gk_from_curve(cb) - 1.0) < 2e-2);

    // X = Y: degenerate curve, C_GK = H(X) = 1
    auto cq = c_curve(identity_pair(), cfg);
    CHECK(std::abs(gk_from_curve(cq) - 1.0) < 1e-6);

    // wyner side
    auto kd = k_curve(make_dsbs(0.1), cfg);
    CHECK(std::abs(wyner_from_curve(kd) - dsbs_wyner(0.1)) < 2e-2);
    auto kq = k_curve(identity_pair(), cfg);
    CHECK(std::abs(wyner_from_curve(kq) - 1.0) < 1e-9);
    auto ki = k_curve(independent_pair(), cfg);
    CHECK(wyner_from_curve(ki) < 1e-6);

    CHECK_THROWS_AS(gk_from_curve({}), InsufficientPointsError);
}

TEST_CASE("oracle curve on dsbs") {
    auto pmf = make_dsbs(0.1);
    auto oc = oracle_c_curve(pmf, 2, 0.04);
    // frozen from the prototype run of this same brute-force construction
    CHECK(std::abs(oc.r0_value - 0.8728) < 1e-2);
    CHECK(oc.exact_zero_value == doctest::Approx(1.0).epsilon(1e-9));  // U = X witness
    REQUIRE(oc.points.size() >= 3);
    // envelope is convex decreasing toward (I(X;Y), ~0)
    CHECK(oc.points.back().excess_rate >= pmf.ixy() - 1e-6);

    // independent: flat zero curve
    auto oi = oracle_c_curve(independent_pair(), 2, 0.1);
    CHECK(oi.r0_value < 1e-9);

    // X=Y: endpoint (0,1)
    auto oq = oracle_c_curve(identity_pair(), 2, 0.1);
    CHECK(std::abs(oq.r0_value - 1.0) < 1e-9);

    CHECK_THROWS_AS(oracle_c_curve(make_uniform_diag(3), 2, 0.1), TooLargeError);
}

TEST_CASE("oracle matches solver pointwise on dsbs") {
    auto pmf = make_dsbs(0.1);
    SolverConfig cfg;
    cfg.restarts = 6;
    auto solver_pts = dedupe(c_curve(pmf, cfg));
    auto oc = oracle_c_curve(pmf, 2, 0.04);
    // interpolate the oracle hull at solver points
    auto interp = [&](double r) {
        const auto& h = oc.points;
        if (r <= h.front().excess_rate) return h.front().shared_rate;
        for (std::size_t i = 0; i + 1 < h.size(); ++i) {
            if (r <= h[i + 1].excess_rate) {
                double t = (r - h[i].excess_rate) /
                           std::max(h[i + 1].excess_rate - h[i].excess_rate, 1e-300);
                return h[i].shared_rate +
                       t * (h[i + 1].shared_rate - h[i].shared_rate);
            }
        }
        return h.back().shared_rate;
    };
    double tol = std::max(1e-2, 2 * 0.04);
    for (const CurvePoint& p : solver_pts) {
        if (p.excess_rate > pmf.ixy()) continue;
        CHECK(std::abs(p.shared_rate - interp(p.excess_rate)) < tol);
    }
}

TEST_CASE("transmit receive tradeoff") {
    SolverConfig cfg;
    cfg.restarts = 4;
    auto pmf = make_dsbs(0.1);
    auto cp = c_curve(pmf, cfg);
    auto kp = k_curve(pmf, cfg);
    auto tr = transmit_receive_tradeoff(cp, kp, pmf);
    REQUIRE(!tr.empty());
    double hxy = pmf.hxy(), hsum = pmf.hx() + pmf.hy();

    // monotone non-increasing receive rate
    for (std::size_t i = 0; i + 1 < tr.size(); ++i)
        CHECK(tr[i + 1].receive_rate <= tr[i].receive_rate + 1e-9);
    // first point near (H(X,Y), H(X,Y)+C_W); last reaches H(X)+H(Y)
    CHECK(std::abs(tr.front().transmit_rate - hxy) < 1e-3);
    CHECK(std::abs(tr.front().receive_rate - (hxy + dsbs_wyner(0.1))) < 1e-2);
    CHECK(std::abs(tr.back().receive_rate - hsum) < 1e-9);

    // independent pair: a single degenerate segment at (H(X,Y), H(X,Y))
    auto ind = independent_pair();
    auto tri = transmit_receive_tradeoff(c_curve(ind, cfg), k_curve(ind, cfg), ind);
    for (const auto& p : tri) {
        CHECK(std::abs(p.transmit_rate - ind.hxy()) < 1e-6);
        CHECK(std::abs(p.receive_rate - ind.hxy()) < 1e-6);
    }

    // identity source: first point (1, 2)
    auto idp = identity_pair();
    auto trq = transmit_receive_tradeoff(c_curve(idp, cfg), k_curve(idp, cfg), idp);
    CHECK(std::abs(trq.front().transmit_rate - 1.0) < 1e-6);
    CHECK(std::abs(trq.front().receive_rate - 2.0) < 1e-6);

    CHECK_THROWS_AS(transmit_receive_tradeoff({}, {}, pmf), EmptyCurveError);
}

TEST_CASE("transmit and receive contours coincide") {
    // for each transmit rate in range, minimal R_r from the transmit sweep
    // must invert through the receive sweep within 2e-2
    SolverConfig cfg;
    cfg.restarts = 6;
    auto pmf = make_dsbs(0.1);
    auto cp = dedupe(c_curve(pmf, cfg));
    auto kp = dedupe(k_curve(pmf, cfg));
    double hxy = pmf.hxy(), hsum = pmf.hx() + pmf.hy();

    // receive sweep as (R_t, R_r) pairs, sorted by R_t
    std::vector<std::pair<double, double>> rc;
    for (const CurvePoint& p : kp)
        rc.emplace_back(hsum + p.excess_rate - p.shared_rate, hsum + p.excess_rate);
    std::sort(rc.begin(), rc.end());
    auto interp_rc = [&](double rt) {
        if (rt <= rc.front().first) return rc.front().second;
        for (std::size_t i = 0; i + 1 < rc.size(); ++i)
            if (rt <= rc[i + 1].first) {
                double span = std::max(rc[i + 1].first - rc[i].first, 1e-300);
                double t = (rt - rc[i].first) / span;
                return rc[i].second + t * (rc[i + 1].second - rc[i].second);
            }
        return rc.back().second;
    };
    for (const CurvePoint& p : cp) {
        double rt = hxy + p.excess_rate;
        double rr_c = rt + p.shared_rate;
        if (rt < rc.front().first || rt > rc.back().first) continue;
        CHECK(std::abs(rr_c - interp_rc(rt)) < 2e-2);
    }
}

TEST_CASE("curve csv format") {
    SolverConfig cfg;
    cfg.restarts = 2;
    auto pts = c_curve(make_dsbs(0.2), cfg);
    std::string csv = curve_csv(pts);
    CHECK(csv.rfind("excess_rate_bits,shared_rate_bits,lagrange_weight,residual,converged\n",
                    0) == 0);
    // determinism: same seed, byte-identical output
    auto pts2 = c_curve(make_dsbs(0.2), cfg);
    CHECK(curve_csv(pts2) == csv);
}
