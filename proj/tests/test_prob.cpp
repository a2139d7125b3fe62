#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gwci/gk.hpp"
#include "gwci/nddist.hpp"
#include "gwci/pmf.hpp"

using namespace gwci;

namespace {

Mat mat2(double a, double b, double c, double d) {
    Mat m(2, 2);
    m(0, 0) = a;
    m(0, 1) = b;
    m(1, 0) = c;
    m(1, 1) = d;
    return m;
}

JointPMF random_pmf(SplitMix64& rng, std::size_t nx, std::size_t ny) {
    Mat m(nx, ny);
    rng.dirichlet_row({m.a.data(), m.a.size()});
    std::vector<std::string> xl, yl;
    for (std::size_t i = 0; i < nx; ++i) xl.push_back(std::to_string(i));
    for (std::size_t j = 0; j < ny; ++j) yl.push_back(std::to_string(j));
    return validate_and_trim(m, xl, yl);
}

}  // namespace

TEST_CASE("validate_and_trim basics") {
    auto u = validate_and_trim(mat2(0.25, 0.25, 0.25, 0.25), {"a", "b"}, {"c", "d"});
    CHECK(u.nx() == 2);
    CHECK(u.p(0, 0) == doctest::Approx(0.25));

    Mat with_zero_row(3, 2);
    with_zero_row(0, 0) = 0.5;
    with_zero_row(1, 1) = 0.5;
    auto t = validate_and_trim(with_zero_row, {"r0", "r1", "r2"}, {"c0", "c1"});
    CHECK(t.nx() == 2);
    CHECK(t.x_labels == std::vector<std::string>{"r0", "r1"});

    auto n = validate_and_trim(mat2(1, 1, 1, 1), {"0", "1"}, {"0", "1"});
    CHECK(n.p(1, 1) == doctest::Approx(0.25));

    CHECK_THROWS_AS(validate_and_trim(mat2(0.5, -0.1, 0.3, 0.3), {"0", "1"}, {"0", "1"}),
                    NegativeEntryError);
    CHECK_THROWS_AS(validate_and_trim(mat2(0, 0, 0, 0), {"0", "1"}, {"0", "1"}),
                    AllZeroError);
}

TEST_CASE("entropy examples") {
    NDDist ub({Axis::indexed("X", 2)}, {0.5, 0.5});
    CHECK(ub.entropy({"X"}) == doctest::Approx(1.0).epsilon(1e-12));

    NDDist pt({Axis::indexed("X", 3)}, {0.0, 1.0, 0.0});
    CHECK(pt.entropy({"X"}) == 0.0);

    NDDist bern({Axis::indexed("X", 2)}, {0.9, 0.1});
    // direct evaluation of -sum p log2 p
    double want = -(0.9 * std::log2(0.9) + 0.1 * std::log2(0.1));
    CHECK(std::abs(bern.entropy({"X"}) - want) < 1e-15);
    CHECK(std::abs(bern.entropy({"X"}) - 0.46900) < 1e-5);

    CHECK_THROWS_AS(ub.entropy({"Z"}), UnknownAxisError);
}

TEST_CASE("mutual information examples") {
    // product distribution
    NDDist prod({Axis::indexed("X", 2), Axis::indexed("Y", 2)},
                {0.3 * 0.6, 0.3 * 0.4, 0.7 * 0.6, 0.7 * 0.4});
    CHECK(prod.mutual_information({"X"}, {"Y"}) == doctest::Approx(0.0).epsilon(1e-12));

    NDDist eq({Axis::indexed("X", 2), Axis::indexed("Y", 2)}, {0.5, 0.0, 0.0, 0.5});
    CHECK(eq.mutual_information({"X"}, {"Y"}) == doctest::Approx(1.0).epsilon(1e-12));

    auto dsbs = make_dsbs(0.1);
    double mi = dsbs.to_dist().mutual_information({"X"}, {"Y"});
    CHECK(std::abs(mi - (1.0 - binary_entropy(0.1))) < 1e-12);
    CHECK(std::abs(mi - 0.53100) < 1e-5);

    CHECK_THROWS_AS(eq.mutual_information({"X"}, {"X"}), OverlappingGroupsError);
}

TEST_CASE("conditional mutual information examples") {
    auto dsbs = make_dsbs(0.1);
    NDDist d = dsbs.to_dist();

    // U = (X,Y) via a deterministic kernel over both axes
    Mat k(4, 4);
    for (std::size_t z = 0; z < 4; ++z) k(z, z) = 1.0;
    std::vector<std::string> gxy{"X", "Y"};
    NDDist full = d.compose(Axis::indexed("U", 4), gxy, k);
    CHECK(full.conditional_mutual_information({"X"}, {"Y"}, {"U"}) == 0.0);

    // constant U
    Mat kc(4, 1, 1.0);
    NDDist cu = d.compose(Axis::indexed("U", 1), gxy, kc);
    CHECK(cu.conditional_mutual_information({"X"}, {"Y"}, {"U"}) ==
          doctest::Approx(d.mutual_information({"X"}, {"Y"})).epsilon(1e-12));

    // U independent of (X,Y): I(X;Y|U) = I(X;Y)
    Mat kcoin(4, 2, 0.5);
    NDDist coin = d.compose(Axis::indexed("U", 2), gxy, kcoin);
    double cmi = coin.conditional_mutual_information({"X"}, {"Y"}, {"U"});
    CHECK(std::abs(cmi - 0.53100) < 1e-5);

    CHECK_THROWS_AS(coin.conditional_mutual_information({"X"}, {"Y"}, {"X"}),
                    OverlappingGroupsError);
}

TEST_CASE("marginalize, condition, compose") {
    auto u = validate_and_trim(mat2(0.25, 0.25, 0.25, 0.25), {"0", "1"}, {"0", "1"});
    NDDist d = u.to_dist();
    NDDist mx = d.marginal({"X"});
    CHECK(mx.p()[0] == doctest::Approx(0.5).epsilon(1e-15));

    // condition-then-recompose reproduces the original
    auto dsbs = make_dsbs(0.2);
    NDDist full = dsbs.to_dist();
    NDDist my = full.marginal({"Y"});
    Mat ky(2, 2);
    for (std::size_t y = 0; y < 2; ++y) {
        NDDist cond = full.condition("Y", y);
        for (std::size_t x = 0; x < 2; ++x) ky(y, x) = cond.p()[x];
    }
    std::vector<std::string> gy{"Y"};
    NDDist rebuilt = my.compose(Axis::indexed("X2", 2), gy, ky);
    // compare p(y,x) with p(x,y)
    for (std::size_t y = 0; y < 2; ++y)
        for (std::size_t x = 0; x < 2; ++x)
            CHECK(std::abs(rebuilt.p()[y * 2 + x] - dsbs.p(x, y)) < 1e-12);

    // compose with deterministic u = x
    Mat kx(4, 2);
    kx(0, 0) = kx(1, 0) = 1.0;
    kx(2, 1) = kx(3, 1) = 1.0;
    std::vector<std::string> gxy{"X", "Y"};
    NDDist du = make_dsbs(0.1).to_dist().compose(Axis::indexed("U", 2), gxy, kx);
    CHECK(du.entropy({"U"}) == doctest::Approx(1.0).epsilon(1e-12));

    Mat bad(3, 2, 0.5);
    CHECK_THROWS_AS(full.compose(Axis::indexed("U", 2), gxy, bad), ShapeMismatchError);
}

TEST_CASE("information identities on random joints") {
    SplitMix64 rng(42);
    for (int t = 0; t < 40; ++t) {
        JointPMF pmf = random_pmf(rng, 2 + t % 3, 2 + (t / 3) % 3);
        NDDist d = pmf.to_dist();
        double hx = d.entropy({"X"}), hy = d.entropy({"Y"}), hxy = d.entropy({"X", "Y"});
        // chain rule
        CHECK(std::abs(hxy - hx - (hxy - hx)) < 1e-10);
        double mi = d.mutual_information({"X"}, {"Y"});
        CHECK(mi >= 0.0);
        CHECK(mi <= std::min(hx, hy) + 1e-10);

        // attach a random auxiliary axis and check the decomposition identity
        // I(X;Y|U) + I(X,Y;U) = I(X;Y) + I(X;U|Y) + I(Y;U|X)
        Mat k(pmf.nx() * pmf.ny(), 3);
        for (std::size_t z = 0; z < k.rows; ++z) rng.dirichlet_row({k.a.data() + z * 3, 3});
        std::vector<std::string> gxy{"X", "Y"};
        NDDist j = d.compose(Axis::indexed("U", 3), gxy, k);
        double lhs = j.conditional_mutual_information({"X"}, {"Y"}, {"U"}) +
                     j.mutual_information({"X", "Y"}, {"U"});
        double rhs = j.mutual_information({"X"}, {"Y"}) +
                     j.conditional_mutual_information({"X"}, {"U"}, {"Y"}) +
                     j.conditional_mutual_information({"Y"}, {"U"}, {"X"});
        CHECK(std::abs(lhs - rhs) < 1e-10);

        // normalization preserved by transforms
        NDDist mxu = j.marginal({"X", "U"});
        double s = 0.0;
        for (double v : mxu.p()) s += v;
        CHECK(std::abs(s - 1.0) < 1e-12);
    }
}

TEST_CASE("pmf json round trip and tolerances") {
    auto dsbs = make_dsbs(0.1);
    auto loaded = load_pmf_json(pmf_to_json(dsbs));
    for (std::size_t i = 0; i < 4; ++i) CHECK(loaded.p.a[i] == doctest::Approx(dsbs.p.a[i]));

    // small sum error is renormalized
    auto ok = load_pmf_json(R"({"x_labels":["0","1"],"y_labels":["0","1"],
        "p":[[0.4500001,0.05],[0.05,0.45]]})");
    double s = 0.0;
    for (double v : ok.p.a) s += v;
    CHECK(std::abs(s - 1.0) < 1e-12);

    CHECK_THROWS_AS(load_pmf_json(R"({"x_labels":["0","1"],"y_labels":["0","1"],
        "p":[[0.46,0.05],[0.05,0.45]]})"),
                    ParseError);
    CHECK_THROWS_AS(load_pmf_json("not json"), ParseError);
    CHECK_THROWS_AS(load_pmf_json(R"({"x_labels":["0"],"y_labels":["0"],"p":[[1,0]]})"),
                    ParseError);
}

TEST_CASE("ergodic decomposition and gk common information") {
    // full support: one component
    auto dsbs = make_dsbs(0.1);
    auto d1 = ergodic_decomposition(dsbs);
    CHECK(d1.components.size() == 1);
    CHECK(gk_common_information(dsbs) == 0.0);

    // diagonal: n singleton components
    auto diag = make_uniform_diag(3);
    auto d2 = ergodic_decomposition(diag);
    CHECK(d2.components.size() == 3);
    CHECK(gk_common_information(make_uniform_diag(4)) == doctest::Approx(2.0).epsilon(1e-12));

    // two 2x2 uniform blocks of mass 1/2 each
    auto blk = make_block_diagonal({2, 2}, {0.5, 0.5});
    auto d3 = ergodic_decomposition(blk);
    REQUIRE(d3.components.size() == 2);
    CHECK(d3.j_pmf[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(gk_common_information(blk) == doctest::Approx(1.0).epsilon(1e-12));

    // C_GK <= I(X;Y) on random joints; label permutation invariance
    SplitMix64 rng(7);
    for (int t = 0; t < 30; ++t) {
        JointPMF p = random_pmf(rng, 3, 3);
        CHECK(gk_common_information(p) <= p.ixy() + 1e-10);
    }

    // permuting labels leaves H(J) unchanged
    auto blk_perm = blk;
    std::swap(blk_perm.x_labels[0], blk_perm.x_labels[3]);
    for (std::size_t j = 0; j < 4; ++j) std::swap(blk_perm.p(0, j), blk_perm.p(3, j));
    std::swap(blk_perm.y_labels[0], blk_perm.y_labels[3]);
    for (std::size_t i = 0; i < 4; ++i) std::swap(blk_perm.p(i, 0), blk_perm.p(i, 3));
    CHECK(gk_common_information(blk_perm) ==
          doctest::Approx(gk_common_information(blk)).epsilon(1e-12));

    // adding cross mass merges components
    auto merged = blk;
    merged.p(0, 3) += 1e-6;
    double s = 0.0;
    for (double v : merged.p.a) s += v;
    for (double& v : merged.p.a) v /= s;
    CHECK(ergodic_decomposition(merged).components.size() == 1);
}
