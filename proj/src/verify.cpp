#include "gwci/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

#include "gwci/csv.hpp"
#include "gwci/gaussian.hpp"
#include "gwci/gk.hpp"
#include "gwci/gw.hpp"
#include "gwci/lossy.hpp"
#include "gwci/pmf.hpp"
#include "gwci/rd.hpp"
#include "gwci/solver.hpp"

namespace gwci {

namespace {

struct Checker {
    bool ok = true;
    std::ostringstream note;
    int checks = 0;

    void expect(bool cond, const std::string& what) {
        ++checks;
        if (!cond) {
            ok = false;
            if (note.tellp() > 0) note << "; ";
            note << what;
        }
    }
    std::string details(const std::string& summary) const {
        if (ok) return summary;
        return summary + " [" + note.str() + "]";
    }
};

std::vector<CurvePoint> dedupe_curve(const std::vector<CurvePoint>& pts) {
    std::vector<CurvePoint> out;
    for (const CurvePoint& p : pts)
        if (out.empty() || std::abs(p.excess_rate - out.back().excess_rate) > 1e-9 ||
            std::abs(p.shared_rate - out.back().shared_rate) > 1e-9)
            out.push_back(p);
    return out;
}

JointPMF random_2x2(SplitMix64& rng, double min_mi) {
    for (;;) {
        Mat m(2, 2);
        rng.dirichlet_row({m.a.data(), 4});
        bool pos = true;
        for (double v : m.a) pos = pos && v > 1e-4;
        if (!pos) continue;
        JointPMF p = validate_and_trim(m, {"0", "1"}, {"0", "1"});
        if (p.ixy() >= min_mi) return p;
    }
}

// ---------------------------------------------------------------------------

CriterionResult crit_gaussian_lossless() {
    Checker c;
    GaussianSource g(0.5);
    double v = gaussian_wyner_ci_lossless(g);
    c.expect(std::abs(v - 0.5 * std::log2(3.0)) <= 1e-9, "rho=0.5 vs half-log2(3)");
    c.expect(std::abs(v - 0.792481) <= 1e-6, "rho=0.5 vs 0.792481");
    for (int i = 1; i <= 9; ++i) {
        double rho = 0.1 * i;
        double a = gaussian_wyner_ci_lossless(GaussianSource(rho));
        double b = 0.5 * (std::log2(1.0 + rho) - std::log2(1.0 - rho));
        c.expect(std::abs(a - b) <= 1e-12, "sweep rho=" + fmt9(rho));
    }
    return {"gaussian-lossless-ci", c.ok,
            c.details("closed form vs direct evaluation, 9-point sweep"), 0};
}

CriterionResult crit_fig2() {
    Checker c;
    GaussianSource g(0.5);
    const double d2 = 0.2, a_pt = 0.5, b_pt = 0.6875;
    const double lossless = gaussian_wyner_ci_lossless(g);
    c.expect(std::abs(lossless - 0.792481) <= 1e-6, "plateau level");
    double prev = -1.0;
    bool plateau_ok = true, increasing_ok = true, tail_ok = true;
    for (int i = 1; i <= 999; ++i) {
        double d1 = i * 1e-3;
        double v = gaussian_lossy_wyner_ci(g, d1, d2);
        if (d1 <= a_pt + 1e-12 && std::abs(v - lossless) > 1e-9) plateau_ok = false;
        if (d1 > a_pt + 1e-12 && d1 < b_pt - 1e-12) {
            if (prev >= 0 && v <= prev) increasing_ok = false;
            prev = v;
        }
        if (d1 >= b_pt - 1e-12 && std::abs(v - gaussian_joint_rd(g, d1, d2)) > 1e-12)
            tail_ok = false;
    }
    c.expect(plateau_ok, "constant for D1 <= 0.5");
    c.expect(increasing_ok, "strictly increasing on (0.5, 0.6875)");
    c.expect(tail_ok, "equals joint RD for D1 >= 0.6875");
    for (double b : {a_pt, b_pt}) {
        double lo = gaussian_lossy_wyner_ci(g, b - 1e-9, d2);
        double hi = gaussian_lossy_wyner_ci(g, b + 1e-9, d2);
        c.expect(std::abs(lo - hi) <= 1e-6, "continuity at " + fmt9(b));
    }
    c.expect(gaussian_lossy_wyner_ci(g, 0.55, d2) > gaussian_lossy_wyner_ci(g, 0.49, d2),
             "rises after A");
    c.expect(gaussian_lossy_wyner_ci(g, 0.80, d2) < gaussian_lossy_wyner_ci(g, b_pt, d2),
             "falls after B");
    return {"fig2-reproduction", c.ok,
            c.details("plateau, monotone rise, RD tail, continuity at A/B"), 0};
}

CriterionResult crit_continuity() {
    Checker c;
    double max_jump = 0.0;
    for (int i = 1; i <= 9; ++i) {
        double rho = 0.1 * i;
        GaussianSource g(rho);
        // 100 lines across D1 = 1-rho, 100 across (1-D1)(1-D2) = rho^2
        for (int k = 0; k < 100; ++k) {
            double d2 = 0.002 + (0.996 * k) / 99.0;
            if (d2 >= 0.999) continue;
            double b = 1.0 - rho;
            double jump = std::abs(gaussian_lossy_wyner_ci(g, b - 1e-9, d2) -
                                   gaussian_lossy_wyner_ci(g, b + 1e-9, d2));
            max_jump = std::max(max_jump, jump);
        }
        for (int k = 0; k < 100; ++k) {
            double d1 = (1.0 - rho) + 1e-4 + k * (rho - 2e-4) / 99.0;
            if (d1 <= 0 || d1 >= 1.0 - 1e-6) continue;
            double d2b = 1.0 - rho * rho / (1.0 - d1);
            if (d2b <= 1e-6 || d2b >= 1.0 - 1e-6) continue;
            double jump = std::abs(gaussian_lossy_wyner_ci(g, d1, d2b - 1e-9) -
                                   gaussian_lossy_wyner_ci(g, d1, d2b + 1e-9));
            max_jump = std::max(max_jump, jump);
        }
    }
    c.expect(max_jump <= 1e-6, "max jump " + fmt9(max_jump));
    return {"gaussian-continuity", c.ok,
            c.details("max boundary jump " + fmt9(max_jump) + " over 1800 scan lines"), 0};
}

CriterionResult crit_slb(std::uint64_t seed) {
    Checker c;
    SplitMix64 rng(seed ^ 0x736c62ull);
    int tight_count = 0, loose_count = 0;
    bool tight_ok = true, loose_ok = true;
    while (tight_count < 10000 || loose_count < 2000) {
        double rho = 0.02 + 0.96 * rng.uniform();
        double d1 = 0.01 + 0.98 * rng.uniform();
        double d2 = 0.01 + 0.98 * rng.uniform();
        GaussianSource g(rho);
        SLBResult s = gaussian_slb(g, d1, d2);
        double r = gaussian_joint_rd(g, d1, d2);
        if (s.tight && tight_count < 10000) {
            ++tight_count;
            if (std::abs(s.value - r) > 1e-12) tight_ok = false;
        } else if (!s.tight && loose_count < 2000) {
            ++loose_count;
            if (!(s.value < r)) loose_ok = false;
        }
    }
    c.expect(tight_ok, "equality on the tight region");
    c.expect(loose_ok, "strictly smaller off the tight region");
    return {"slb-consistency", c.ok,
            c.details("10000 tight + 2000 loose random distortion points"), 0};
}

CriterionResult crit_gk(std::uint64_t seed) {
    Checker c;
    SplitMix64 rng(seed ^ 0x676bull);
    for (int t = 0; t < 50; ++t) {
        std::size_t nb = 1 + (rng.next() % 4);
        std::vector<std::size_t> sizes;
        std::vector<double> mass(nb);
        for (std::size_t b = 0; b < nb; ++b) sizes.push_back(1 + (rng.next() % 3));
        rng.dirichlet_row(mass);
        for (double& m : mass) m += 0.05;  // keep every block visible
        std::size_t n = 0;
        for (std::size_t s : sizes) n += s;
        // random full-support cells inside each block
        Mat raw(n, n);
        std::size_t off = 0;
        for (std::size_t b = 0; b < nb; ++b) {
            double bm = 0.0;
            for (std::size_t i = 0; i < sizes[b]; ++i)
                for (std::size_t j = 0; j < sizes[b]; ++j) {
                    double v = 0.05 + rng.uniform();
                    raw(off + i, off + j) = v;
                    bm += v;
                }
            for (std::size_t i = 0; i < sizes[b]; ++i)
                for (std::size_t j = 0; j < sizes[b]; ++j)
                    raw(off + i, off + j) *= mass[b] / bm;
            off += sizes[b];
        }
        std::vector<std::string> lab;
        for (std::size_t i = 0; i < n; ++i) lab.push_back(std::to_string(i));
        JointPMF pmf = validate_and_trim(raw, lab, lab);
        std::vector<double> jm(mass);
        double ms = 0.0;
        for (double m : jm) ms += m;
        for (double& m : jm) m /= ms;
        double want = entropy_bits(jm);
        double got = gk_common_information(pmf);
        c.expect(std::abs(got - want) <= 1e-12,
                 "block joint " + std::to_string(t) + " got " + fmt9(got) + " want " +
                     fmt9(want));
    }
    for (std::size_t n = 2; n <= 8; ++n) {
        double got = gk_common_information(make_uniform_diag(n));
        c.expect(std::abs(got - std::log2(static_cast<double>(n))) <= 1e-12,
                 "diag uniform n=" + std::to_string(n));
    }
    return {"gk-exactness", c.ok,
            c.details("50 random block-diagonal joints + diagonal-uniform sweep"), 0};
}

struct CurveBundle {
    std::string tag;
    JointPMF pmf;
    std::vector<CurvePoint> c_pts;
    std::vector<CurvePoint> k_pts;
};

void crit_wyner_oracle_and_curves(std::uint64_t seed, CriterionResult& r6,
                                  CriterionResult& r7) {
    Checker c6, c7;
    SplitMix64 rng(seed ^ 0x6f7261636c65ull);
    SolverConfig cfg;
    cfg.rng_seed = seed;
    cfg.restarts = 8;

    std::vector<CurveBundle> bundles;
    for (int t = 0; t < 20; ++t) {
        CurveBundle b;
        b.tag = "rand" + std::to_string(t);
        b.pmf = random_2x2(rng, 0.05);
        bundles.push_back(std::move(b));
    }
    for (double p : {0.05, 0.1, 0.2}) {
        CurveBundle b;
        b.tag = "dsbs" + fmt9(p);
        b.pmf = make_dsbs(p);
        bundles.push_back(std::move(b));
    }

    for (CurveBundle& b : bundles) {
        bool is_dsbs = b.tag.rfind("dsbs", 0) == 0;
        double step = is_dsbs ? 0.02 : 0.04;
        double tol = std::max(1e-2, 2.0 * step);
        WynerResult w = wyner_ci(b.pmf, cfg);
        OracleCurve oc = oracle_c_curve(b.pmf, 2, step);
        c6.expect(std::abs(w.value - oc.r0_value) <= tol,
                  b.tag + " solver " + fmt9(w.value) + " vs oracle " + fmt9(oc.r0_value));
        b.c_pts = c_curve(b.pmf, cfg);
        b.k_pts = k_curve(b.pmf, cfg);
    }
    {
        WynerResult w = wyner_ci(make_dsbs(0.1), cfg);
        // 0.873 recorded from the oracle's own pre-build run at step 0.02
        c6.expect(std::abs(w.value - 0.873) <= 1e-2,
                  "dsbs(0.1) " + fmt9(w.value) + " vs recorded 0.873");
    }
    r6 = {"wyner-vs-oracle", c6.ok,
          c6.details("20 random 2x2 + dsbs{0.05,0.1,0.2} vs brute-force grid"), 0};

    for (const CurveBundle& b : bundles) {
        auto cd = dedupe_curve(b.c_pts);
        double ixy = b.pmf.ixy(), hxy = b.pmf.hxy();
        for (std::size_t i = 0; i + 1 < cd.size(); ++i) {
            double dr = cd[i + 1].excess_rate - cd[i].excess_rate;
            if (dr < 1e-9) continue;
            double s = (cd[i + 1].shared_rate - cd[i].shared_rate) / dr;
            c7.expect(s <= -1.0 + 1e-3, b.tag + " c-slope " + fmt9(s));
            c7.expect(cd[i + 1].shared_rate < cd[i].shared_rate + 1e-9, b.tag + " c-monotone");
        }
        for (std::size_t i = 0; i + 2 < cd.size(); ++i) {
            double r0 = cd[i].excess_rate, r1 = cd[i + 1].excess_rate,
                   r2 = cd[i + 2].excess_rate;
            if (r1 - r0 < 1e-9 || r2 - r1 < 1e-9) continue;
            double s1 = (cd[i + 1].shared_rate - cd[i].shared_rate) / (r1 - r0);
            double s2 = (cd[i + 2].shared_rate - cd[i + 1].shared_rate) / (r2 - r1);
            c7.expect(s2 - s1 >= -1e-6, b.tag + " c-convexity");
        }
        bool c_end = false;
        for (const CurvePoint& p : b.c_pts)
            if (std::abs(p.excess_rate - ixy) <= 1e-9 && p.shared_rate == 0.0) c_end = true;
        c7.expect(c_end, b.tag + " C(I(X;Y)) = 0");

        auto kd = dedupe_curve(b.k_pts);
        for (std::size_t i = 0; i + 1 < kd.size(); ++i) {
            double dr = kd[i + 1].excess_rate - kd[i].excess_rate;
            if (dr < 1e-9) continue;
            double s = (kd[i + 1].shared_rate - kd[i].shared_rate) / dr;
            c7.expect(s >= 1.0 - 1e-3, b.tag + " k-slope " + fmt9(s));
            c7.expect(kd[i + 1].shared_rate > kd[i].shared_rate - 1e-9, b.tag + " k-monotone");
        }
        for (std::size_t i = 0; i + 2 < kd.size(); ++i) {
            double r0 = kd[i].excess_rate, r1 = kd[i + 1].excess_rate,
                   r2 = kd[i + 2].excess_rate;
            if (r1 - r0 < 1e-9 || r2 - r1 < 1e-9) continue;
            double s1 = (kd[i + 1].shared_rate - kd[i].shared_rate) / (r1 - r0);
            double s2 = (kd[i + 2].shared_rate - kd[i + 1].shared_rate) / (r2 - r1);
            c7.expect(s2 - s1 <= 1e-6, b.tag + " k-concavity");
        }
        bool k_end = false;
        for (const CurvePoint& p : b.k_pts)
            if (std::abs(p.excess_rate - (hxy - ixy)) <= 1e-9 &&
                std::abs(p.shared_rate - hxy) <= 1e-9)
                k_end = true;
        c7.expect(k_end, b.tag + " K(H(X,Y)-I(X;Y)) = H(X,Y)");
        double gk = gk_common_information(b.pmf);
        c7.expect(std::abs(b.k_pts.front().excess_rate) <= 1e-9 &&
                      std::abs(b.k_pts.front().shared_rate - gk) <= 2e-2,
                  b.tag + " K(0) vs C_GK");
    }
    r7 = {"curve-properties", c7.ok,
          c7.details("convexity, monotonicity, slopes and endpoints on all 23 curve pairs"),
          0};
}

CriterionResult crit_theorem4(std::uint64_t seed) {
    Checker c;
    SolverConfig cfg;
    cfg.rng_seed = seed;
    cfg.restarts = 8;

    auto blk = make_block_diagonal({2, 2}, {0.5, 0.5});
    double gk_true = gk_common_information(blk);
    double gk_curve = gk_from_curve(c_curve(blk, cfg));
    c.expect(std::abs(gk_curve - gk_true) <= 2e-2,
             "two-block gk " + fmt9(gk_curve) + " vs " + fmt9(gk_true));

    auto dsbs = make_dsbs(0.1);
    c.expect(gk_from_curve(c_curve(dsbs, cfg)) == 0.0, "dsbs gk = 0");

    double w_curve = wyner_from_curve(k_curve(dsbs, cfg));
    double w_solver = wyner_ci(dsbs, cfg).value;
    c.expect(std::abs(w_curve - w_solver) <= 2e-2,
             "dsbs wyner " + fmt9(w_curve) + " vs " + fmt9(w_solver));

    double wb_curve = wyner_from_curve(k_curve(blk, cfg));
    double wb_solver = wyner_ci(blk, cfg).value;
    c.expect(std::abs(wb_curve - wb_solver) <= 2e-2,
             "two-block wyner " + fmt9(wb_curve) + " vs " + fmt9(wb_solver));
    return {"theorem4-extraction", c.ok,
            c.details("slope-kink extraction against the direct solvers"), 0};
}

CriterionResult crit_theorem1(std::uint64_t seed) {
    Checker c;
    SolverConfig cfg;
    cfg.rng_seed = seed;
    cfg.restarts = 8;
    auto pmf = make_dsbs(0.1);
    auto spec = DistortionSpec::hamming(2, 2);

    auto zero = lossy_wyner_ci(pmf, spec, 0.0, 0.0, cfg);
    double lossless = wyner_ci(pmf, cfg).value;
    c.expect(std::abs(zero.value - lossless) <= 2e-2,
             "D=0 lossy " + fmt9(zero.value) + " vs lossless " + fmt9(lossless));

    auto rd = joint_rd(pmf, spec, 0.02, 0.02);
    auto lw = lossy_wyner_ci(pmf, spec, rd, cfg);
    auto pt = lossy_point(lw.joint5, spec);
    c.expect(std::abs(pangloss_gap(pt.point, rd.rate)) <= 2e-2,
             "pangloss gap " + fmt9(pangloss_gap(pt.point, rd.rate)));
    auto rep = check_corollary1(lw.joint5, 1e-3);
    c.expect(rep.pass, "corollary-1 residuals " + fmt9(rep.i_xh_yh_given_xyu) + "," +
                           fmt9(rep.i_xh_y_given_xu) + "," + fmt9(rep.i_yh_x_given_yu));
    c.expect(lw.bounds.epsilon <= 1e-3, "epsilon " + fmt9(lw.bounds.epsilon));
    c.expect(lw.bounds.upper - lw.bounds.lower <= 5e-2,
             "bracket width " + fmt9(lw.bounds.upper - lw.bounds.lower));
    c.expect(lw.bounds.lower <= lw.value + 1e-12 && lw.value <= lw.bounds.upper + 1e-12,
             "value inside bracket");
    return {"theorem1-pipeline", c.ok,
            c.details("lossless reduction, Pangloss membership, factorization, bracket"), 0};
}

CriterionResult crit_lossy_gk(std::uint64_t seed) {
    Checker c;
    SolverConfig cfg;
    cfg.rng_seed = seed;
    cfg.restarts = 4;

    auto blk = make_block_diagonal({2, 2}, {0.5, 0.5});
    auto spec4 = DistortionSpec::hamming(4, 4);
    auto spec2 = DistortionSpec::hamming(2, 2);

    struct Case {
        JointPMF pmf;
        DistortionSpec spec;
        double d1, d2;
    };
    std::vector<Case> cases;
    cases.push_back({make_dsbs(0.1), spec2, 0.05, 0.05});
    cases.push_back({blk, spec4, 0.0, 0.0});
    cases.push_back({blk, spec4, 0.1, 0.1});
    cases.push_back({make_uniform_diag(4), spec4, 0.1, 0.1});
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const Case& cs = cases[i];
        double gk = gk_common_information(cs.pmf);
        auto res = lossy_gk_ci(cs.pmf, cs.spec, cs.d1, cs.d2, cfg);
        c.expect(res.value <= gk + 1e-9,
                 "corollary-2 case " + std::to_string(i) + " value " + fmt9(res.value));
    }
    auto eq = lossy_gk_ci(blk, spec4, 0.0, 0.0, cfg);
    c.expect(std::abs(eq.value - gk_common_information(blk)) <= 1e-9,
             "equality at zero distortion");
    for (int i = 1; i <= 9; ++i) {
        GaussianSource g(0.1 * i);
        c.expect(gaussian_lossy_gk(g, 0.3, 0.4) == 0.0,
                 "gaussian zero at rho=" + fmt9(0.1 * i));
    }
    return {"lossy-gk", c.ok,
            c.details("corollary-2 bound, zero-distortion equality, gaussian zero"), 0};
}

std::vector<CriterionResult> run_core(const std::set<std::string>& only, std::uint64_t seed) {
    auto want = [&](const std::string& n) { return only.empty() || only.count(n) > 0; };
    std::vector<CriterionResult> out;
    auto timed = [&](const std::function<CriterionResult()>& fn, double budget) {
        auto t0 = std::chrono::steady_clock::now();
        CriterionResult r = fn();
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (budget > 0 && r.seconds > budget) {
            r.pass = false;
            r.details += " [runtime over budget]";
        }
        out.push_back(std::move(r));
    };
    if (want("gaussian-lossless-ci")) timed([] { return crit_gaussian_lossless(); }, 1.0);
    if (want("fig2-reproduction")) timed([] { return crit_fig2(); }, 1.0);
    if (want("gaussian-continuity")) timed([] { return crit_continuity(); }, 5.0);
    if (want("slb-consistency")) timed([&] { return crit_slb(seed); }, 2.0);
    if (want("gk-exactness")) timed([&] { return crit_gk(seed); }, 1.0);
    if (want("wyner-vs-oracle") || want("curve-properties")) {
        auto t0 = std::chrono::steady_clock::now();
        CriterionResult r6, r7;
        crit_wyner_oracle_and_curves(seed, r6, r7);
        double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        r6.seconds = secs;
        r7.seconds = 0.0;  // shares criterion 6's runtime budget
        if (secs > 120.0) {
            r6.pass = false;
            r6.details += " [runtime over budget]";
        }
        if (want("wyner-vs-oracle")) out.push_back(std::move(r6));
        if (want("curve-properties")) out.push_back(std::move(r7));
    }
    if (want("theorem4-extraction")) timed([&] { return crit_theorem4(seed); }, 60.0);
    if (want("theorem1-pipeline")) timed([&] { return crit_theorem1(seed); }, 120.0);
    if (want("lossy-gk")) timed([&] { return crit_lossy_gk(seed); }, 30.0);
    return out;
}

}  // namespace

std::vector<std::string> acceptance_suite_names() {
    return {"gaussian-lossless-ci", "fig2-reproduction",    "gaussian-continuity",
            "slb-consistency",      "gk-exactness",         "wyner-vs-oracle",
            "curve-properties",     "theorem4-extraction",  "theorem1-pipeline",
            "lossy-gk",             "determinism"};
}

std::string render_report(const std::vector<CriterionResult>& results) {
    std::ostringstream os;
    for (const CriterionResult& r : results)
        os << (r.pass ? "PASS" : "FAIL") << "  " << r.name << ": " << r.details << '\n';
    return os.str();
}

std::vector<CriterionResult> run_acceptance(const std::set<std::string>& only,
                                            std::uint64_t seed) {
    const bool full = only.empty();
    const bool want_det = full || only.count("determinism") > 0;
    std::set<std::string> core_only = only;
    core_only.erase("determinism");

    std::vector<CriterionResult> out;
    if (full || !core_only.empty()) out = run_core(full ? std::set<std::string>{} : core_only, seed);

    if (want_det) {
        auto t0 = std::chrono::steady_clock::now();
        // the comparison always covers the full suite; the first full run is
        // reused as the reference when available
        std::string a = full ? render_report(out) : render_report(run_core({}, seed));
        std::string b = render_report(run_core({}, seed));
        CriterionResult r;
        r.name = "determinism";
        r.pass = (a == b);
        r.details = r.pass ? "two full same-seed runs render byte-identical reports"
                           : "reports differ between two same-seed runs";
        r.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace gwci
