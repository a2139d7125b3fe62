#include "gwci/lossy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gwci/errors.hpp"
#include "gwci/gk.hpp"

namespace gwci {

namespace {

constexpr double kFloor = 1e-300;

double safe_log2(double v) { return std::log2(v > kFloor ? v : kFloor); }

// Inner problem state: minimize I(X,Y;U) + lam * I(Xh;Yh|U) over q(u|s),
// s = (xh,yh), with the test channel fixed.
struct LossyKernel {
    std::size_t nz, ns, nxh, nyh, nu;
    std::vector<double> pz;   // p(x,y) flat
    Mat pzs;                  // p(x,y) * P*(s|x,y)
    std::vector<double> ps;   // p(s)

    void eval(const Mat& q, double& mi, double& res) const {
        std::vector<double> mu(nu, 0.0);
        std::vector<double> msu(ns * nu, 0.0), mxu(nxh * nu, 0.0), myu(nyh * nu, 0.0);
        for (std::size_t s = 0; s < ns; ++s) {
            std::size_t xh = s / nyh, yh = s % nyh;
            for (std::size_t u = 0; u < nu; ++u) {
                double j = ps[s] * q(s, u);
                msu[s * nu + u] = j;
                mu[u] += j;
                mxu[xh * nu + u] += j;
                myu[yh * nu + u] += j;
            }
        }
        // I(X,Y;U) with w(u|z) = sum_s P*(s|z) q(u|s)
        double h_w = 0.0;
        for (std::size_t z = 0; z < nz; ++z) {
            for (std::size_t u = 0; u < nu; ++u) {
                double w = 0.0;
                for (std::size_t s = 0; s < ns; ++s) w += pzs(z, s) * q(s, u);
                h_w -= xlog2x(w);
            }
        }
        double h_z = entropy_bits(pz);
        mi = clamp_info(entropy_bits(mu) + h_z - h_w);
        res = clamp_info(entropy_bits(mxu) + entropy_bits(myu) - entropy_bits(mu) -
                         entropy_bits(msu));
    }

    Mat gradient(const Mat& q, double lam) const {
        std::vector<double> mu(nu, 0.0);
        std::vector<double> msu(ns * nu, 0.0), mxu(nxh * nu, 0.0), myu(nyh * nu, 0.0);
        for (std::size_t s = 0; s < ns; ++s) {
            std::size_t xh = s / nyh, yh = s % nyh;
            for (std::size_t u = 0; u < nu; ++u) {
                double j = ps[s] * q(s, u);
                msu[s * nu + u] = j;
                mu[u] += j;
                mxu[xh * nu + u] += j;
                myu[yh * nu + u] += j;
            }
        }
        Mat w(nz, nu);
        for (std::size_t z = 0; z < nz; ++z)
            for (std::size_t u = 0; u < nu; ++u) {
                double v = 0.0;
                for (std::size_t s = 0; s < ns; ++s) v += pzs(z, s) * q(s, u);
                w(z, u) = v / std::max(pz[z], kFloor);  // w(u|z)
            }
        Mat g(ns, nu);
        for (std::size_t s = 0; s < ns; ++s) {
            std::size_t xh = s / nyh, yh = s % nyh;
            for (std::size_t u = 0; u < nu; ++u) {
                double g1 = 0.0;
                for (std::size_t z = 0; z < nz; ++z)
                    g1 += pzs(z, s) * (safe_log2(w(z, u)) - safe_log2(mu[u]));
                double g2 = ps[s] * (safe_log2(msu[s * nu + u]) + safe_log2(mu[u]) -
                                     safe_log2(mxu[xh * nu + u]) - safe_log2(myu[yh * nu + u]));
                g(s, u) = g1 + lam * g2;
            }
        }
        return g;
    }
};

struct LossyInner {
    Mat q;
    double mi = 0.0, res = 0.0;
    bool converged = false;
};

LossyInner descend(const LossyKernel& k, double lam, Mat q, int max_iters) {
    double mi, res;
    k.eval(q, mi, res);
    double f = mi + lam * res;
    double eta = 0.5;
    bool conv = false;
    for (int it = 0; it < max_iters; ++it) {
        Mat g = k.gradient(q, lam);
        Mat qn(k.ns, k.nu);
        for (std::size_t s = 0; s < k.ns; ++s) {
            double sum = 0.0;
            double scale = 1.0 / std::max(k.ps[s], 1e-12);
            for (std::size_t u = 0; u < k.nu; ++u) {
                qn(s, u) = q(s, u) * std::exp(std::clamp(-eta * g(s, u) * scale, -60.0, 60.0));
                sum += qn(s, u);
            }
            if (!std::isfinite(sum) || sum <= kFloor)
                for (std::size_t u = 0; u < k.nu; ++u) qn(s, u) = 1.0 / static_cast<double>(k.nu);
            else
                for (std::size_t u = 0; u < k.nu; ++u) qn(s, u) /= sum;
        }
        double mi2, res2;
        k.eval(qn, mi2, res2);
        double f2 = mi2 + lam * res2;
        if (f2 <= f + 1e-15) {
            conv = std::abs(f - f2) < 1e-13 * (1.0 + std::abs(f));
            q = std::move(qn);
            f = f2;
            mi = mi2;
            res = res2;
            if (conv) break;
            if (eta < 0.5) eta *= 1.5;
        } else {
            eta *= 0.5;
            if (eta < 1e-5) break;
        }
    }
    return {std::move(q), mi, res, conv};
}

}  // namespace

NDDist build_joint5(const JointPMF& pmf, const RDSolution& rd, const Mat& q) {
    NDDist base = pmf.to_dist("X", "Y");
    // split the product test channel into Xh then Yh axes
    const std::size_t nz = pmf.nx() * pmf.ny();
    const std::size_t nxh = rd.n_xhat, nyh = rd.n_yhat;
    if (rd.test_channel.rows != nz || rd.test_channel.cols != nxh * nyh)
        throw ShapeMismatchError("test channel shape mismatch");
    // P(xh | x,y) then P(yh | x,y,xh)
    Mat kx(nz, nxh);
    for (std::size_t z = 0; z < nz; ++z)
        for (std::size_t h = 0; h < nxh * nyh; ++h) kx(z, h / nyh) += rd.test_channel(z, h);
    std::vector<std::string> gxy{"X", "Y"};
    NDDist with_xh = base.compose(Axis::indexed("Xh", nxh), gxy, kx);
    Mat ky(nz * nxh, nyh);
    for (std::size_t z = 0; z < nz; ++z)
        for (std::size_t xh = 0; xh < nxh; ++xh) {
            double denom = kx(z, xh);
            for (std::size_t yh = 0; yh < nyh; ++yh) {
                double num = rd.test_channel(z, xh * nyh + yh);
                ky(z * nxh + xh, yh) = denom > kFloor ? num / denom
                                                      : (yh == 0 ? 1.0 : 0.0);
            }
        }
    std::vector<std::string> gxyxh{"X", "Y", "Xh"};
    NDDist with_yh = with_xh.compose(Axis::indexed("Yh", nyh), gxyxh, ky);
    if (q.rows != nxh * nyh) throw ShapeMismatchError("q rows != |Xh||Yh|");
    std::vector<std::string> gh{"Xh", "Yh"};
    return with_yh.compose(Axis::indexed("U", q.cols), gh, q);
}

LossyWynerResult lossy_wyner_ci(const JointPMF& pmf, [[maybe_unused]] const DistortionSpec& spec,
                                const RDSolution& rd, const SolverConfig& cfg) {
    LossyKernel k;
    k.nz = pmf.nx() * pmf.ny();
    k.ns = rd.n_xhat * rd.n_yhat;
    k.nxh = rd.n_xhat;
    k.nyh = rd.n_yhat;
    // cardinality bound: U lives on the reconstruction product space, +1
    k.nu = cfg.u_card > 0 ? static_cast<std::size_t>(cfg.u_card) : k.ns + 1;
    k.pz = pmf.p.a;
    k.pzs = Mat(k.nz, k.ns);
    for (std::size_t z = 0; z < k.nz; ++z)
        for (std::size_t s = 0; s < k.ns; ++s) k.pzs(z, s) = k.pz[z] * rd.test_channel(z, s);
    k.ps.assign(k.ns, 0.0);
    for (std::size_t z = 0; z < k.nz; ++z)
        for (std::size_t s = 0; s < k.ns; ++s) k.ps[s] += k.pzs(z, s);

    const std::vector<double> ladder{1, 2, 4, 8, 16, 32, 64, 128, 256};
    SplitMix64 rng(cfg.rng_seed ^ 0x6c6f737379ull);

    struct Run {
        double mi, res;
        Mat q;
    };
    std::vector<Run> runs;
    // per-lambda best Lagrangian value, for the lower bound
    std::vector<double> best_f(ladder.size(), std::numeric_limits<double>::infinity());

    auto run_one = [&](Mat q) {
        double mi = 0.0, res = 0.0;
        for (std::size_t li = 0; li < ladder.size(); ++li) {
            LossyInner r = descend(k, ladder[li], std::move(q), cfg.max_iters);
            q = std::move(r.q);
            mi = r.mi;
            res = r.res;
            best_f[li] = std::min(best_f[li], r.mi + ladder[li] * r.res);
        }
        runs.push_back({mi, res, std::move(q)});
    };

    for (int r = 0; r < std::max(cfg.restarts, 1); ++r) {
        Mat q(k.ns, k.nu);
        for (std::size_t s = 0; s < k.ns; ++s)
            rng.dirichlet_row({q.a.data() + s * k.nu, k.nu});
        run_one(std::move(q));
    }
    {
        // identity-style deterministic start
        Mat q(k.ns, k.nu);
        for (std::size_t s = 0; s < k.ns; ++s) q(s, s % k.nu) = 1.0;
        run_one(std::move(q));
    }

    auto better = [&](const Run& a, const Run& b) {
        bool fa = a.res <= cfg.tol, fb = b.res <= cfg.tol;
        if (fa != fb) return fa;
        if (fa) return a.mi < b.mi;
        return a.res < b.res;
    };
    std::size_t bi = 0;
    for (std::size_t i = 1; i < runs.size(); ++i)
        if (better(runs[i], runs[bi])) bi = i;

    LossyWynerResult out;
    out.value = runs[bi].mi;
    out.residual = runs[bi].res;
    out.q = runs[bi].q;
    out.rd = rd;
    out.converged = runs[bi].res <= cfg.tol;
    out.joint5 = build_joint5(pmf, rd, out.q);

    // epsilon-relaxation diagnostics
    double rate_from_joint = out.joint5.mutual_information({"X", "Y"}, {"Xh", "Yh"});
    double rate_gap = std::abs(rate_from_joint - rd.rate);
    double struct_res = out.joint5.conditional_mutual_information({"X", "Y"}, {"U"}, {"Xh", "Yh"});
    BoundsReport b;
    b.residuals["i_xhat_yhat_given_u"] = out.residual;
    b.residuals["i_xy_u_given_xhat_yhat"] = struct_res;  // structurally zero
    b.residuals["rate_gap"] = rate_gap;
    b.residuals["d1_slack"] = std::max(rd.d1_achieved - rd.d1_target, 0.0);
    b.residuals["d2_slack"] = std::max(rd.d2_achieved - rd.d2_target, 0.0);
    b.epsilon = std::max({out.residual, struct_res, rate_gap,
                          b.residuals["d1_slack"], b.residuals["d2_slack"]});
    double lower = 0.0;
    for (std::size_t li = 0; li < ladder.size(); ++li)
        lower = std::max(lower, best_f[li] - ladder[li] * b.epsilon);
    b.lower = std::min(lower, out.value);
    b.upper = out.value + ladder.back() * out.residual;
    out.bounds = std::move(b);
    return out;
}

LossyWynerResult lossy_wyner_ci(const JointPMF& pmf, const DistortionSpec& spec, double d1,
                                double d2, const SolverConfig& cfg, const RDConfig& rd_cfg) {
    RDSolution rd = joint_rd(pmf, spec, d1, d2, rd_cfg);
    return lossy_wyner_ci(pmf, spec, rd, cfg);
}

Corollary1Report check_corollary1(const NDDist& joint5, double tol) {
    Corollary1Report r;
    r.tol = tol;
    r.i_xh_yh_given_xyu =
        joint5.conditional_mutual_information({"Xh"}, {"Yh"}, {"X", "Y", "U"});
    r.i_xh_y_given_xu = joint5.conditional_mutual_information({"Xh"}, {"Y"}, {"X", "U"});
    r.i_yh_x_given_yu = joint5.conditional_mutual_information({"Yh"}, {"X"}, {"Y", "U"});
    r.pass = r.i_xh_yh_given_xyu <= tol && r.i_xh_y_given_xu <= tol && r.i_yh_x_given_yu <= tol;
    return r;
}

namespace {

// residual I(U;X|Xh) for a tilt q(u|j) against a marginal channel
double side_residual(const std::vector<double>& px, const Mat& wch,
                     const std::vector<std::size_t>& j_of, const Mat& q) {
    const std::size_t nx = px.size(), nh = wch.cols, nu = q.cols;
    std::vector<double> t(nx * nh * nu, 0.0);
    for (std::size_t x = 0; x < nx; ++x)
        for (std::size_t h = 0; h < nh; ++h)
            for (std::size_t u = 0; u < nu; ++u)
                t[(x * nh + h) * nu + u] = px[x] * wch(x, h) * q(j_of[x], u);
    std::vector<double> thu(nh * nu, 0.0), txh(nx * nh, 0.0), th(nh, 0.0);
    for (std::size_t x = 0; x < nx; ++x)
        for (std::size_t h = 0; h < nh; ++h)
            for (std::size_t u = 0; u < nu; ++u) {
                double v = t[(x * nh + h) * nu + u];
                thu[h * nu + u] += v;
                txh[x * nh + h] += v;
                th[h] += v;
            }
    // I(U;X|Xh) = H(U,Xh) + H(X,Xh) - H(Xh) - H(X,Xh,U)
    return clamp_info(entropy_bits(thu) + entropy_bits(txh) - entropy_bits(th) -
                      entropy_bits(t));
}

}  // namespace

LossyGKResult lossy_gk_ci(const JointPMF& pmf, const DistortionSpec& spec, double d1,
                          double d2, const SolverConfig& cfg, const RDConfig& rd_cfg) {
    LossyGKResult out;
    auto dec = ergodic_decomposition(pmf);
    const std::size_t nj = dec.components.size();
    const double h_j = entropy_bits(dec.j_pmf);
    if (nj <= 1) return out;  // J constant, value 0

    std::vector<double> px(pmf.nx(), 0.0), py(pmf.ny(), 0.0);
    for (std::size_t i = 0; i < pmf.nx(); ++i)
        for (std::size_t j = 0; j < pmf.ny(); ++j) {
            px[i] += pmf.p(i, j);
            py[j] += pmf.p(i, j);
        }
    MarginalRD mx = marginal_rd(px, spec.d_x, d1, rd_cfg);
    MarginalRD my = marginal_rd(py, spec.d_y, d2, rd_cfg);

    const std::size_t nu = nj;
    auto eval = [&](const Mat& q, double& mi, double& res) {
        std::vector<double> mu(nu, 0.0), mju(nj * nu, 0.0);
        for (std::size_t j = 0; j < nj; ++j)
            for (std::size_t u = 0; u < nu; ++u) {
                double v = dec.j_pmf[j] * q(j, u);
                mju[j * nu + u] = v;
                mu[u] += v;
            }
        mi = clamp_info(entropy_bits(mu) + entropy_bits(dec.j_pmf) - entropy_bits(mju));
        res = side_residual(px, mx.channel, dec.j_of_x, q) +
              side_residual(py, my.channel, dec.j_of_y, q);
    };

    const double rtol = cfg.tol;
    double best_feasible = 0.0;  // U = const is always feasible with value 0
    double best_res = 0.0;

    // candidate: U = J exactly
    {
        Mat q(nj, nu);
        for (std::size_t j = 0; j < nj; ++j) q(j, j) = 1.0;
        double mi, res;
        eval(q, mi, res);
        if (res <= rtol && mi > best_feasible) {
            best_feasible = mi;
            best_res = res;
        }
    }

    // multi-start mirror ascent on I(J;U) - kappa * residual, kappa ladder
    SplitMix64 rng(cfg.rng_seed ^ 0x676b6c6f737379ull);
    const double kappas[] = {1, 4, 16, 64, 256, 1024, 4096};
    const double fd_h = 1e-6;
    for (int rr = 0; rr < std::max(cfg.restarts, 1); ++rr) {
        Mat q(nj, nu);
        for (std::size_t j = 0; j < nj; ++j) rng.dirichlet_row({q.a.data() + j * nu, nu});
        for (double kap : kappas) {
            double mi, res;
            eval(q, mi, res);
            double g = mi - kap * res;
            double eta = 0.25;
            for (int it = 0; it < 400; ++it) {
                // numerical gradient in the q entries (tiny dimension)
                Mat grad(nj, nu);
                for (std::size_t j = 0; j < nj; ++j)
                    for (std::size_t u = 0; u < nu; ++u) {
                        Mat qp = q, qm = q;
                        qp(j, u) = std::min(qp(j, u) + fd_h, 1.0);
                        qm(j, u) = std::max(qm(j, u) - fd_h, 0.0);
                        double sp = 0.0, sm = 0.0;
                        for (std::size_t v = 0; v < nu; ++v) {
                            sp += qp(j, v);
                            sm += qm(j, v);
                        }
                        for (std::size_t v = 0; v < nu; ++v) {
                            qp(j, v) /= sp;
                            qm(j, v) /= sm;
                        }
                        double mip, resp, mim, resm;
                        eval(qp, mip, resp);
                        eval(qm, mim, resm);
                        grad(j, u) = ((mip - kap * resp) - (mim - kap * resm)) / (2 * fd_h);
                    }
                Mat qn(nj, nu);
                for (std::size_t j = 0; j < nj; ++j) {
                    double s = 0.0;
                    for (std::size_t u = 0; u < nu; ++u) {
                        qn(j, u) = q(j, u) * std::exp(std::clamp(eta * grad(j, u), -60.0, 60.0));
                        s += qn(j, u);
                    }
                    if (!std::isfinite(s) || s <= kFloor)
                        for (std::size_t u = 0; u < nu; ++u)
                            qn(j, u) = 1.0 / static_cast<double>(nu);
                    else
                        for (std::size_t u = 0; u < nu; ++u) qn(j, u) /= s;
                }
                double mi2, res2;
                eval(qn, mi2, res2);
                double g2 = mi2 - kap * res2;
                if (g2 >= g - 1e-14) {
                    bool done = std::abs(g2 - g) < 1e-11 * (1 + std::abs(g));
                    q = std::move(qn);
                    g = g2;
                    mi = mi2;
                    res = res2;
                    if (done) break;
                } else {
                    eta *= 0.5;
                    if (eta < 1e-4) break;
                }
            }
            if (res <= rtol && mi > best_feasible) {
                best_feasible = mi;
                best_res = res;
            }
        }
    }

    out.value = std::clamp(best_feasible, 0.0, h_j);
    out.residual = best_res;
    out.converged = true;
    return out;
}

}  // namespace gwci
