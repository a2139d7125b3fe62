#include "gwci/solver.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "gwci/errors.hpp"

namespace gwci {

namespace {

constexpr double kFloor = 1e-300;

double safe_log2(double v) { return std::log2(v > kFloor ? v : kFloor); }

// Flattened-array kernel for the lossless auxiliary-variable problems.
struct Kernel {
    std::size_t nx, ny, nu;
    std::vector<double> pxy;  // flat, length nx*ny

    std::size_t n() const { return nx * ny; }

    // I(X,Y;U) and I(X;Y|U) for q rows over u
    void eval(const Mat& q, double& mi_xy_u, double& cmi) const {
        std::vector<double> mu(nu, 0.0), pxu(nx * nu, 0.0), pyu(ny * nu, 0.0);
        double h_joint = 0.0;
        for (std::size_t z = 0; z < n(); ++z) {
            std::size_t x = z / ny, y = z % ny;
            for (std::size_t u = 0; u < nu; ++u) {
                double j = pxy[z] * q(z, u);
                mu[u] += j;
                pxu[x * nu + u] += j;
                pyu[y * nu + u] += j;
                h_joint -= xlog2x(j);
            }
        }
        double h_u = entropy_bits(mu);
        double h_xy = entropy_bits(pxy);
        double h_xu = entropy_bits(pxu);
        double h_yu = entropy_bits(pyu);
        mi_xy_u = clamp_info(h_u + h_xy - h_joint);
        cmi = clamp_info(h_xu + h_yu - h_u - h_joint);
    }

    // Alternating-minimization step for F = I(X,Y;U) + lam * I(X;Y|U):
    // q <- normalize( p(u) * (p(x|u) p(y|u))^(lam/(1+lam)) )
    Mat ba_step(const Mat& q, double lam) const {
        std::vector<double> mu(nu, 0.0), pxu(nx * nu, 0.0), pyu(ny * nu, 0.0);
        for (std::size_t z = 0; z < n(); ++z) {
            std::size_t x = z / ny, y = z % ny;
            for (std::size_t u = 0; u < nu; ++u) {
                double j = pxy[z] * q(z, u);
                mu[u] += j;
                pxu[x * nu + u] += j;
                pyu[y * nu + u] += j;
            }
        }
        double e = lam / (1.0 + lam);
        Mat out(n(), nu);
        for (std::size_t z = 0; z < n(); ++z) {
            std::size_t x = z / ny, y = z % ny;
            double s = 0.0;
            for (std::size_t u = 0; u < nu; ++u) {
                double m = mu[u];
                double v = 0.0;
                if (m > kFloor) {
                    double ax = pxu[x * nu + u] / m;
                    double ay = pyu[y * nu + u] / m;
                    v = m * std::pow(ax * ay, e);
                }
                out(z, u) = v;
                s += v;
            }
            if (s > kFloor) {
                for (std::size_t u = 0; u < nu; ++u) out(z, u) /= s;
            } else {
                for (std::size_t u = 0; u < nu; ++u) out(z, u) = 1.0 / static_cast<double>(nu);
            }
        }
        return out;
    }

    // gradient of F wrt q(u|z), used by the projected-gradient fallback
    Mat grad_f(const Mat& q, double lam) const {
        std::vector<double> mu(nu, 0.0), pxu(nx * nu, 0.0), pyu(ny * nu, 0.0);
        for (std::size_t z = 0; z < n(); ++z) {
            std::size_t x = z / ny, y = z % ny;
            for (std::size_t u = 0; u < nu; ++u) {
                double j = pxy[z] * q(z, u);
                mu[u] += j;
                pxu[x * nu + u] += j;
                pyu[y * nu + u] += j;
            }
        }
        Mat g(n(), nu);
        for (std::size_t z = 0; z < n(); ++z) {
            std::size_t x = z / ny, y = z % ny;
            for (std::size_t u = 0; u < nu; ++u) {
                double j = pxy[z] * q(z, u);
                double gi = safe_log2(q(z, u)) - safe_log2(mu[u]);
                double gr = safe_log2(mu[u]) + safe_log2(j) - safe_log2(pxu[x * nu + u]) -
                            safe_log2(pyu[y * nu + u]);
                g(z, u) = pxy[z] * (gi + lam * gr);
            }
        }
        return g;
    }
};

struct InnerResult {
    Mat q;
    double mi = 0.0;
    double cmi = 0.0;
    double defect = 0.0;  // last relative objective change
    bool converged = false;
};

InnerResult solve_lambda(const Kernel& k, double lam, Mat q, int max_iters) {
    double mi, cmi;
    k.eval(q, mi, cmi);
    double f = mi + lam * cmi;
    InnerResult best{q, mi, cmi, 1.0, false};
    int stall = 0;
    for (int it = 0; it < max_iters; ++it) {
        Mat qn = k.ba_step(q, lam);
        double mi2, cmi2;
        k.eval(qn, mi2, cmi2);
        double f2 = mi2 + lam * cmi2;
        if (f2 > f + 1e-14) {
            // damp toward the previous iterate; fall back to a gradient step
            bool ok = false;
            for (int h = 0; h < 6 && !ok; ++h) {
                for (std::size_t t = 0; t < qn.a.size(); ++t) qn.a[t] = 0.5 * (qn.a[t] + q.a[t]);
                k.eval(qn, mi2, cmi2);
                f2 = mi2 + lam * cmi2;
                ok = f2 <= f + 1e-14;
            }
            if (!ok) {
                Mat g = k.grad_f(q, lam);
                double eta = 0.25;
                for (int h = 0; h < 10; ++h, eta *= 0.5) {
                    qn = q;
                    for (std::size_t z = 0; z < k.n(); ++z) {
                        double s = 0.0;
                        for (std::size_t u = 0; u < k.nu; ++u) {
                            qn(z, u) = q(z, u) * std::exp(std::clamp(-eta * g(z, u), -60.0, 60.0));
                            s += qn(z, u);
                        }
                        if (!std::isfinite(s) || s <= kFloor)
                            for (std::size_t u = 0; u < k.nu; ++u)
                                qn(z, u) = 1.0 / static_cast<double>(k.nu);
                        else
                            for (std::size_t u = 0; u < k.nu; ++u) qn(z, u) /= s;
                    }
                    k.eval(qn, mi2, cmi2);
                    f2 = mi2 + lam * cmi2;
                    if (f2 <= f + 1e-14) break;
                }
                if (f2 > f + 1e-14) {
                    if (++stall > 3) break;
                    continue;
                }
            }
        }
        double defect = std::abs(f - f2) / (1.0 + std::abs(f2));
        q = std::move(qn);
        f = f2;
        best = InnerResult{q, mi2, cmi2, defect, defect < 1e-12};
        if (best.converged) break;
    }
    return best;
}

Mat dirichlet_init(SplitMix64& rng, std::size_t rows, std::size_t cols) {
    Mat q(rows, cols);
    for (std::size_t z = 0; z < rows; ++z)
        rng.dirichlet_row({q.a.data() + z * cols, cols});
    return q;
}

Kernel make_kernel(const JointPMF& pmf, int u_card) {
    Kernel k;
    k.nx = pmf.nx();
    k.ny = pmf.ny();
    k.nu = u_card > 0 ? static_cast<std::size_t>(u_card) : k.nx * k.ny;
    k.pxy = pmf.p.a;
    return k;
}

// total variation between q's after canonical column ordering, for the
// multiple-optima flag (U relabeling is a symmetry)
double canonical_tv(const Kernel& k, const Mat& a, const Mat& b) {
    auto canon = [&](const Mat& q) {
        std::vector<std::vector<double>> cols(k.nu);
        for (std::size_t u = 0; u < k.nu; ++u) {
            double w = 0.0;
            std::vector<double> c(k.n());
            for (std::size_t z = 0; z < k.n(); ++z) {
                c[z] = q(z, u);
                w += k.pxy[z] * q(z, u);
            }
            c.push_back(w);
            cols[u] = std::move(c);
        }
        std::sort(cols.begin(), cols.end(), [](const auto& l, const auto& r) {
            if (std::abs(l.back() - r.back()) > 1e-9) return l.back() > r.back();
            return l < r;
        });
        return cols;
    };
    auto ca = canon(a), cb = canon(b);
    double tv = 0.0;
    for (std::size_t u = 0; u < k.nu; ++u)
        for (std::size_t z = 0; z < k.n(); ++z)
            tv += k.pxy[z] * std::abs(ca[u][z] - cb[u][z]);
    return 0.5 * tv;
}

// restricted growth strings = set partitions of {0..n-1}
void for_each_partition(std::size_t n, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> a(n, 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int mx) {
        if (i == n) {
            fn(a);
            return;
        }
        for (int v = 0; v <= mx + 1; ++v) {
            a[i] = v;
            rec(i + 1, std::max(mx, v));
        }
    };
    rec(0, -1);
}

}  // namespace

std::vector<double> SolverConfig::default_lagrange_grid() {
    std::vector<double> g{0.5, 0.75};
    const int n = 18;
    for (int i = 0; i < n; ++i)
        g.push_back(1.005 * std::pow(64.0 / 1.005, static_cast<double>(i) / (n - 1)));
    return g;
}

AuxDecomposition make_aux_decomposition(const JointPMF& pmf, const Mat& q) {
    if (q.rows != pmf.nx() * pmf.ny()) throw ShapeMismatchError("q rows != |X||Y|");
    NDDist base = pmf.to_dist();
    std::vector<std::string> given{"X", "Y"};
    NDDist induced = base.compose(Axis::indexed("U", q.cols), given, q);
    return AuxDecomposition{q, static_cast<int>(q.cols), std::move(induced)};
}

WynerResult wyner_ci(const JointPMF& pmf, const SolverConfig& cfg) {
    Kernel k = make_kernel(pmf, cfg.u_card);
    SplitMix64 rng(cfg.rng_seed ^ 0x77796e6572ull);
    const double ladder[] = {1, 2, 4, 8, 16, 32, 64, 256};
    struct Run {
        double mi, cmi;
        Mat q;
    };
    std::vector<Run> runs;
    for (int r = 0; r < std::max(cfg.restarts, 1); ++r) {
        Mat q = dirichlet_init(rng, k.n(), k.nu);
        double mi = 0.0, cmi = 0.0;
        for (double lam : ladder) {
            InnerResult res = solve_lambda(k, lam, std::move(q), cfg.max_iters);
            q = std::move(res.q);
            mi = res.mi;
            cmi = res.cmi;
        }
        runs.push_back({mi, cmi, std::move(q)});
    }
    auto better = [&](const Run& a, const Run& b) {
        bool fa = a.cmi <= cfg.tol, fb = b.cmi <= cfg.tol;
        if (fa != fb) return fa;
        if (fa) return a.mi < b.mi;
        return a.cmi < b.cmi;
    };
    std::size_t bi = 0;
    for (std::size_t i = 1; i < runs.size(); ++i)
        if (better(runs[i], runs[bi])) bi = i;

    WynerResult out;
    out.value = runs[bi].mi;
    out.residual = runs[bi].cmi;
    out.q = runs[bi].q;
    out.converged = runs[bi].cmi <= cfg.tol;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        if (i == bi || runs[i].cmi > cfg.tol) continue;
        if (std::abs(runs[i].mi - out.value) <= 1e-4 &&
            canonical_tv(k, runs[i].q, out.q) > 1e-3) {
            out.multiple_optima = true;
            break;
        }
    }
    return out;
}

std::vector<CurvePoint> c_curve(const JointPMF& pmf, const SolverConfig& cfg) {
    Kernel k = make_kernel(pmf, cfg.u_card);
    std::vector<double> grid = cfg.lagrange_grid.empty() ? SolverConfig::default_lagrange_grid()
                                                         : cfg.lagrange_grid;
    SplitMix64 rng(cfg.rng_seed ^ 0x632d6375727665ull);

    struct Witness {
        double mi, cmi, defect;
        bool converged;
        Mat q;
    };
    std::vector<Witness> pool;
    for (double lam : grid) {
        for (int r = 0; r < std::max(cfg.restarts, 1); ++r) {
            InnerResult res = solve_lambda(k, lam, dirichlet_init(rng, k.n(), k.nu),
                                           cfg.max_iters);
            pool.push_back({res.mi, res.cmi, res.defect, res.converged, std::move(res.q)});
        }
    }
    // exact separate-encoding witness: constant U
    {
        Mat q(k.n(), k.nu);
        for (std::size_t z = 0; z < k.n(); ++z) q(z, 0) = 1.0;
        double mi, cmi;
        k.eval(q, mi, cmi);
        pool.push_back({mi, cmi, 0.0, true, std::move(q)});
    }

    // per-lambda argmin over the common witness pool; the selected points lie
    // on the lower convex envelope of the pool by construction
    std::vector<CurvePoint> pts;
    for (double lam : grid) {
        std::size_t bi = 0;
        double bf = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < pool.size(); ++i) {
            double f = pool[i].mi + lam * pool[i].cmi;
            if (f < bf - 1e-15 || (f < bf + 1e-15 && pool[i].cmi < pool[bi].cmi)) {
                bf = f;
                bi = i;
            }
        }
        CurvePoint p;
        p.excess_rate = pool[bi].cmi;
        p.shared_rate = pool[bi].mi;
        p.lagrange_weight = lam;
        p.residual = pool[bi].defect;
        p.converged = pool[bi].converged;
        p.q = pool[bi].q;
        pts.push_back(std::move(p));
    }
    // separate-encoding endpoint (R' = I(X;Y), C = 0), always present
    {
        const Witness& w = pool.back();
        CurvePoint p;
        p.excess_rate = w.cmi;
        p.shared_rate = w.mi;
        p.lagrange_weight = 0.0;
        p.residual = 0.0;
        p.converged = true;
        p.q = w.q;
        pts.push_back(std::move(p));
    }
    std::stable_sort(pts.begin(), pts.end(), [](const CurvePoint& a, const CurvePoint& b) {
        return a.excess_rate < b.excess_rate;
    });
    return pts;
}

namespace {

// K-curve statistics for q(w|x,y): K = I(X,Y;W), R'' = I(X;W|Y)+I(Y;W|X)
void k_eval(const Kernel& k, const Mat& q, double& kv, double& rpp) {
    std::vector<double> mw(k.nu, 0.0), pxw(k.nx * k.nu, 0.0), pyw(k.ny * k.nu, 0.0);
    std::vector<double> px(k.nx, 0.0), py(k.ny, 0.0);
    double h_joint = 0.0;
    for (std::size_t z = 0; z < k.n(); ++z) {
        std::size_t x = z / k.ny, y = z % k.ny;
        px[x] += k.pxy[z];
        py[y] += k.pxy[z];
        for (std::size_t u = 0; u < k.nu; ++u) {
            double j = k.pxy[z] * q(z, u);
            mw[u] += j;
            pxw[x * k.nu + u] += j;
            pyw[y * k.nu + u] += j;
            h_joint -= xlog2x(j);
        }
    }
    double h_w = entropy_bits(mw);
    double h_xy = entropy_bits(k.pxy);
    double mi_xyw = clamp_info(h_w + h_xy - h_joint);
    double mi_xw = clamp_info(entropy_bits(px) + h_w - entropy_bits(pxw));
    double mi_yw = clamp_info(entropy_bits(py) + h_w - entropy_bits(pyw));
    kv = mi_xyw;
    rpp = clamp_info(2.0 * mi_xyw - mi_xw - mi_yw);
}

// exponentiated-gradient ascent of K - mu * R''
void k_ascend(const Kernel& k, double mu, Mat& q, double& kv, double& rpp, int max_iters) {
    k_eval(k, q, kv, rpp);
    double g = kv - mu * rpp;
    double eta = 0.5;
    for (int it = 0; it < max_iters; ++it) {
        std::vector<double> mw(k.nu, 0.0), pxw(k.nx * k.nu, 0.0), pyw(k.ny * k.nu, 0.0);
        std::vector<double> px(k.nx, 0.0), py(k.ny, 0.0);
        for (std::size_t z = 0; z < k.n(); ++z) {
            std::size_t x = z / k.ny, y = z % k.ny;
            px[x] += k.pxy[z];
            py[y] += k.pxy[z];
            for (std::size_t u = 0; u < k.nu; ++u) {
                double j = k.pxy[z] * q(z, u);
                mw[u] += j;
                pxw[x * k.nu + u] += j;
                pyw[y * k.nu + u] += j;
            }
        }
        Mat qn(k.n(), k.nu);
        for (std::size_t z = 0; z < k.n(); ++z) {
            std::size_t x = z / k.ny, y = z % k.ny;
            double s = 0.0;
            for (std::size_t u = 0; u < k.nu; ++u) {
                double lq = safe_log2(q(z, u));
                double lm = safe_log2(mw[u]);
                double gx = safe_log2(pxw[x * k.nu + u] / std::max(px[x], kFloor));
                double gy = safe_log2(pyw[y * k.nu + u] / std::max(py[y], kFloor));
                double grad = (1.0 - 2.0 * mu) * (lq - lm) + mu * (gx - lm) + mu * (gy - lm);
                qn(z, u) = q(z, u) * std::exp(std::clamp(eta * grad, -60.0, 60.0));
                s += qn(z, u);
            }
            if (!std::isfinite(s) || s <= kFloor)
                for (std::size_t u = 0; u < k.nu; ++u) qn(z, u) = 1.0 / static_cast<double>(k.nu);
            else
                for (std::size_t u = 0; u < k.nu; ++u) qn(z, u) /= s;
        }
        double kv2, rpp2;
        k_eval(k, qn, kv2, rpp2);
        double g2 = kv2 - mu * rpp2;
        if (g2 >= g - 1e-14) {
            bool done = std::abs(g2 - g) < 1e-12 * (1.0 + std::abs(g2));
            q = std::move(qn);
            g = g2;
            kv = kv2;
            rpp = rpp2;
            if (done) break;
        } else {
            eta *= 0.5;
            if (eta < 1e-4) break;
        }
    }
}

}  // namespace

std::vector<CurvePoint> k_curve(const JointPMF& pmf, const SolverConfig& cfg) {
    Kernel k = make_kernel(pmf, cfg.u_card);
    std::vector<double> grid = cfg.lagrange_grid.empty() ? SolverConfig::default_lagrange_grid()
                                                         : cfg.lagrange_grid;
    SplitMix64 rng(cfg.rng_seed ^ 0x6b2d6375727665ull);

    struct Witness {
        double kv, rpp;
        Mat q;
    };
    std::vector<Witness> pool;

    // (a) deterministic maps W = f(X,Y), pruned to set partitions
    if (k.n() <= 9) {
        for_each_partition(k.n(), [&](const std::vector<int>& part) {
            Mat q(k.n(), k.nu);
            for (std::size_t z = 0; z < k.n(); ++z)
                q(z, static_cast<std::size_t>(part[z]) % k.nu) = 1.0;
            double kv, rpp;
            k_eval(k, q, kv, rpp);
            pool.push_back({kv, rpp, std::move(q)});
        });
    }
    // (b) multi-start ascent per Lagrange weight
    for (double mu : grid) {
        for (int r = 0; r < std::max(cfg.restarts, 1); ++r) {
            Mat q = dirichlet_init(rng, k.n(), k.nu);
            double kv, rpp;
            k_ascend(k, mu, q, kv, rpp, cfg.max_iters);
            pool.push_back({kv, rpp, std::move(q)});
        }
    }
    // exact endpoints: W = J and W = (X,Y)
    auto dec = ergodic_decomposition(pmf);
    {
        Mat q(k.n(), k.nu);
        for (std::size_t z = 0; z < k.n(); ++z) q(z, dec.j_of_x[z / k.ny] % k.nu) = 1.0;
        double kv, rpp;
        k_eval(k, q, kv, rpp);
        pool.push_back({kv, rpp, std::move(q)});
    }
    {
        Mat q(k.n(), k.nu);
        for (std::size_t z = 0; z < k.n(); ++z) q(z, z % k.nu) = 1.0;
        double kv, rpp;
        k_eval(k, q, kv, rpp);
        pool.push_back({kv, rpp, std::move(q)});
    }

    std::vector<CurvePoint> pts;
    for (double mu : grid) {
        std::size_t bi = 0;
        double bg = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < pool.size(); ++i) {
            double g = pool[i].kv - mu * pool[i].rpp;
            if (g > bg + 1e-15 || (g > bg - 1e-15 && pool[i].rpp < pool[bi].rpp)) {
                bg = g;
                bi = i;
            }
        }
        CurvePoint p;
        p.excess_rate = pool[bi].rpp;
        p.shared_rate = pool[bi].kv;
        p.lagrange_weight = mu;
        p.converged = true;
        p.q = pool[bi].q;
        pts.push_back(std::move(p));
    }
    // guaranteed endpoints: the J witness and the identity witness
    for (std::size_t i : {pool.size() - 2, pool.size() - 1}) {
        CurvePoint p;
        p.excess_rate = pool[i].rpp;
        p.shared_rate = pool[i].kv;
        p.lagrange_weight = 0.0;
        p.converged = true;
        p.q = pool[i].q;
        pts.push_back(std::move(p));
    }
    std::stable_sort(pts.begin(), pts.end(), [](const CurvePoint& a, const CurvePoint& b) {
        return a.excess_rate < b.excess_rate;
    });
    return pts;
}

double gk_from_curve(const std::vector<CurvePoint>& c_points, double slope_tol) {
    if (c_points.size() < 3) throw InsufficientPointsError("need >= 3 c-curve points");
    for (std::size_t i = 0; i + 1 < c_points.size(); ++i) {
        double dr = c_points[i + 1].excess_rate - c_points[i].excess_rate;
        if (dr < 1e-12) continue;
        double s = (c_points[i + 1].shared_rate - c_points[i].shared_rate) / dr;
        if (std::abs(s + 1.0) <= slope_tol) return c_points[i].shared_rate;
    }
    return 0.0;
}

double wyner_from_curve(const std::vector<CurvePoint>& k_points, double slope_tol) {
    if (k_points.size() < 3) throw InsufficientPointsError("need >= 3 k-curve points");
    for (std::size_t i = 0; i + 1 < k_points.size(); ++i) {
        double dr = k_points[i + 1].excess_rate - k_points[i].excess_rate;
        if (dr < 1e-12) continue;
        double s = (k_points[i + 1].shared_rate - k_points[i].shared_rate) / dr;
        if (std::abs(s - 1.0) <= slope_tol) return k_points[i].shared_rate;
    }
    // no unit-slope segment: C_W = H(X,Y), the top of the k-curve
    double mx = 0.0;
    for (const CurvePoint& p : k_points) mx = std::max(mx, p.shared_rate);
    return mx;
}

std::vector<TradeoffPoint> transmit_receive_tradeoff(const std::vector<CurvePoint>& c_points,
                                                     const std::vector<CurvePoint>& k_points,
                                                     const JointPMF& pmf) {
    if (c_points.empty()) throw EmptyCurveError("no transmit-curve points");
    const double hxy = pmf.hxy();
    const double hsum = pmf.hx() + pmf.hy();
    // the transmit sweep carries the envelope: R_t = H(X,Y)+R', min R_r = R_t + C(R').
    // receive-sweep points can only refine ties at an existing transmit rate.
    std::vector<TradeoffPoint> pts;
    for (const CurvePoint& p : c_points)
        pts.push_back({hxy + p.excess_rate, hxy + p.excess_rate + p.shared_rate});
    std::sort(pts.begin(), pts.end(), [](const TradeoffPoint& a, const TradeoffPoint& b) {
        return a.transmit_rate < b.transmit_rate;
    });
    std::vector<TradeoffPoint> out;
    for (const TradeoffPoint& p : pts) {
        if (!out.empty() && p.transmit_rate - out.back().transmit_rate < 1e-12)
            out.back().receive_rate = std::min(out.back().receive_rate, p.receive_rate);
        else
            out.push_back(p);
    }
    for (const CurvePoint& p : k_points) {
        double rt = hsum + p.excess_rate - p.shared_rate;
        double rr = hsum + p.excess_rate;
        for (TradeoffPoint& o : out)
            if (std::abs(o.transmit_rate - rt) < 1e-9)
                o.receive_rate = std::min(o.receive_rate, rr);
    }
    return out;
}

// ---------------------------------------------------------------------------
// brute-force oracle
// ---------------------------------------------------------------------------

namespace {

// per-row simplex grid: multiples of `step` over (u_card-1) free coordinates
std::vector<std::vector<double>> simplex_grid(int u_card, double step) {
    int kmax = static_cast<int>(std::lround(1.0 / step));
    std::vector<std::vector<double>> rows;
    if (u_card == 2) {
        for (int i = 0; i <= kmax; ++i) rows.push_back({i * step});
    } else {
        for (int i = 0; i <= kmax; ++i)
            for (int j = 0; i + j <= kmax; ++j) rows.push_back({i * step, j * step});
    }
    return rows;
}

struct OracleAccum {
    double bin_w;
    double rmax;
    std::vector<double> env_c, env_r;
    std::vector<std::vector<double>> env_q;  // free coords of the bin winner
    double exact_zero = std::numeric_limits<double>::infinity();

    OracleAccum(double w, double rm) : bin_w(w), rmax(rm) {
        std::size_t nb = static_cast<std::size_t>(rm / w) + 2;
        env_c.assign(nb, std::numeric_limits<double>::infinity());
        env_r.assign(nb, 0.0);
        env_q.assign(nb, {});
    }
    void add(double r, double c, const std::vector<double>& freeq) {
        if (r <= 1e-12 && c < exact_zero) exact_zero = c;
        if (r > rmax + bin_w) return;
        std::size_t b = static_cast<std::size_t>(r / bin_w);
        if (b >= env_c.size()) return;
        if (c < env_c[b]) {
            env_c[b] = c;
            env_r[b] = r;
            env_q[b] = freeq;
        }
    }

    // lower-hull vertices of the per-bin minima, as (r, c, q) triples
    std::vector<std::tuple<double, double, std::vector<double>>> hull_points() const {
        std::vector<std::tuple<double, double, std::vector<double>>> pts;
        for (std::size_t b = 0; b < env_c.size(); ++b)
            if (std::isfinite(env_c[b])) pts.emplace_back(env_r[b], env_c[b], env_q[b]);
        std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
            return std::get<0>(a) < std::get<0>(b);
        });
        std::vector<std::tuple<double, double, std::vector<double>>> hull;
        for (auto& p : pts) {
            while (hull.size() >= 2) {
                double r1 = std::get<0>(hull[hull.size() - 2]),
                       c1 = std::get<1>(hull[hull.size() - 2]);
                double r2 = std::get<0>(hull.back()), c2 = std::get<1>(hull.back());
                if ((c2 - c1) * (std::get<0>(p) - r1) >= (std::get<1>(p) - c1) * (r2 - r1))
                    hull.pop_back();
                else
                    break;
            }
            hull.push_back(std::move(p));
        }
        return hull;
    }
};

}  // namespace

OracleCurve oracle_c_curve(const JointPMF& pmf, int u_card, double grid_step,
                           int refine_rounds, int refine_factor) {
    const std::size_t n = pmf.nx() * pmf.ny();
    if (n > 4) throw TooLargeError("oracle_c_curve requires |X||Y| <= 4");
    if (u_card < 2 || u_card > 3) throw TooLargeError("oracle u_card must be 2 or 3");
    if (grid_step <= 0 || grid_step > 0.5) throw BadParameterError("grid_step out of range");

    const double ixy = pmf.ixy();
    const int ufree = u_card - 1;
    const std::size_t nu = static_cast<std::size_t>(u_card);
    const std::size_t nx = pmf.nx(), ny = pmf.ny();
    const double h_xy = pmf.hxy();
    std::size_t total_evals = 0;

    // fixed-size buffers; alphabets are at most 2x2 x u_card 3 here
    auto eval_free = [&](const std::vector<double>& freeq, double& r, double& c) {
        double mu[3] = {0, 0, 0};
        double pxu[12] = {0};
        double pyu[12] = {0};
        double h_joint = 0.0;
        for (std::size_t z = 0; z < n; ++z) {
            std::size_t x = z / ny, y = z % ny;
            double rest = 1.0;
            for (std::size_t u = 0; u < nu; ++u) {
                double qv = u + 1 < nu ? freeq[z * static_cast<std::size_t>(ufree) + u]
                                       : std::max(rest, 0.0);
                rest -= qv;
                double j = pmf.p.a[z] * qv;
                mu[u] += j;
                pxu[x * nu + u] += j;
                pyu[y * nu + u] += j;
                h_joint -= xlog2x(j);
            }
        }
        double h_u = 0.0, h_xu = 0.0, h_yu = 0.0;
        for (std::size_t u = 0; u < nu; ++u) h_u -= xlog2x(mu[u]);
        for (std::size_t t = 0; t < nx * nu; ++t) h_xu -= xlog2x(pxu[t]);
        for (std::size_t t = 0; t < ny * nu; ++t) h_yu -= xlog2x(pyu[t]);
        c = clamp_info(h_u + h_xy - h_joint);
        r = clamp_info(h_xu + h_yu - h_u - h_joint);
        ++total_evals;
    };

    auto rows0 = simplex_grid(u_card, grid_step);
    double total = 1.0;
    for (std::size_t z = 0; z < n; ++z) total *= static_cast<double>(rows0.size());
    if (total > 3e8) throw TooLargeError("oracle grid too large");

    double step = grid_step;
    const double bin_floor = std::max(ixy / 20000.0, 1e-9);
    OracleAccum acc(std::max(6.0 * step * step, bin_floor), ixy);

    // exhaustive coarse pass over all row combinations
    {
        std::vector<std::size_t> idx(n, 0);
        std::vector<double> freeq(n * static_cast<std::size_t>(ufree));
        bool more = true;
        while (more) {
            for (std::size_t z = 0; z < n; ++z)
                for (int f = 0; f < ufree; ++f)
                    freeq[z * static_cast<std::size_t>(ufree) + f] = rows0[idx[z]][f];
            double r, c;
            eval_free(freeq, r, c);
            acc.add(r, c, freeq);
            more = false;
            for (std::size_t d = n; d-- > 0;) {
                if (++idx[d] < rows0.size()) {
                    more = true;
                    break;
                }
                idx[d] = 0;
            }
        }
    }

    // refinement rounds: exhaustive sub-grids around the hull-vertex winners
    for (int round = 0; round < refine_rounds; ++round) {
        double sub = step / refine_factor;
        auto winners = acc.hull_points();
        if (winners.size() > 400) {
            // even subsample so both curve ends stay covered
            std::vector<std::tuple<double, double, std::vector<double>>> sub_w;
            for (std::size_t i = 0; i < 400; ++i)
                sub_w.push_back(winners[i * (winners.size() - 1) / 399]);
            winners = std::move(sub_w);
        }
        OracleAccum next(std::max(6.0 * sub * sub, bin_floor), ixy);
        next.exact_zero = acc.exact_zero;
        // carry every current bin minimum forward so the envelope never thins
        for (std::size_t b = 0; b < acc.env_c.size(); ++b)
            if (std::isfinite(acc.env_c[b]) && !acc.env_q[b].empty())
                next.add(acc.env_r[b], acc.env_c[b], acc.env_q[b]);

        const int span = refine_factor;
        const std::size_t dims = n * static_cast<std::size_t>(ufree);
        std::vector<double> freeq(dims);
        for (const auto& [wr, wc, wq] : winners) {
            if (wr > ixy + 1e-9) continue;
            std::vector<int> off(dims, -span);
            bool more = true;
            while (more) {
                bool valid = true;
                for (std::size_t t = 0; t < dims && valid; ++t) {
                    double v = wq[t] + off[t] * sub;
                    if (v < -1e-12 || v > 1.0 + 1e-12) valid = false;
                    freeq[t] = std::clamp(v, 0.0, 1.0);
                }
                if (valid && ufree == 2) {
                    for (std::size_t z = 0; z < n && valid; ++z)
                        if (freeq[z * 2] + freeq[z * 2 + 1] > 1.0 + 1e-12) valid = false;
                }
                if (valid) {
                    double r, c;
                    eval_free(freeq, r, c);
                    next.add(r, c, freeq);
                }
                more = false;
                for (std::size_t d = dims; d-- > 0;) {
                    if (++off[d] <= span) {
                        more = true;
                        break;
                    }
                    off[d] = -span;
                }
            }
        }
        step = sub;
        acc = std::move(next);
    }

    // envelope points -> lower convex hull
    std::vector<std::pair<double, double>> env;
    for (std::size_t b = 0; b < acc.env_c.size(); ++b)
        if (std::isfinite(acc.env_c[b])) env.emplace_back(acc.env_r[b], acc.env_c[b]);
    if (std::isfinite(acc.exact_zero)) env.emplace_back(0.0, acc.exact_zero);
    std::sort(env.begin(), env.end());
    std::vector<std::pair<double, double>> hull;
    for (const auto& pt : env) {
        while (hull.size() >= 2) {
            const auto& a = hull[hull.size() - 2];
            const auto& b = hull[hull.size() - 1];
            if ((b.second - a.second) * (pt.first - a.first) >=
                (pt.second - a.second) * (b.first - a.first))
                hull.pop_back();
            else
                break;
        }
        hull.push_back(pt);
    }

    OracleCurve out;
    out.evaluations = total_evals;
    out.exact_zero_value = std::isfinite(acc.exact_zero) ? acc.exact_zero : 0.0;
    for (const auto& [r, c] : hull) {
        CurvePoint p;
        p.excess_rate = r;
        p.shared_rate = c;
        p.converged = true;
        out.points.push_back(std::move(p));
    }

    // R'->0 value: every true slope is <= -1, so C(0) is the sup of C + R'
    // along the curve; scan the hull's steep section and cap with any
    // exactly-Markov witness
    const double r_floor = std::max(1e-9, 1.5 * step * step);
    double est = std::numeric_limits<double>::quiet_NaN();
    std::vector<std::pair<double, double>> scan;
    for (const auto& p : hull)
        if (p.first >= r_floor && p.first <= ixy + 1e-12) scan.push_back(p);
    for (std::size_t i = 0; i < scan.size(); ++i) {
        double v = scan[i].second + scan[i].first;
        if (std::isnan(est) || v > est) est = v;
        if (i + 1 < scan.size()) {
            double dr = scan[i + 1].first - scan[i].first;
            if (dr > 1e-15 && (scan[i + 1].second - scan[i].second) / dr > -0.95) break;
        }
    }
    if (std::isnan(est)) est = out.exact_zero_value;
    if (std::isfinite(acc.exact_zero)) est = std::min(est, acc.exact_zero);
    out.r0_value = est;
    return out;
}

}  // namespace gwci
