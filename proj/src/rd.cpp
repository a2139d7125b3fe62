#include "gwci/rd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gwci/errors.hpp"

namespace gwci {

namespace {

constexpr double kLn2 = 0.6931471805599453;
constexpr double kFloor = 1e-300;

// One Lagrangian Blahut-Arimoto solve: W(zh|z) ~ r(zh) exp(-mu1 d1 - mu2 d2).
// Returns rate in bits and achieved distortions; warm-startable via r.
struct BAResult {
    double rate, d1, d2;
    bool converged;
};

BAResult ba_lagrangian(const std::vector<double>& pz, const Mat& d1m, const Mat& d2m,
                       double mu1, double mu2, Mat& w, std::vector<double>& r,
                       const RDConfig& cfg) {
    const std::size_t nz = pz.size(), nh = d1m.cols;
    Mat ex(nz, nh);
    for (std::size_t z = 0; z < nz; ++z)
        for (std::size_t h = 0; h < nh; ++h)
            ex(z, h) = std::exp(-mu1 * d1m(z, h) - mu2 * d2m(z, h));
    double prev = std::numeric_limits<double>::infinity();
    bool converged = false;
    double rate_nats = 0.0;
    for (int it = 0; it < cfg.ba_max_iters; ++it) {
        for (std::size_t z = 0; z < nz; ++z) {
            double s = 0.0;
            for (std::size_t h = 0; h < nh; ++h) {
                w(z, h) = r[h] * ex(z, h);
                s += w(z, h);
            }
            if (s > kFloor)
                for (std::size_t h = 0; h < nh; ++h) w(z, h) /= s;
            else
                for (std::size_t h = 0; h < nh; ++h) w(z, h) = 1.0 / static_cast<double>(nh);
        }
        std::fill(r.begin(), r.end(), 0.0);
        for (std::size_t z = 0; z < nz; ++z)
            for (std::size_t h = 0; h < nh; ++h) r[h] += pz[z] * w(z, h);
        if (it % 8 == 7 || it == cfg.ba_max_iters - 1) {
            rate_nats = 0.0;
            for (std::size_t z = 0; z < nz; ++z)
                for (std::size_t h = 0; h < nh; ++h)
                    if (w(z, h) > 0 && r[h] > 0)
                        rate_nats += pz[z] * w(z, h) * std::log(w(z, h) / r[h]);
            if (std::abs(rate_nats - prev) < cfg.rd_tol * kLn2 * 0.25 * (1.0 + std::abs(rate_nats))) {
                converged = true;
                break;
            }
            prev = rate_nats;
        }
    }
    double d1 = 0.0, d2 = 0.0;
    for (std::size_t z = 0; z < nz; ++z)
        for (std::size_t h = 0; h < nh; ++h) {
            d1 += pz[z] * w(z, h) * d1m(z, h);
            d2 += pz[z] * w(z, h) * d2m(z, h);
        }
    return {std::max(rate_nats, 0.0) / kLn2, d1, d2, converged};
}

double min_achievable(const std::vector<double>& pz, const Mat& dm) {
    double s = 0.0;
    for (std::size_t z = 0; z < pz.size(); ++z) {
        double m = std::numeric_limits<double>::infinity();
        for (std::size_t h = 0; h < dm.cols; ++h) m = std::min(m, dm(z, h));
        s += pz[z] * m;
    }
    return s;
}

double best_constant_distortion(const std::vector<double>& pz, const Mat& dm,
                                std::size_t* arg = nullptr) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t h = 0; h < dm.cols; ++h) {
        double s = 0.0;
        for (std::size_t z = 0; z < pz.size(); ++z) s += pz[z] * dm(z, h);
        if (s < best) {
            best = s;
            if (arg) *arg = h;
        }
    }
    return best;
}

}  // namespace

DistortionSpec DistortionSpec::hamming(std::size_t nx, std::size_t ny) {
    DistortionSpec s;
    s.name = "hamming";
    s.d_x = Mat(nx, nx, 1.0);
    s.d_y = Mat(ny, ny, 1.0);
    for (std::size_t i = 0; i < nx; ++i) s.d_x(i, i) = 0.0;
    for (std::size_t j = 0; j < ny; ++j) s.d_y(j, j) = 0.0;
    return s;
}

RDSolution joint_rd(const JointPMF& pmf, const DistortionSpec& spec, double d1, double d2,
                    const RDConfig& cfg) {
    if (d1 < 0 || d2 < 0) throw InfeasibleError("negative distortion target");
    const std::size_t nx = pmf.nx(), ny = pmf.ny();
    const std::size_t nxh = spec.d_x.cols, nyh = spec.d_y.cols;
    if (spec.d_x.rows != nx || spec.d_y.rows != ny)
        throw ShapeMismatchError("distortion matrix does not match source alphabets");
    const std::size_t nz = nx * ny, nh = nxh * nyh;

    // lift the two per-letter measures to the product alphabets
    Mat d1m(nz, nh), d2m(nz, nh);
    for (std::size_t z = 0; z < nz; ++z) {
        std::size_t x = z / ny, y = z % ny;
        for (std::size_t h = 0; h < nh; ++h) {
            std::size_t xh = h / nyh, yh = h % nyh;
            d1m(z, h) = spec.d_x(x, xh);
            d2m(z, h) = spec.d_y(y, yh);
        }
    }
    const std::vector<double>& pz = pmf.p.a;
    if (d1 < min_achievable(pz, d1m) - 1e-12 || d2 < min_achievable(pz, d2m) - 1e-12)
        throw InfeasibleError("distortion target below minimum achievable");

    RDSolution out;
    out.n_xhat = nxh;
    out.n_yhat = nyh;
    out.d1_target = d1;
    out.d2_target = d2;

    // zero-rate shortcut: both targets at/above the best constant reproduction
    std::size_t bx = 0, by = 0;
    double dmax1 = best_constant_distortion(pz, d1m, &bx);
    double dmax2 = best_constant_distortion(pz, d2m, &by);
    (void)bx;
    (void)by;
    if (d1 >= dmax1 - 1e-12 && d2 >= dmax2 - 1e-12) {
        // pick the single (xh, yh) pair minimizing the max slack
        std::size_t best_h = 0;
        double best_pen = std::numeric_limits<double>::infinity();
        for (std::size_t h = 0; h < nh; ++h) {
            double s1 = 0.0, s2 = 0.0;
            for (std::size_t z = 0; z < nz; ++z) {
                s1 += pz[z] * d1m(z, h);
                s2 += pz[z] * d2m(z, h);
            }
            double pen = std::max(s1 - d1, 0.0) + std::max(s2 - d2, 0.0) + 1e-9 * (s1 + s2);
            if (s1 <= d1 + 1e-12 && s2 <= d2 + 1e-12 && pen < best_pen) {
                best_pen = pen;
                best_h = h;
            }
        }
        out.test_channel = Mat(nz, nh);
        double a1 = 0.0, a2 = 0.0;
        for (std::size_t z = 0; z < nz; ++z) {
            out.test_channel(z, best_h) = 1.0;
            a1 += pz[z] * d1m(z, best_h);
            a2 += pz[z] * d2m(z, best_h);
        }
        out.rate = 0.0;
        out.d1_achieved = a1;
        out.d2_achieved = a2;
        return out;
    }

    Mat w(nz, nh);
    std::vector<double> r(nh, 1.0 / static_cast<double>(nh));

    auto inner = [&](double mu1) {
        // bisection on mu2 to meet d2 (for this mu1)
        std::vector<double> r2(nh, 1.0 / static_cast<double>(nh));
        Mat w2(nz, nh);
        BAResult res = ba_lagrangian(pz, d1m, d2m, mu1, 0.0, w2, r2, cfg);
        double mu2 = 0.0;
        if (res.d2 > d2 + cfg.dist_tol) {
            double lo = 0.0, hi = cfg.mu_max;
            for (int i = 0; i < cfg.bisect_iters; ++i) {
                double mid = 0.5 * (lo + hi);
                res = ba_lagrangian(pz, d1m, d2m, mu1, mid, w2, r2, cfg);
                if (res.d2 > d2)
                    lo = mid;
                else
                    hi = mid;
            }
            mu2 = hi;
            res = ba_lagrangian(pz, d1m, d2m, mu1, mu2, w2, r2, cfg);
        }
        return std::tuple<double, BAResult, Mat, std::vector<double>>(mu2, res, w2, r2);
    };

    auto [mu2_0, res0, w0, r0] = inner(0.0);
    double mu1 = 0.0, mu2 = mu2_0;
    BAResult res = res0;
    Mat wbest = w0;
    if (res0.d1 > d1 + cfg.dist_tol) {
        double lo = 0.0, hi = cfg.mu_max;
        for (int i = 0; i < cfg.bisect_iters; ++i) {
            double mid = 0.5 * (lo + hi);
            auto [m2, rr, ww, rrr] = inner(mid);
            if (rr.d1 > d1) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        mu1 = hi;
        auto [m2, rr, ww, rrr] = inner(mu1);
        mu2 = m2;
        res = rr;
        wbest = ww;
    }

    out.test_channel = std::move(wbest);
    out.rate = res.rate;
    out.d1_achieved = res.d1;
    out.d2_achieved = res.d2;
    out.mu1 = mu1;
    out.mu2 = mu2;
    out.converged = res.converged && res.d1 <= d1 + 8 * cfg.dist_tol &&
                    res.d2 <= d2 + 8 * cfg.dist_tol;
    return out;
}

MarginalRD marginal_rd(const std::vector<double>& p, const Mat& d, double target,
                       const RDConfig& cfg) {
    if (target < 0) throw InfeasibleError("negative distortion target");
    if (d.rows != p.size()) throw ShapeMismatchError("distortion rows != alphabet size");
    if (target < min_achievable(p, d) - 1e-12)
        throw InfeasibleError("distortion target below minimum achievable");
    const std::size_t nz = p.size(), nh = d.cols;
    Mat zero(nz, nh, 0.0);
    Mat w(nz, nh);
    std::vector<double> r(nh, 1.0 / static_cast<double>(nh));
    MarginalRD out;
    BAResult res = ba_lagrangian(p, d, zero, 0.0, 0.0, w, r, cfg);
    double mu = 0.0;
    if (res.d1 > target + cfg.dist_tol) {
        double lo = 0.0, hi = cfg.mu_max;
        for (int i = 0; i < cfg.bisect_iters; ++i) {
            double mid = 0.5 * (lo + hi);
            res = ba_lagrangian(p, d, zero, mid, 0.0, w, r, cfg);
            if (res.d1 > target)
                lo = mid;
            else
                hi = mid;
        }
        mu = hi;
        res = ba_lagrangian(p, d, zero, mu, 0.0, w, r, cfg);
    }
    out.channel = std::move(w);
    out.rate = res.rate;
    out.d_achieved = res.d1;
    out.mu = mu;
    return out;
}

double slb_discrete(double marginal_entropy_bits, const Mat& distortion, double d) {
    if (d < 0) throw InfeasibleError("negative distortion");
    if (distortion.rows != distortion.cols)
        throw UnsupportedDistortionError("SLB closed form needs a square Hamming matrix");
    for (std::size_t i = 0; i < distortion.rows; ++i)
        for (std::size_t j = 0; j < distortion.cols; ++j) {
            double want = (i == j) ? 0.0 : 1.0;
            if (std::abs(distortion(i, j) - want) > 1e-12)
                throw UnsupportedDistortionError("SLB closed form implemented for Hamming only");
        }
    const double m = static_cast<double>(distortion.rows);
    if (d == 0.0) return marginal_entropy_bits;
    double v = marginal_entropy_bits - binary_entropy(d) - d * std::log2(m - 1.0);
    return std::max(v, 0.0);
}

}  // namespace gwci
