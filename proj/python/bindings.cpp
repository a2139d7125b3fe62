#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gwci/csv.hpp"
#include "gwci/gaussian.hpp"
#include "gwci/gk.hpp"
#include "gwci/gw.hpp"
#include "gwci/lossy.hpp"
#include "gwci/pmf.hpp"
#include "gwci/rd.hpp"
#include "gwci/solver.hpp"
#include "gwci/verify.hpp"

namespace py = pybind11;
using namespace gwci;

namespace {

using Rows = std::vector<std::vector<double>>;

Mat rows_to_mat(const Rows& rows) {
    if (rows.empty()) throw ShapeMismatchError("empty matrix");
    Mat m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols) throw ShapeMismatchError("ragged matrix");
        for (std::size_t j = 0; j < m.cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

Rows mat_to_rows(const Mat& m) {
    Rows out(m.rows, std::vector<double>(m.cols));
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) out[i][j] = m(i, j);
    return out;
}

JointPMF pmf_from_rows(const Rows& rows) {
    Mat m = rows_to_mat(rows);
    std::vector<std::string> xl, yl;
    for (std::size_t i = 0; i < m.rows; ++i) xl.push_back(std::to_string(i));
    for (std::size_t j = 0; j < m.cols; ++j) yl.push_back(std::to_string(j));
    return validate_and_trim(m, xl, yl);
}

SolverConfig cfg_from_kwargs(int restarts, int max_iters, double tol, std::uint64_t seed,
                             const std::vector<double>& lagrange_grid, int u_card) {
    SolverConfig cfg;
    cfg.restarts = restarts;
    cfg.max_iters = max_iters;
    cfg.tol = tol;
    cfg.rng_seed = seed;
    cfg.lagrange_grid = lagrange_grid;
    cfg.u_card = u_card;
    return cfg;
}

py::list curve_to_list(const std::vector<CurvePoint>& pts) {
    py::list out;
    for (const CurvePoint& p : pts) {
        py::dict d;
        d["excess_rate"] = p.excess_rate;
        d["shared_rate"] = p.shared_rate;
        d["lagrange_weight"] = p.lagrange_weight;
        d["residual"] = p.residual;
        d["converged"] = p.converged;
        out.append(d);
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Gray-Wyner common-information landscape (C++ core)";

    py::register_exception<Error>(m, "GwciError");

    m.def(
        "source_summary",
        [](const Rows& p) {
            JointPMF pmf = pmf_from_rows(p);
            py::dict d;
            d["hx"] = pmf.hx();
            d["hy"] = pmf.hy();
            d["hxy"] = pmf.hxy();
            d["ixy"] = pmf.ixy();
            d["gk"] = gk_common_information(pmf);
            return d;
        },
        py::arg("p"), "Entropies, mutual information and exact C_GK of a joint PMF.");

    m.def(
        "ergodic_components",
        [](const Rows& p) {
            auto dec = ergodic_decomposition(pmf_from_rows(p));
            py::list comps;
            for (const auto& c : dec.components)
                comps.append(py::make_tuple(c.x_idx, c.y_idx));
            return py::make_tuple(comps, dec.j_pmf);
        },
        py::arg("p"), "Connected components of the support graph and the J distribution.");

    m.def(
        "wyner_ci",
        [](const Rows& p, int restarts, int max_iters, double tol, std::uint64_t seed,
           const std::vector<double>& lagrange_grid, int u_card) {
            JointPMF pmf = pmf_from_rows(p);
            WynerResult w = wyner_ci(
                pmf, cfg_from_kwargs(restarts, max_iters, tol, seed, lagrange_grid, u_card));
            py::dict d;
            d["value"] = w.value;
            d["residual"] = w.residual;
            d["converged"] = w.converged;
            d["multiple_optima"] = w.multiple_optima;
            d["q"] = mat_to_rows(w.q);
            return d;
        },
        py::arg("p"), py::arg("restarts") = 8, py::arg("max_iters") = 2000,
        py::arg("tol") = 1e-4, py::arg("seed") = 0,
        py::arg("lagrange_grid") = std::vector<double>{}, py::arg("u_card") = 0,
        "Wyner common information by Lagrangian continuation.");

    m.def(
        "c_curve",
        [](const Rows& p, int restarts, int max_iters, double tol, std::uint64_t seed,
           const std::vector<double>& lagrange_grid, int u_card) {
            return curve_to_list(c_curve(
                pmf_from_rows(p),
                cfg_from_kwargs(restarts, max_iters, tol, seed, lagrange_grid, u_card)));
        },
        py::arg("p"), py::arg("restarts") = 8, py::arg("max_iters") = 2000,
        py::arg("tol") = 1e-4, py::arg("seed") = 0,
        py::arg("lagrange_grid") = std::vector<double>{}, py::arg("u_card") = 0,
        "Transmit tradeoff curve (excess rate vs shared rate).");

    m.def(
        "k_curve",
        [](const Rows& p, int restarts, int max_iters, double tol, std::uint64_t seed,
           const std::vector<double>& lagrange_grid, int u_card) {
            return curve_to_list(k_curve(
                pmf_from_rows(p),
                cfg_from_kwargs(restarts, max_iters, tol, seed, lagrange_grid, u_card)));
        },
        py::arg("p"), py::arg("restarts") = 8, py::arg("max_iters") = 2000,
        py::arg("tol") = 1e-4, py::arg("seed") = 0,
        py::arg("lagrange_grid") = std::vector<double>{}, py::arg("u_card") = 0,
        "Receive tradeoff curve (excess receive rate vs shared rate).");

    m.def(
        "oracle_c_curve",
        [](const Rows& p, int u_card, double grid_step) {
            OracleCurve oc = oracle_c_curve(pmf_from_rows(p), u_card, grid_step);
            py::dict d;
            d["r0_value"] = oc.r0_value;
            d["exact_zero_value"] = oc.exact_zero_value;
            d["evaluations"] = oc.evaluations;
            d["points"] = curve_to_list(oc.points);
            return d;
        },
        py::arg("p"), py::arg("u_card") = 2, py::arg("grid_step") = 0.04,
        "Brute-force grid reference for the transmit curve (|X||Y| <= 4).");

    m.def(
        "gk_from_curve",
        [](const Rows& p, int restarts, std::uint64_t seed, double slope_tol) {
            SolverConfig cfg;
            cfg.restarts = restarts;
            cfg.rng_seed = seed;
            return gk_from_curve(c_curve(pmf_from_rows(p), cfg), slope_tol);
        },
        py::arg("p"), py::arg("restarts") = 8, py::arg("seed") = 0,
        py::arg("slope_tol") = 5e-2, "C_GK recovered from the transmit-curve slope kink.");

    m.def(
        "wyner_from_curve",
        [](const Rows& p, int restarts, std::uint64_t seed, double slope_tol) {
            SolverConfig cfg;
            cfg.restarts = restarts;
            cfg.rng_seed = seed;
            return wyner_from_curve(k_curve(pmf_from_rows(p), cfg), slope_tol);
        },
        py::arg("p"), py::arg("restarts") = 8, py::arg("seed") = 0,
        py::arg("slope_tol") = 5e-2, "C_W recovered from the receive-curve slope kink.");

    m.def(
        "joint_rd",
        [](const Rows& p, double d1, double d2) {
            JointPMF pmf = pmf_from_rows(p);
            RDSolution rd =
                joint_rd(pmf, DistortionSpec::hamming(pmf.nx(), pmf.ny()), d1, d2);
            py::dict d;
            d["rate"] = rd.rate;
            d["d1_achieved"] = rd.d1_achieved;
            d["d2_achieved"] = rd.d2_achieved;
            d["converged"] = rd.converged;
            d["test_channel"] = mat_to_rows(rd.test_channel);
            return d;
        },
        py::arg("p"), py::arg("d1"), py::arg("d2"),
        "Joint rate-distortion function under per-letter Hamming distortion.");

    m.def(
        "lossy_wyner_ci",
        [](const Rows& p, double d1, double d2, int restarts, std::uint64_t seed) {
            JointPMF pmf = pmf_from_rows(p);
            SolverConfig cfg;
            cfg.restarts = restarts;
            cfg.rng_seed = seed;
            auto r = lossy_wyner_ci(pmf, DistortionSpec::hamming(pmf.nx(), pmf.ny()), d1, d2,
                                    cfg);
            py::dict d;
            d["value"] = r.value;
            d["residual"] = r.residual;
            d["converged"] = r.converged;
            d["rate"] = r.rd.rate;
            d["lower"] = r.bounds.lower;
            d["upper"] = r.bounds.upper;
            d["epsilon"] = r.bounds.epsilon;
            auto rep = check_corollary1(r.joint5, 1e-3);
            d["factorization_residuals"] = py::make_tuple(
                rep.i_xh_yh_given_xyu, rep.i_xh_y_given_xu, rep.i_yh_x_given_yu);
            return d;
        },
        py::arg("p"), py::arg("d1"), py::arg("d2"), py::arg("restarts") = 8,
        py::arg("seed") = 0, "Lossy Wyner CI with relaxation bracket and Markov residuals.");

    m.def(
        "lossy_gk_ci",
        [](const Rows& p, double d1, double d2, int restarts, std::uint64_t seed) {
            JointPMF pmf = pmf_from_rows(p);
            SolverConfig cfg;
            cfg.restarts = restarts;
            cfg.rng_seed = seed;
            auto r =
                lossy_gk_ci(pmf, DistortionSpec::hamming(pmf.nx(), pmf.ny()), d1, d2, cfg);
            py::dict d;
            d["value"] = r.value;
            d["residual"] = r.residual;
            d["j_restricted"] = r.j_restricted;
            return d;
        },
        py::arg("p"), py::arg("d1"), py::arg("d2"), py::arg("restarts") = 4,
        py::arg("seed") = 0, "Lossy Gacs-Korner CI (J-measurable auxiliary).");

    // Gaussian closed forms
    m.def("gaussian_joint_rd",
          [](double rho, double d1, double d2) {
              return gaussian_joint_rd(GaussianSource(rho), d1, d2);
          },
          py::arg("rho"), py::arg("d1"), py::arg("d2"));
    m.def("gaussian_wyner_ci_lossless",
          [](double rho) { return gaussian_wyner_ci_lossless(GaussianSource(rho)); },
          py::arg("rho"));
    m.def("gaussian_lossy_wyner_ci",
          [](double rho, double d1, double d2) {
              return gaussian_lossy_wyner_ci(GaussianSource(rho), d1, d2);
          },
          py::arg("rho"), py::arg("d1"), py::arg("d2"));
    m.def("gaussian_lossy_gk",
          [](double rho, double d1, double d2) {
              return gaussian_lossy_gk(GaussianSource(rho), d1, d2);
          },
          py::arg("rho"), py::arg("d1"), py::arg("d2"));
    m.def("classify_regime",
          [](double rho, double d1, double d2) {
              return std::string(regime_name(classify_regime(GaussianSource(rho), d1, d2)));
          },
          py::arg("rho"), py::arg("d1"), py::arg("d2"));
    m.def("gaussian_slb",
          [](double rho, double d1, double d2) {
              SLBResult s = gaussian_slb(GaussianSource(rho), d1, d2);
              return py::make_tuple(s.value, s.tight);
          },
          py::arg("rho"), py::arg("d1"), py::arg("d2"));

    m.def(
        "run_acceptance",
        [](const std::vector<std::string>& only, std::uint64_t seed) {
            std::set<std::string> names(only.begin(), only.end());
            auto results = run_acceptance(names, seed);
            py::list out;
            for (const auto& r : results)
                out.append(py::make_tuple(r.name, r.pass, r.details));
            return out;
        },
        py::arg("only") = std::vector<std::string>{}, py::arg("seed") = 0,
        "Run the acceptance suite; returns (name, pass, details) triples.");

    m.attr("__version__") = "0.1.0";
}
