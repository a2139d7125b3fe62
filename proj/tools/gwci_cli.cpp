// gwci command line: discrete / gaussian / lossy-discrete / verify.
//
// exit codes: 0 ok, 1 acceptance failure, 2 input error, 3 non-convergence
// (partial output retained), 4 infeasible distortion.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gwci/csv.hpp"
#include "gwci/errors.hpp"
#include "gwci/gaussian.hpp"
#include "gwci/gk.hpp"
#include "gwci/gw.hpp"
#include "gwci/lossy.hpp"
#include "gwci/pmf.hpp"
#include "gwci/rd.hpp"
#include "gwci/solver.hpp"
#include "gwci/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAcceptFail = 1;
constexpr int kExitInput = 2;
constexpr int kExitNotConverged = 3;
constexpr int kExitInfeasible = 4;

std::vector<double> parse_grid(const std::string& s) {
    // start:stop:step or comma-separated values
    std::vector<double> out;
    if (s.find(':') != std::string::npos) {
        double a, b, h;
        if (std::sscanf(s.c_str(), "%lf:%lf:%lf", &a, &b, &h) != 3 || h <= 0)
            throw gwci::BadParameterError("grid must be start:stop:step");
        for (double v = a; v <= b + 1e-12; v += h) out.push_back(v);
    } else {
        std::size_t pos = 0;
        while (pos < s.size()) {
            std::size_t next = s.find(',', pos);
            if (next == std::string::npos) next = s.size();
            out.push_back(std::stod(s.substr(pos, next - pos)));
            pos = next + 1;
        }
    }
    if (out.empty()) throw gwci::BadParameterError("empty grid");
    for (std::size_t i = 1; i < out.size(); ++i)
        if (out[i] <= out[i - 1]) throw gwci::BadParameterError("grid must be strictly increasing");
    return out;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw gwci::ParseError("cannot write " + path);
    out << text;
}

int cmd_discrete(const std::string& pmf_file, const std::string& out_prefix,
                 gwci::SolverConfig cfg, double oracle_step) {
    gwci::JointPMF pmf = gwci::load_pmf_file(pmf_file);
    std::printf("source: |X|=%zu |Y|=%zu\n", pmf.nx(), pmf.ny());
    std::printf("H(X)      = %s bits\n", gwci::fmt9(pmf.hx()).c_str());
    std::printf("H(Y)      = %s bits\n", gwci::fmt9(pmf.hy()).c_str());
    std::printf("H(X,Y)    = %s bits\n", gwci::fmt9(pmf.hxy()).c_str());
    std::printf("I(X;Y)    = %s bits\n", gwci::fmt9(pmf.ixy()).c_str());
    std::printf("C_GK      = %s bits (exact, %zu ergodic components)\n",
                gwci::fmt9(gwci::gk_common_information(pmf)).c_str(),
                gwci::ergodic_decomposition(pmf).components.size());

    gwci::WynerResult w = gwci::wyner_ci(pmf, cfg);
    std::printf("C_W       = %s bits (solver, residual %s%s%s)\n",
                gwci::fmt9(w.value).c_str(), gwci::fmt9(w.residual).c_str(),
                w.converged ? "" : ", NOT CONVERGED",
                w.multiple_optima ? ", multiple optima" : "");
    if (pmf.nx() * pmf.ny() <= 4) {
        gwci::OracleCurve oc = gwci::oracle_c_curve(pmf, 2, oracle_step);
        std::printf("C_W oracle~ %s bits (grid step %s, exact-Markov witness %s)\n",
                    gwci::fmt9(oc.r0_value).c_str(), gwci::fmt9(oracle_step).c_str(),
                    gwci::fmt9(oc.exact_zero_value).c_str());
    }

    auto cp = gwci::c_curve(pmf, cfg);
    auto kp = gwci::k_curve(pmf, cfg);
    write_file(out_prefix + "c_curve.csv", gwci::curve_csv(cp));
    write_file(out_prefix + "k_curve.csv", gwci::curve_csv(kp));
    write_file(out_prefix + "tradeoff.csv",
               gwci::tradeoff_csv(gwci::transmit_receive_tradeoff(cp, kp, pmf)));
    std::printf("wrote %sc_curve.csv, %sk_curve.csv, %stradeoff.csv\n", out_prefix.c_str(),
                out_prefix.c_str(), out_prefix.c_str());
    std::printf("theorem-4 extraction: C_GK~ %s, C_W~ %s\n",
                gwci::fmt9(gwci::gk_from_curve(cp)).c_str(),
                gwci::fmt9(gwci::wyner_from_curve(kp)).c_str());

    bool conv = w.converged;
    for (const auto& p : cp) conv = conv && p.converged;
    return conv ? kExitOk : kExitNotConverged;
}

int cmd_gaussian(double rho, double d2, const std::vector<double>& d1_grid,
                 const std::string& out_path) {
    gwci::GaussianSource src(rho);
    gwci::Fig2Curve curve = gwci::fig2_curve(src, d2, d1_grid);
    std::printf("rho = %s, D2 = %s\n", gwci::fmt9(src.rho).c_str(), gwci::fmt9(d2).c_str());
    std::printf("lossless C_W = %s bits\n",
                gwci::fmt9(gwci::gaussian_wyner_ci_lossless(src)).c_str());
    std::printf("plateau end A: D1 = %s\n", gwci::fmt9(curve.point_a).c_str());
    std::printf("all-shared B : D1 = %s\n", gwci::fmt9(curve.point_b).c_str());
    std::string csv = gwci::gaussian_csv(src, d2, d1_grid);
    if (out_path.empty()) {
        std::fputs(csv.c_str(), stdout);
    } else {
        write_file(out_path, csv);
        std::printf("wrote %s\n", out_path.c_str());
    }
    return kExitOk;
}

int cmd_lossy_discrete(const std::string& pmf_file, double d1, double d2,
                       const std::vector<double>& d_grid, const std::string& out_path,
                       gwci::SolverConfig cfg) {
    gwci::JointPMF pmf = gwci::load_pmf_file(pmf_file);
    gwci::DistortionSpec spec = gwci::DistortionSpec::hamming(pmf.nx(), pmf.ny());

    std::vector<gwci::LossySweepRow> rows;
    bool conv = true;
    std::vector<std::pair<double, double>> targets;
    if (d_grid.empty()) {
        targets.emplace_back(d1, d2);
    } else {
        for (double d : d_grid) targets.emplace_back(d, d);
    }
    for (auto [t1, t2] : targets) {
        gwci::RDSolution rd = gwci::joint_rd(pmf, spec, t1, t2);
        gwci::LossyWynerResult lw = gwci::lossy_wyner_ci(pmf, spec, rd, cfg);
        conv = conv && rd.converged && lw.converged;
        rows.push_back({t1, t2, rd.rate, lw.value, lw.bounds.lower, lw.bounds.upper,
                        lw.bounds.epsilon});
        if (targets.size() == 1) {
            std::printf("R_XY(D1,D2)  = %s bits (d achieved %s, %s)\n",
                        gwci::fmt9(rd.rate).c_str(), gwci::fmt9(rd.d1_achieved).c_str(),
                        gwci::fmt9(rd.d2_achieved).c_str());
            std::printf("lossy C_W    = %s bits (residual %s%s)\n",
                        gwci::fmt9(lw.value).c_str(), gwci::fmt9(lw.residual).c_str(),
                        lw.converged ? "" : ", NOT CONVERGED");
            std::printf("bracket      = [%s, %s], epsilon %s\n",
                        gwci::fmt9(lw.bounds.lower).c_str(),
                        gwci::fmt9(lw.bounds.upper).c_str(),
                        gwci::fmt9(lw.bounds.epsilon).c_str());
            auto rep = gwci::check_corollary1(lw.joint5, 1e-3);
            std::printf("factorization residuals = %s, %s, %s (%s)\n",
                        gwci::fmt9(rep.i_xh_yh_given_xyu).c_str(),
                        gwci::fmt9(rep.i_xh_y_given_xu).c_str(),
                        gwci::fmt9(rep.i_yh_x_given_yu).c_str(),
                        rep.pass ? "pass" : "above tolerance");
            auto pt = gwci::lossy_point(lw.joint5, spec);
            std::printf("GW point     = (%s, %s, %s), Pangloss gap %s\n",
                        gwci::fmt9(pt.point.r0).c_str(), gwci::fmt9(pt.point.r1).c_str(),
                        gwci::fmt9(pt.point.r2).c_str(),
                        gwci::fmt9(gwci::pangloss_gap(pt.point, rd.rate)).c_str());
            gwci::LossyGKResult gk = gwci::lossy_gk_ci(pmf, spec, t1, t2, cfg);
            std::printf("lossy C_GK   = %s bits (J-restricted auxiliary)\n",
                        gwci::fmt9(gk.value).c_str());
        }
    }
    std::string csv = gwci::lossy_sweep_csv(rows);
    if (out_path.empty()) {
        std::fputs(csv.c_str(), stdout);
    } else {
        write_file(out_path, csv);
        std::printf("wrote %s\n", out_path.c_str());
    }
    return conv ? kExitOk : kExitNotConverged;
}

int cmd_verify(const std::vector<std::string>& only, std::uint64_t seed,
               const std::string& out_path) {
    std::set<std::string> names(only.begin(), only.end());
    auto known = gwci::acceptance_suite_names();
    for (const std::string& n : names)
        if (std::find(known.begin(), known.end(), n) == known.end())
            throw gwci::BadParameterError("unknown suite '" + n + "'");
    auto results = gwci::run_acceptance(names, seed);
    std::string report = gwci::render_report(results);
    std::fputs(report.c_str(), stdout);
    if (!out_path.empty()) write_file(out_path, report);
    for (const auto& r : results)
        if (!r.pass) return kExitAcceptFail;
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"common-information landscape of correlated source pairs"};
    app.require_subcommand(1);

    std::string pmf_file, out_prefix, out_path, d1_grid_str = "", only_str;
    double rho = 0.5, d1 = 0.0, d2 = 0.0;
    std::uint64_t seed = 0;
    gwci::SolverConfig cfg;
    std::string lambda_grid_str;
    double oracle_step = 0.04;
    std::vector<std::string> only;

    auto* disc = app.add_subcommand("discrete", "lossless quantities of a finite joint PMF");
    disc->add_option("pmf", pmf_file, "PMF document (JSON)")->required();
    disc->add_option("--out", out_prefix, "output prefix for CSV files");
    disc->add_option("--restarts", cfg.restarts, "solver restarts");
    disc->add_option("--seed", seed, "RNG seed");
    disc->add_option("--lambda-grid", lambda_grid_str, "start:stop:step or comma list");
    disc->add_option("--oracle-step", oracle_step, "grid step for the brute-force oracle");

    auto* gauss = app.add_subcommand("gaussian", "bivariate Gaussian closed forms");
    gauss->add_option("--rho", rho, "correlation coefficient in [0,1)")->required();
    gauss->add_option("--d2", d2, "fixed D2")->default_val(0.2);
    gauss->add_option("--d1-grid", d1_grid_str, "D1 grid start:stop:step")
        ->default_val("0.01:0.99:0.01");
    gauss->add_option("--out", out_path, "CSV output path (stdout if omitted)");

    auto* lossy = app.add_subcommand("lossy-discrete", "joint RD and lossy CI under Hamming");
    lossy->add_option("pmf", pmf_file, "PMF document (JSON)")->required();
    lossy->add_option("--d1", d1, "distortion target for X");
    lossy->add_option("--d2", d2, "distortion target for Y");
    std::string d_grid_str;
    lossy->add_option("--d-grid", d_grid_str, "sweep D1=D2 over start:stop:step");
    lossy->add_option("--out", out_path, "CSV output path (stdout if omitted)");
    lossy->add_option("--restarts", cfg.restarts, "solver restarts");
    lossy->add_option("--seed", seed, "RNG seed");

    auto* verify = app.add_subcommand("verify", "run the acceptance suite");
    verify->add_option("--only", only, "run only the named suites");
    verify->add_option("--seed", seed, "RNG seed");
    verify->add_option("--out", out_path, "write the report to a file as well");
    auto* list = verify->add_flag("--list-suites", "print acceptance suite names");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (*list) {
            for (const auto& n : gwci::acceptance_suite_names()) std::printf("%s\n", n.c_str());
            return kExitOk;
        }
        cfg.rng_seed = seed;
        if (!lambda_grid_str.empty()) cfg.lagrange_grid = parse_grid(lambda_grid_str);
        if (disc->parsed()) {
            if (!out_prefix.empty() && out_prefix.back() != '/' && out_prefix.back() != '_')
                out_prefix += "_";
            return cmd_discrete(pmf_file, out_prefix, cfg, oracle_step);
        }
        if (gauss->parsed()) return cmd_gaussian(rho, d2, parse_grid(d1_grid_str), out_path);
        if (lossy->parsed()) {
            std::vector<double> dg;
            if (!d_grid_str.empty()) dg = parse_grid(d_grid_str);
            return cmd_lossy_discrete(pmf_file, d1, d2, dg, out_path, cfg);
        }
        if (verify->parsed()) return cmd_verify(only, seed, out_path);
    } catch (const gwci::InfeasibleError& e) {
        std::fprintf(stderr, "infeasible: %s\n", e.what());
        return kExitInfeasible;
    } catch (const gwci::ParseError& e) {
        std::fprintf(stderr, "input error: %s\n", e.what());
        return kExitInput;
    } catch (const gwci::BadParameterError& e) {
        std::fprintf(stderr, "input error: %s\n", e.what());
        return kExitInput;
    } catch (const gwci::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInput;
    }
    return kExitOk;
}
