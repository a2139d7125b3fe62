#pragma once

#include <string>
#include <vector>

#include "gwci/nddist.hpp"
#include "gwci/util.hpp"

namespace gwci {

// Finite joint source distribution p(x,y) with labeled alphabets.
// Always normalized; trimmed variants have full marginal support.
struct JointPMF {
    std::vector<std::string> x_labels;
    std::vector<std::string> y_labels;
    Mat p;  // |X| x |Y|

    std::size_t nx() const { return x_labels.size(); }
    std::size_t ny() const { return y_labels.size(); }

    NDDist to_dist(const std::string& x_name = "X", const std::string& y_name = "Y") const;

    double hx() const;
    double hy() const;
    double hxy() const;
    double ixy() const;
};

// Normalizes, drops all-zero rows/columns (with label bookkeeping).
// Throws NegativeEntryError / AllZeroError.
JointPMF validate_and_trim(const Mat& raw, std::vector<std::string> x_labels,
                           std::vector<std::string> y_labels);

JointPMF make_dsbs(double crossover);
JointPMF make_uniform_diag(std::size_t n);
// two uniform blocks given as index ranges; block masses proportional to `mass`
JointPMF make_block_diagonal(const std::vector<std::size_t>& block_sizes,
                             const std::vector<double>& mass);

// PMF document format: JSON object with fields x_labels, y_labels, p
// (p row-major, nested rows or flat). Sum-to-1 error up to 1e-6 is
// renormalized; anything larger is a ParseError.
JointPMF load_pmf_json(const std::string& text);
JointPMF load_pmf_file(const std::string& path);
std::string pmf_to_json(const JointPMF& pmf);

}  // namespace gwci
