#include "gwci/pmf.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gwci/errors.hpp"

namespace gwci {

NDDist JointPMF::to_dist(const std::string& x_name, const std::string& y_name) const {
    return NDDist({Axis{x_name, x_labels}, Axis{y_name, y_labels}}, p.a);
}

double JointPMF::hx() const {
    std::vector<double> px(nx(), 0.0);
    for (std::size_t i = 0; i < nx(); ++i)
        for (std::size_t j = 0; j < ny(); ++j) px[i] += p(i, j);
    return entropy_bits(px);
}

double JointPMF::hy() const {
    std::vector<double> py(ny(), 0.0);
    for (std::size_t i = 0; i < nx(); ++i)
        for (std::size_t j = 0; j < ny(); ++j) py[j] += p(i, j);
    return entropy_bits(py);
}

double JointPMF::hxy() const { return entropy_bits(p.a); }

double JointPMF::ixy() const { return clamp_info(hx() + hy() - hxy()); }

JointPMF validate_and_trim(const Mat& raw, std::vector<std::string> x_labels,
                           std::vector<std::string> y_labels) {
    if (raw.rows == 0 || raw.cols == 0) throw ShapeMismatchError("empty matrix");
    if (x_labels.size() != raw.rows || y_labels.size() != raw.cols)
        throw ShapeMismatchError("label count does not match matrix shape");
    double sum = 0.0;
    for (double v : raw.a) {
        if (v < 0.0) throw NegativeEntryError("negative PMF entry");
        sum += v;
    }
    if (sum <= 0.0) throw AllZeroError("all PMF entries are zero");

    std::vector<std::size_t> keep_x, keep_y;
    for (std::size_t i = 0; i < raw.rows; ++i) {
        double r = 0.0;
        for (std::size_t j = 0; j < raw.cols; ++j) r += raw(i, j);
        if (r > 0.0) keep_x.push_back(i);
    }
    for (std::size_t j = 0; j < raw.cols; ++j) {
        double c = 0.0;
        for (std::size_t i = 0; i < raw.rows; ++i) c += raw(i, j);
        if (c > 0.0) keep_y.push_back(j);
    }

    JointPMF out;
    out.p = Mat(keep_x.size(), keep_y.size());
    for (std::size_t a = 0; a < keep_x.size(); ++a) {
        out.x_labels.push_back(x_labels[keep_x[a]]);
        for (std::size_t b = 0; b < keep_y.size(); ++b)
            out.p(a, b) = raw(keep_x[a], keep_y[b]) / sum;
    }
    for (std::size_t b = 0; b < keep_y.size(); ++b) out.y_labels.push_back(y_labels[keep_y[b]]);
    return out;
}

JointPMF make_dsbs(double crossover) {
    Mat m(2, 2);
    m(0, 0) = m(1, 1) = (1.0 - crossover) / 2.0;
    m(0, 1) = m(1, 0) = crossover / 2.0;
    return validate_and_trim(m, {"0", "1"}, {"0", "1"});
}

JointPMF make_uniform_diag(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0 / static_cast<double>(n);
    std::vector<std::string> lab;
    for (std::size_t i = 0; i < n; ++i) lab.push_back(std::to_string(i));
    return validate_and_trim(m, lab, lab);
}

JointPMF make_block_diagonal(const std::vector<std::size_t>& block_sizes,
                             const std::vector<double>& mass) {
    if (block_sizes.size() != mass.size())
        throw ShapeMismatchError("block_sizes and mass length mismatch");
    std::size_t n = 0;
    for (std::size_t b : block_sizes) n += b;
    Mat m(n, n);
    std::size_t off = 0;
    double total = 0.0;
    for (double w : mass) total += w;
    for (std::size_t k = 0; k < block_sizes.size(); ++k) {
        std::size_t b = block_sizes[k];
        double cell = mass[k] / total / static_cast<double>(b * b);
        for (std::size_t i = 0; i < b; ++i)
            for (std::size_t j = 0; j < b; ++j) m(off + i, off + j) = cell;
        off += b;
    }
    std::vector<std::string> lab;
    for (std::size_t i = 0; i < n; ++i) lab.push_back(std::to_string(i));
    return validate_and_trim(m, lab, lab);
}

JointPMF load_pmf_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid PMF document: ") + e.what());
    }
    if (!doc.contains("x_labels") || !doc.contains("y_labels") || !doc.contains("p"))
        throw ParseError("PMF document needs x_labels, y_labels, p");
    std::vector<std::string> xl, yl;
    try {
        xl = doc["x_labels"].get<std::vector<std::string>>();
        yl = doc["y_labels"].get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception&) {
        throw ParseError("x_labels / y_labels must be arrays of strings");
    }
    if (xl.empty() || yl.empty()) throw ParseError("empty alphabet");
    Mat m(xl.size(), yl.size());
    const auto& pj = doc["p"];
    if (!pj.is_array()) throw ParseError("p must be an array");
    try {
        if (!pj.empty() && pj[0].is_array()) {
            if (pj.size() != xl.size()) throw ParseError("p row count mismatch");
            for (std::size_t i = 0; i < xl.size(); ++i) {
                if (pj[i].size() != yl.size()) throw ParseError("p column count mismatch");
                for (std::size_t j = 0; j < yl.size(); ++j) m(i, j) = pj[i][j].get<double>();
            }
        } else {
            if (pj.size() != xl.size() * yl.size()) throw ParseError("flat p length mismatch");
            for (std::size_t k = 0; k < m.a.size(); ++k) m.a[k] = pj[k].get<double>();
        }
    } catch (const nlohmann::json::exception&) {
        throw ParseError("p entries must be numbers");
    }
    double sum = 0.0;
    for (double v : m.a) {
        if (v < 0.0) throw ParseError("negative PMF entry");
        if (!std::isfinite(v)) throw ParseError("non-finite PMF entry");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-6)
        throw ParseError("PMF sums to " + std::to_string(sum) + ", outside 1e-6 tolerance");
    return validate_and_trim(m, std::move(xl), std::move(yl));
}

JointPMF load_pmf_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open PMF file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return load_pmf_json(ss.str());
}

std::string pmf_to_json(const JointPMF& pmf) {
    nlohmann::json doc;
    doc["x_labels"] = pmf.x_labels;
    doc["y_labels"] = pmf.y_labels;
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < pmf.nx(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < pmf.ny(); ++j) row.push_back(pmf.p(i, j));
        rows.push_back(row);
    }
    doc["p"] = rows;
    return doc.dump(2);
}

}  // namespace gwci
