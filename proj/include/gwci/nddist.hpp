#pragma once

#include <span>
#include <string>
#include <vector>

#include "gwci/errors.hpp"
#include "gwci/util.hpp"

namespace gwci {

struct Axis {
    std::string name;
    std::vector<std::string> labels;

    std::size_t size() const { return labels.size(); }
    static Axis indexed(std::string name, std::size_t n);
};

// Dense joint distribution over a small product space, addressed by axis name.
// Immutable after construction; every operation returns a new value.
class NDDist {
  public:
    NDDist() : p_{1.0} {}  // zero-axis point mass
    NDDist(std::vector<Axis> axes, std::vector<double> p);

    const std::vector<Axis>& axes() const { return axes_; }
    const std::vector<double>& p() const { return p_; }
    std::size_t size() const { return p_.size(); }
    std::size_t axis_index(const std::string& name) const;

    double entropy(std::span<const std::string> axis_names) const;
    double mutual_information(std::span<const std::string> group_a,
                              std::span<const std::string> group_b) const;
    double conditional_mutual_information(std::span<const std::string> group_a,
                                          std::span<const std::string> group_b,
                                          std::span<const std::string> group_c) const;

    NDDist marginal(std::span<const std::string> keep) const;

    // p(rest | axis=index), normalized slice
    NDDist condition(const std::string& axis, std::size_t label_index) const;

    // Joint with a new axis appended: r(idx,u) = p(idx) * kernel(flat(given idx), u).
    // kernel rows are conditional PMFs indexed by the product of `given` axes.
    NDDist compose(const Axis& new_axis, std::span<const std::string> given,
                   const Mat& kernel) const;

    // convenience overloads
    double entropy(std::initializer_list<std::string> names) const {
        return entropy(std::span<const std::string>(names.begin(), names.size()));
    }
    double mutual_information(std::initializer_list<std::string> a,
                              std::initializer_list<std::string> b) const {
        return mutual_information(std::span<const std::string>(a.begin(), a.size()),
                                  std::span<const std::string>(b.begin(), b.size()));
    }
    double conditional_mutual_information(std::initializer_list<std::string> a,
                                          std::initializer_list<std::string> b,
                                          std::initializer_list<std::string> c) const {
        return conditional_mutual_information(
            std::span<const std::string>(a.begin(), a.size()),
            std::span<const std::string>(b.begin(), b.size()),
            std::span<const std::string>(c.begin(), c.size()));
    }
    NDDist marginal(std::initializer_list<std::string> keep) const {
        return marginal(std::span<const std::string>(keep.begin(), keep.size()));
    }

  private:
    std::vector<std::size_t> resolve(std::span<const std::string> names) const;
    std::vector<double> marginal_values(const std::vector<std::size_t>& keep_idx) const;

    std::vector<Axis> axes_;
    std::vector<double> p_;
    std::vector<std::size_t> strides_;
};

}  // namespace gwci
