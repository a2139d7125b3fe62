#include "gwci/nddist.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gwci {

Axis Axis::indexed(std::string name, std::size_t n) {
    Axis ax;
    ax.name = std::move(name);
    ax.labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) ax.labels.push_back(std::to_string(i));
    return ax;
}

NDDist::NDDist(std::vector<Axis> axes, std::vector<double> p)
    : axes_(std::move(axes)), p_(std::move(p)) {
    std::size_t total = 1;
    for (const Axis& ax : axes_) {
        if (ax.size() == 0) throw ShapeMismatchError("axis '" + ax.name + "' is empty");
        total *= ax.size();
    }
    if (total != p_.size())
        throw ShapeMismatchError("probability array size does not match axes");
    double sum = 0.0;
    for (double v : p_) {
        if (v < 0.0) throw NegativeEntryError("negative probability entry");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw ShapeMismatchError("distribution does not sum to 1");
    strides_.assign(axes_.size(), 1);
    for (std::size_t i = axes_.size(); i-- > 1;)
        strides_[i - 1] = strides_[i] * axes_[i].size();
}

std::size_t NDDist::axis_index(const std::string& name) const {
    for (std::size_t i = 0; i < axes_.size(); ++i)
        if (axes_[i].name == name) return i;
    throw UnknownAxisError("unknown axis '" + name + "'");
}

std::vector<std::size_t> NDDist::resolve(std::span<const std::string> names) const {
    if (names.empty()) throw UnknownAxisError("empty axis group");
    std::vector<std::size_t> idx;
    idx.reserve(names.size());
    for (const std::string& n : names) idx.push_back(axis_index(n));
    std::sort(idx.begin(), idx.end());
    if (std::adjacent_find(idx.begin(), idx.end()) != idx.end())
        throw OverlappingGroupsError("axis listed twice in one group");
    return idx;
}

std::vector<double> NDDist::marginal_values(const std::vector<std::size_t>& keep_idx) const {
    std::size_t out_size = 1;
    for (std::size_t k : keep_idx) out_size *= axes_[k].size();
    std::vector<double> out(out_size, 0.0);
    // out stride for each kept axis, in the kept order
    std::vector<std::size_t> out_stride(keep_idx.size(), 1);
    for (std::size_t i = keep_idx.size(); i-- > 1;)
        out_stride[i - 1] = out_stride[i] * axes_[keep_idx[i]].size();
    std::vector<std::size_t> coord(axes_.size(), 0);
    for (std::size_t flat = 0; flat < p_.size(); ++flat) {
        std::size_t o = 0;
        for (std::size_t i = 0; i < keep_idx.size(); ++i)
            o += coord[keep_idx[i]] * out_stride[i];
        out[o] += p_[flat];
        for (std::size_t d = axes_.size(); d-- > 0;) {
            if (++coord[d] < axes_[d].size()) break;
            coord[d] = 0;
        }
    }
    return out;
}

double NDDist::entropy(std::span<const std::string> axis_names) const {
    auto idx = resolve(axis_names);
    auto m = marginal_values(idx);
    return entropy_bits(m);
}

double NDDist::mutual_information(std::span<const std::string> group_a,
                                  std::span<const std::string> group_b) const {
    auto ia = resolve(group_a);
    auto ib = resolve(group_b);
    for (std::size_t x : ia)
        if (std::find(ib.begin(), ib.end(), x) != ib.end())
            throw OverlappingGroupsError("groups share axis '" + axes_[x].name + "'");
    std::vector<std::size_t> iab = ia;
    iab.insert(iab.end(), ib.begin(), ib.end());
    std::sort(iab.begin(), iab.end());
    double v = entropy_bits(marginal_values(ia)) + entropy_bits(marginal_values(ib)) -
               entropy_bits(marginal_values(iab));
    return clamp_info(v);
}

double NDDist::conditional_mutual_information(std::span<const std::string> group_a,
                                              std::span<const std::string> group_b,
                                              std::span<const std::string> group_c) const {
    auto ia = resolve(group_a);
    auto ib = resolve(group_b);
    auto ic = resolve(group_c);
    auto overlap = [](const std::vector<std::size_t>& u, const std::vector<std::size_t>& v) {
        for (std::size_t x : u)
            if (std::find(v.begin(), v.end(), x) != v.end()) return true;
        return false;
    };
    if (overlap(ia, ib) || overlap(ia, ic) || overlap(ib, ic))
        throw OverlappingGroupsError("axis groups must be pairwise disjoint");
    auto join = [](std::vector<std::size_t> u, const std::vector<std::size_t>& v) {
        u.insert(u.end(), v.begin(), v.end());
        std::sort(u.begin(), u.end());
        return u;
    };
    // I(A;B|C) = H(A,C) + H(B,C) - H(C) - H(A,B,C); 0 log 0 terms vanish
    double v = entropy_bits(marginal_values(join(ia, ic))) +
               entropy_bits(marginal_values(join(ib, ic))) -
               entropy_bits(marginal_values(ic)) -
               entropy_bits(marginal_values(join(join(ia, ib), ic)));
    return clamp_info(v);
}

NDDist NDDist::marginal(std::span<const std::string> keep) const {
    auto idx = resolve(keep);
    std::vector<Axis> out_axes;
    for (std::size_t k : idx) out_axes.push_back(axes_[k]);
    return NDDist(std::move(out_axes), marginal_values(idx));
}

NDDist NDDist::condition(const std::string& axis, std::size_t label_index) const {
    std::size_t d = axis_index(axis);
    if (label_index >= axes_[d].size())
        throw ShapeMismatchError("label index out of range for axis '" + axis + "'");
    std::vector<Axis> out_axes;
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < axes_.size(); ++i)
        if (i != d) {
            out_axes.push_back(axes_[i]);
            rest.push_back(i);
        }
    std::size_t out_size = p_.size() / axes_[d].size();
    std::vector<double> out(out_size, 0.0);
    std::vector<std::size_t> out_stride(rest.size(), 1);
    for (std::size_t i = rest.size(); i-- > 1;)
        out_stride[i - 1] = out_stride[i] * axes_[rest[i]].size();
    std::vector<std::size_t> coord(axes_.size(), 0);
    double mass = 0.0;
    for (std::size_t flat = 0; flat < p_.size(); ++flat) {
        if (coord[d] == label_index) {
            std::size_t o = 0;
            for (std::size_t i = 0; i < rest.size(); ++i) o += coord[rest[i]] * out_stride[i];
            out[o] += p_[flat];
            mass += p_[flat];
        }
        for (std::size_t k = axes_.size(); k-- > 0;) {
            if (++coord[k] < axes_[k].size()) break;
            coord[k] = 0;
        }
    }
    if (mass <= 0.0) throw AllZeroError("conditioning event has zero probability");
    for (double& v : out) v /= mass;
    return NDDist(std::move(out_axes), std::move(out));
}

NDDist NDDist::compose(const Axis& new_axis, std::span<const std::string> given,
                       const Mat& kernel) const {
    auto gidx = resolve(given);
    std::size_t gsize = 1;
    for (std::size_t k : gidx) gsize *= axes_[k].size();
    if (kernel.rows != gsize || kernel.cols != new_axis.size())
        throw ShapeMismatchError("kernel shape does not match given axes / new axis");
    std::vector<std::size_t> gstride(gidx.size(), 1);
    for (std::size_t i = gidx.size(); i-- > 1;)
        gstride[i - 1] = gstride[i] * axes_[gidx[i]].size();
    std::size_t nu = new_axis.size();
    std::vector<double> out(p_.size() * nu, 0.0);
    std::vector<std::size_t> coord(axes_.size(), 0);
    for (std::size_t flat = 0; flat < p_.size(); ++flat) {
        std::size_t g = 0;
        for (std::size_t i = 0; i < gidx.size(); ++i) g += coord[gidx[i]] * gstride[i];
        for (std::size_t u = 0; u < nu; ++u) out[flat * nu + u] = p_[flat] * kernel(g, u);
        for (std::size_t k = axes_.size(); k-- > 0;) {
            if (++coord[k] < axes_[k].size()) break;
            coord[k] = 0;
        }
    }
    std::vector<Axis> out_axes = axes_;
    out_axes.push_back(new_axis);
    return NDDist(std::move(out_axes), std::move(out));
}

}  // namespace gwci
