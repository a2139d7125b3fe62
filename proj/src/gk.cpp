#include "gwci/gk.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace gwci {

namespace {
struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), std::size_t{0});
    }
    std::size_t find(std::size_t v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};
}  // namespace

ErgodicDecomposition ergodic_decomposition(const JointPMF& pmf, double support_eps) {
    const std::size_t nx = pmf.nx(), ny = pmf.ny();
    // nodes: x in [0,nx), y in [nx, nx+ny)
    UnionFind uf(nx + ny);
    for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t j = 0; j < ny; ++j)
            if (pmf.p(i, j) > support_eps) uf.unite(i, nx + j);

    // component order: by smallest x index (roots are minima by construction)
    std::map<std::size_t, std::size_t> root_to_comp;
    ErgodicDecomposition out;
    for (std::size_t i = 0; i < nx; ++i) {
        std::size_t r = uf.find(i);
        auto it = root_to_comp.find(r);
        if (it == root_to_comp.end()) {
            it = root_to_comp.emplace(r, out.components.size()).first;
            out.components.emplace_back();
        }
        out.components[it->second].x_idx.push_back(i);
    }
    for (std::size_t j = 0; j < ny; ++j) {
        std::size_t r = uf.find(nx + j);
        auto it = root_to_comp.find(r);
        // trimmed input guarantees every y row has support, so the root is an x node
        if (it == root_to_comp.end()) {
            it = root_to_comp.emplace(r, out.components.size()).first;
            out.components.emplace_back();
        }
        out.components[it->second].y_idx.push_back(j);
    }

    out.j_pmf.assign(out.components.size(), 0.0);
    out.j_of_x.assign(nx, 0);
    out.j_of_y.assign(ny, 0);
    for (std::size_t c = 0; c < out.components.size(); ++c) {
        for (std::size_t i : out.components[c].x_idx) {
            out.j_of_x[i] = c;
            for (std::size_t j = 0; j < ny; ++j) out.j_pmf[c] += pmf.p(i, j);
        }
        for (std::size_t j : out.components[c].y_idx) out.j_of_y[j] = c;
    }
    return out;
}

double gk_common_information(const JointPMF& pmf, double support_eps) {
    auto dec = ergodic_decomposition(pmf, support_eps);
    return entropy_bits(dec.j_pmf);
}

}  // namespace gwci
