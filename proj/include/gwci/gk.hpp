#pragma once

#include <vector>

#include "gwci/pmf.hpp"

namespace gwci {

// Partition of the support into non-communicating blocks (the ergodic
// decomposition of p(x|y)); J is the block index variable.
struct ErgodicDecomposition {
    struct Component {
        std::vector<std::size_t> x_idx;
        std::vector<std::size_t> y_idx;
    };
    std::vector<Component> components;
    std::vector<double> j_pmf;

    // j(x) for each x index; components are ordered by smallest x index
    std::vector<std::size_t> j_of_x;
    std::vector<std::size_t> j_of_y;
};

inline constexpr double kSupportEps = 1e-12;

ErgodicDecomposition ergodic_decomposition(const JointPMF& pmf,
                                           double support_eps = kSupportEps);

// C_GK(X,Y) = H(J), exact.
double gk_common_information(const JointPMF& pmf, double support_eps = kSupportEps);

}  // namespace gwci
