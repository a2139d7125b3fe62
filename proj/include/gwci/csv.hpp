#pragma once

#include <string>
#include <vector>

#include "gwci/gaussian.hpp"
#include "gwci/solver.hpp"

namespace gwci {

// all CSV floats printed with 9 significant digits
std::string fmt9(double v);

std::string curve_csv(const std::vector<CurvePoint>& points);
std::string tradeoff_csv(const std::vector<TradeoffPoint>& points);
std::string gaussian_csv(const GaussianSource& src, double d2,
                         const std::vector<double>& d1_grid);

struct RegionRow {
    double r0, r1, r2, d1, d2;
    std::string witness_id;
};
std::string region_csv(const std::vector<RegionRow>& rows);

struct LossySweepRow {
    double d1, d2, rate_bits, lossy_wyner_bits, lb, ub, epsilon;
};
std::string lossy_sweep_csv(const std::vector<LossySweepRow>& rows);

}  // namespace gwci
