#include "gwci/csv.hpp"

#include <cstdio>
#include <sstream>

namespace gwci {

std::string fmt9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

std::string curve_csv(const std::vector<CurvePoint>& points) {
    std::ostringstream os;
    os << "excess_rate_bits,shared_rate_bits,lagrange_weight,residual,converged\n";
    for (const CurvePoint& p : points)
        os << fmt9(p.excess_rate) << ',' << fmt9(p.shared_rate) << ','
           << fmt9(p.lagrange_weight) << ',' << fmt9(p.residual) << ','
           << (p.converged ? 1 : 0) << '\n';
    return os.str();
}

std::string tradeoff_csv(const std::vector<TradeoffPoint>& points) {
    std::ostringstream os;
    os << "transmit_rate_bits,receive_rate_bits\n";
    for (const TradeoffPoint& p : points)
        os << fmt9(p.transmit_rate) << ',' << fmt9(p.receive_rate) << '\n';
    return os.str();
}

std::string gaussian_csv(const GaussianSource& src, double d2,
                         const std::vector<double>& d1_grid) {
    std::ostringstream os;
    os << "d1,d2,regime,joint_rd_bits,lossy_ci_bits,slb_bits,slb_tight\n";
    for (double d1 : d1_grid) {
        SLBResult slb = gaussian_slb(src, d1, d2);
        os << fmt9(d1) << ',' << fmt9(d2) << ',' << regime_name(classify_regime(src, d1, d2))
           << ',' << fmt9(gaussian_joint_rd(src, d1, d2)) << ','
           << fmt9(gaussian_lossy_wyner_ci(src, d1, d2)) << ',' << fmt9(slb.value) << ','
           << (slb.tight ? 1 : 0) << '\n';
    }
    return os.str();
}

std::string region_csv(const std::vector<RegionRow>& rows) {
    std::ostringstream os;
    os << "r0,r1,r2,sum,d1,d2,witness_id\n";
    for (const RegionRow& r : rows)
        os << fmt9(r.r0) << ',' << fmt9(r.r1) << ',' << fmt9(r.r2) << ','
           << fmt9(r.r0 + r.r1 + r.r2) << ',' << fmt9(r.d1) << ',' << fmt9(r.d2) << ','
           << r.witness_id << '\n';
    return os.str();
}

std::string lossy_sweep_csv(const std::vector<LossySweepRow>& rows) {
    std::ostringstream os;
    os << "d1,d2,rate_bits,lossy_wyner_bits,lb,ub,epsilon\n";
    for (const LossySweepRow& r : rows)
        os << fmt9(r.d1) << ',' << fmt9(r.d2) << ',' << fmt9(r.rate_bits) << ','
           << fmt9(r.lossy_wyner_bits) << ',' << fmt9(r.lb) << ',' << fmt9(r.ub) << ','
           << fmt9(r.epsilon) << '\n';
    return os.str();
}

}  // namespace gwci
