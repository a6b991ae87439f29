#pragma once

#include <map>
#include <string>

namespace stepkernel {

// Distribution over isomorphism classes of depth-`depth` neighborhoods, keyed
// by canonical tree code. `residual` is the mass not covered by the entries
// (enumeration cutoff for exact laws, truncated samples for empirical ones).
// Zero entries are omitted.
struct BallDistribution {
    int depth = 0;
    std::map<std::string, double> entries;
    double residual = 0.0;
};

// Half the sum of |p_a - p_b| over the union of keys, plus half the residual
// difference in absolute value. Requires equal depths.
double tv_distance(const BallDistribution& a, const BallDistribution& b);

}  // namespace stepkernel
