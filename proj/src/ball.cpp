#include "stepkernel/ball.hpp"

#include <cmath>
#include <stdexcept>

namespace stepkernel {

double tv_distance(const BallDistribution& a, const BallDistribution& b) {
    if (a.depth != b.depth)
        throw std::invalid_argument("tv_distance: distributions have different depths");
    double sum = 0.0;
    auto ia = a.entries.begin(), ib = b.entries.begin();
    while (ia != a.entries.end() || ib != b.entries.end()) {
        if (ib == b.entries.end() || (ia != a.entries.end() && ia->first < ib->first))
            sum += std::abs(ia->second), ++ia;
        else if (ia == a.entries.end() || ib->first < ia->first)
            sum += std::abs(ib->second), ++ib;
        else
            sum += std::abs(ia->second - ib->second), ++ia, ++ib;
    }
    return 0.5 * (sum + std::abs(a.residual - b.residual));
}

}  // namespace stepkernel
