#include "frbc/grid.hpp"

#include <ostream>
#include <stdexcept>
#include <utility>

namespace frbc {

CollocationGrid::CollocationGrid(int truncation, std::vector<Real> points)
    : truncation_(truncation), points_(std::move(points)) {
    if (truncation < 0) throw std::invalid_argument("grid truncation must be >= 0");
    if (points_.size() != static_cast<std::size_t>(truncation) + 1) {
        throw std::invalid_argument("grid must hold exactly N+1 points");
    }
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (!points_[i].is_finite() || points_[i].sign() <= 0) {
            throw std::invalid_argument("grid points must be finite and > 0");
        }
        if (i > 0 && !(points_[i - 1] < points_[i])) {
            throw std::invalid_argument("grid points must be strictly increasing");
        }
    }
}

CollocationGrid build_grid(int truncation, const PrecisionContext& ctx) {
    const Real pi = ctx.pi();
    const long count = static_cast<long>(truncation) + 1;
    std::vector<Real> pts;
    pts.reserve(static_cast<std::size_t>(count));
    for (long i = 1; i <= count; ++i) {
        const long num = 2 * i - 1;
        if (num == count) {
            // middle angle is exactly pi/2, so the point is exactly 1
            pts.push_back(ctx.real(1));
            continue;
        }
        const Real c = cos(pi * num / (2 * count));
        pts.push_back((1 - c) / (1 + c));
    }
    return CollocationGrid(truncation, std::move(pts));
}

void CollocationGrid::write_csv(std::ostream& os, const PrecisionContext& ctx) const {
    os << "index,x\n";
    for (std::size_t i = 0; i < points_.size(); ++i) {
        os << (i + 1) << ',' << ctx.str(points_[i]) << '\n';
    }
}

} // namespace frbc
