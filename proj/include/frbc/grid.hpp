#ifndef FRBC_GRID_HPP
#define FRBC_GRID_HPP

#include <iosfwd>
#include <vector>

#include "frbc/real.hpp"

namespace frbc {

/// The N+1 collocation abscissas: images of the Chebyshev roots
/// cos((2i-1)pi/(2N+2)), i = 1..N+1, under x = (1-c)/(1+c), sorted
/// ascending.  All points are finite, strictly positive and distinct;
/// symmetric pairs multiply to 1.
class CollocationGrid {
public:
    CollocationGrid(int truncation, std::vector<Real> points);

    int truncation() const { return truncation_; }
    std::size_t size() const { return points_.size(); }
    const std::vector<Real>& points() const { return points_; }
    const Real& operator[](std::size_t i) const { return points_[i]; }

    /// CSV dump (index, abscissa) for diagnostics.
    void write_csv(std::ostream& os, const PrecisionContext& ctx) const;

private:
    int truncation_;
    std::vector<Real> points_;
};

CollocationGrid build_grid(int truncation, const PrecisionContext& ctx);

} // namespace frbc

#endif
