#ifndef FRBC_ERRORS_HPP
#define FRBC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace frbc {

// Pivot underflow in the dense solver; usually a degenerate collocation
// system (e.g. duplicated grid points).
class SingularMatrix : public std::runtime_error {
public:
    SingularMatrix(std::size_t column, const std::string& detail)
        : std::runtime_error("singular matrix at elimination column " +
                             std::to_string(column) + ": " + detail),
          column_(column) {}
    std::size_t column() const { return column_; }

private:
    std::size_t column_;
};

// A linearized coefficient evaluated to NaN/Inf at a grid point, i.e. the
// iterate left the admissible region of the nonlinear problem.
class NonFiniteCoefficient : public std::runtime_error {
public:
    NonFiniteCoefficient(std::size_t grid_index, int iteration, const std::string& detail)
        : std::runtime_error("non-finite coefficient at grid point " +
                             std::to_string(grid_index) + ", iteration " +
                             std::to_string(iteration) + ": " + detail),
          grid_index_(grid_index),
          iteration_(iteration),
          detail_(detail) {}
    std::size_t grid_index() const { return grid_index_; }
    int iteration() const { return iteration_; }
    const std::string& detail() const { return detail_; }

private:
    std::size_t grid_index_;
    int iteration_;
    std::string detail_;
};

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

} // namespace frbc

#endif
