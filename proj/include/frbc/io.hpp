#ifndef FRBC_IO_HPP
#define FRBC_IO_HPP

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "frbc/qlm.hpp"
#include "frbc/real.hpp"

namespace frbc {

enum class OutputFormat { csv, json };

/// The 52 tabulation abscissas used by the reference tables: 0.25..5 step
/// 0.25, 6..10 step 1, 20..100 step 10, 200..1000 step 100, 2000..10000
/// step 1000.
std::vector<Real> default_table_abscissas(const PrecisionContext& ctx);

void write_table_csv(std::ostream& os, std::span<const Real> xs,
                     std::span<const Real> values, const PrecisionContext& ctx);
void write_table_json(std::ostream& os, std::span<const Real> xs,
                      std::span<const Real> values, const PrecisionContext& ctx);

/// Wide CSV: one abscissa column, one residual column per truncation order.
void write_profile_csv(std::ostream& os, std::span<const Real> xs,
                       const std::vector<std::vector<Real>>& series,
                       std::span<const int> truncations, const PrecisionContext& ctx);

/// Lattice CSV: rows (N, x), one value column per iteration count.
void write_lattice_csv(std::ostream& os, std::span<const int> truncations,
                       std::span<const Real> xs, std::span<const int> iterations,
                       const std::vector<std::vector<std::vector<Real>>>& values,
                       const PrecisionContext& ctx);

nlohmann::json trace_to_json(const IterationTrace& trace, const PrecisionContext& ctx);

/// Comma-separated decimal list -> Reals (throws std::invalid_argument).
std::vector<Real> parse_x_list(const std::string& spec, const PrecisionContext& ctx);

/// "lo:hi" log-range plus count -> log-spaced probe points, all > 0.
std::vector<Real> log_spaced_probe(const std::string& range, int count,
                                   const PrecisionContext& ctx);

} // namespace frbc

#endif
