#include "frbc/io.hpp"

#include <nlohmann/json.hpp>

#include <ostream>
#include <stdexcept>

namespace frbc {

std::vector<Real> default_table_abscissas(const PrecisionContext& ctx) {
    std::vector<Real> xs;
    xs.reserve(52);
    const Real quarter = ctx.real(1) / 4;
    for (int k = 1; k <= 20; ++k) xs.push_back(quarter * k);          // 0.25 .. 5
    for (int k = 6; k <= 10; ++k) xs.push_back(ctx.real(k));          // 6 .. 10
    for (int k = 20; k <= 100; k += 10) xs.push_back(ctx.real(k));    // 20 .. 100
    for (int k = 200; k <= 1000; k += 100) xs.push_back(ctx.real(k)); // 200 .. 1000
    for (int k = 2000; k <= 10000; k += 1000) xs.push_back(ctx.real(k));
    return xs;
}

void write_table_csv(std::ostream& os, std::span<const Real> xs,
                     std::span<const Real> values, const PrecisionContext& ctx) {
    if (xs.size() != values.size()) throw std::invalid_argument("table size mismatch");
    os << "x,value\n";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        os << ctx.str(xs[i]) << ',' << ctx.str(values[i]) << '\n';
    }
}

void write_table_json(std::ostream& os, std::span<const Real> xs,
                      std::span<const Real> values, const PrecisionContext& ctx) {
    if (xs.size() != values.size()) throw std::invalid_argument("table size mismatch");
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        rows.push_back({{"x", ctx.str(xs[i])}, {"value", ctx.str(values[i])}});
    }
    os << rows.dump(2) << '\n';
}

void write_profile_csv(std::ostream& os, std::span<const Real> xs,
                       const std::vector<std::vector<Real>>& series,
                       std::span<const int> truncations, const PrecisionContext& ctx) {
    os << "x";
    for (int n : truncations) os << ",res_N" << n;
    os << '\n';
    for (std::size_t i = 0; i < xs.size(); ++i) {
        os << ctx.str(xs[i]);
        for (const auto& s : series) os << ',' << ctx.str(s[i]);
        os << '\n';
    }
}

void write_lattice_csv(std::ostream& os, std::span<const int> truncations,
                       std::span<const Real> xs, std::span<const int> iterations,
                       const std::vector<std::vector<std::vector<Real>>>& values,
                       const PrecisionContext& ctx) {
    os << "N,x";
    for (int it : iterations) os << ",I" << it;
    os << '\n';
    for (std::size_t a = 0; a < truncations.size(); ++a) {
        for (std::size_t b = 0; b < xs.size(); ++b) {
            os << truncations[a] << ',' << ctx.str(xs[b]);
            for (std::size_t c = 0; c < iterations.size(); ++c) {
                os << ',' << ctx.str(values[a][b][c]);
            }
            os << '\n';
        }
    }
}

nlohmann::json trace_to_json(const IterationTrace& trace, const PrecisionContext& ctx) {
    nlohmann::json records = nlohmann::json::array();
    for (const IterationRecord& rec : trace.records) {
        nlohmann::json r;
        r["iteration"] = rec.iteration;
        r["delta_sup"] = ctx.str(rec.delta_sup);
        r["slope_at_origin"] = ctx.str(rec.slope_at_origin);
        r["max_node_residual"] = ctx.str(rec.max_node_residual);
        r["clamp_events"] = rec.clamp_events;
        nlohmann::json cs = nlohmann::json::array();
        for (const Real& c : rec.coeffs) cs.push_back(c.to_decimal_exact());
        r["coeffs"] = std::move(cs);
        records.push_back(std::move(r));
    }
    return nlohmann::json{{"records", std::move(records)}};
}

std::vector<Real> parse_x_list(const std::string& spec, const PrecisionContext& ctx) {
    std::vector<Real> out;
    std::size_t start = 0;
    while (start <= spec.size()) {
        std::size_t comma = spec.find(',', start);
        if (comma == std::string::npos) comma = spec.size();
        const std::string item = spec.substr(start, comma - start);
        if (item.empty()) throw std::invalid_argument("empty entry in x list");
        out.push_back(ctx.real(item));
        start = comma + 1;
        if (comma == spec.size()) break;
    }
    if (out.empty()) throw std::invalid_argument("empty x list");
    return out;
}

std::vector<Real> log_spaced_probe(const std::string& range, int count,
                                   const PrecisionContext& ctx) {
    const std::size_t colon = range.find(':');
    if (colon == std::string::npos) {
        throw std::invalid_argument("probe range must look like 'lo:hi'");
    }
    const Real lo = ctx.real(range.substr(0, colon));
    const Real hi = ctx.real(range.substr(colon + 1));
    if (!(lo > ctx.real(0)) || !(hi > ctx.real(0))) {
        throw std::invalid_argument("probe range must be positive");
    }
    if (!(lo <= hi)) throw std::invalid_argument("probe range must have lo <= hi");
    if (count < 0) throw std::invalid_argument("probe count must be >= 0");
    std::vector<Real> pts;
    pts.reserve(static_cast<std::size_t>(count));
    if (count == 0) return pts;
    if (count == 1) {
        pts.push_back(lo);
        return pts;
    }
    const Real ratio = pow(hi / lo, ctx.real(1) / (count - 1));
    for (int j = 0; j < count; ++j) {
        pts.push_back(lo * pow(ratio, static_cast<long>(j)));
    }
    return pts;
}

} // namespace frbc
