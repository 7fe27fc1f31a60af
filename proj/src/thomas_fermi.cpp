#include "frbc/thomas_fermi.hpp"

#include <nlohmann/json.hpp>

#include <stdexcept>
#include <utility>

namespace frbc {

TfAnsatz::TfAnsatz(FrbBasis basis, const PrecisionContext& ctx)
    : basis_(std::move(basis)), ctx_(ctx) {}

std::size_t TfAnsatz::terms() const {
    return static_cast<std::size_t>(basis_.size());
}

Real TfAnsatz::inhomogeneous(const Real& x, int order) const {
    const Real d = x * x + 1;
    switch (order) {
        case 0: return 1 / d;
        case 1: return -2 * x / (d * d);
        case 2: return (6 * x * x - 2) / (d * d * d);
        default: throw std::invalid_argument("inhomogeneous: order must be 0..2");
    }
}

Real TfAnsatz::term(std::size_t n, const Real& x, int order) const {
    const int idx = static_cast<int>(n);
    const Real d = x * x + 1;
    if (x.is_zero()) {
        switch (order) {
            case 0: return ctx_.real(0); // envelope x/(x^2+1) vanishes
            case 1:
                // d/dx[x/(x^2+1) FB_n] -> FB_n(0); the remainder carries
                // x^alpha and vanishes (see derivative_at_origin)
                return basis_.table().value_at_zero(idx);
            default:
                throw DomainError("TfAnsatz::term: second derivative at x = 0");
        }
    }
    const Real g1 = x / d;
    const Real phi0 = frb_eval(idx, x, basis_, 0, ctx_);
    if (order == 0) return g1 * phi0;
    const Real g1d1 = (1 - x * x) / (d * d);
    const Real phi1 = frb_eval(idx, x, basis_, 1, ctx_);
    if (order == 1) {
        Real r = g1d1 * phi0;
        r.add_mul(g1, phi1);
        return r;
    }
    if (order != 2) throw std::invalid_argument("term: order must be 0..2");
    const Real g1d2 = 2 * x * (x * x - 3) / (d * d * d);
    const Real phi2 = frb_eval(idx, x, basis_, 2, ctx_);
    Real r = g1d2 * phi0;
    r.add_mul(2 * g1d1, phi1);
    r.add_mul(g1, phi2);
    return r;
}

Real TfAnsatz::derivative_at_origin(std::span<const Real> coeffs) const {
    // y'(0+) term by term: the 1/(x^2+1) part differentiates to -2x/(..)^2
    // (exponent 1, contributes 0); x/(x^2+1)*S(t(x)) splits into
    // g1'(0) S(0) = S(0) plus a remainder whose terms all carry x^(alpha k),
    // k >= 1.  The limit exists iff no differentiated exponent is negative,
    // i.e. min(1, alpha) > 0.
    if (!(basis_.alpha() > ctx_.real(0))) {
        throw DomainError("slope at origin undefined: alpha must be > 0");
    }
    Real s = ctx_.real(0);
    for (std::size_t n = 0; n < coeffs.size(); ++n) {
        s.add_mul(coeffs[n], basis_.table().value_at_zero(static_cast<int>(n)));
    }
    return s;
}

TfProblem::TfProblem(const PrecisionContext& ctx)
    : ctx_(ctx), clamps_(std::make_shared<std::atomic<long>>(0)) {}

Real TfProblem::initial_iterate(const Real&) const {
    return ctx_.real(1);
}

LinearizedBvp TfProblem::linearize(std::function<Real(const Real&)> y_prev) const {
    auto clamps = clamps_;
    auto admissible = [y_prev = std::move(y_prev), clamps](const Real& x) {
        Real y = y_prev(x);
        if (y.is_finite() && y.sign() < 0) {
            clamps->fetch_add(1);
            return Real::from_long(0, y.precision());
        }
        return y;
    };
    LinearizedBvp lin;
    lin.p = nullptr;
    lin.q = [admissible, ctx = ctx_](const Real& x) {
        return ctx.real(-3) / (2 * sqrt(x)) * sqrt(admissible(x));
    };
    lin.f = [admissible, ctx = ctx_](const Real& x) {
        const Real y = admissible(x);
        return ctx.real(-1) / (2 * sqrt(x)) * (y * sqrt(y));
    };
    return lin;
}

SpectralSolution::SpectralSolution(TfAnsatz ansatz, std::vector<Real> coeffs,
                                   int iterations, const PrecisionContext& ctx)
    : ansatz_(std::move(ansatz)), coeffs_(std::move(coeffs)), iterations_(iterations),
      ctx_(ctx) {
    if (coeffs_.size() != ansatz_.terms()) {
        throw std::invalid_argument("solution needs exactly N+1 coefficients");
    }
}

Real SpectralSolution::eval(const Real& x, int order) const {
    if (order != 0 && order != 1) throw std::invalid_argument("eval: order must be 0 or 1");
    if (x.sign() < 0) throw DomainError("eval: x must be >= 0");
    if (order == 1 && x.is_zero()) return slope_at_origin();
    Real y = ansatz_.inhomogeneous(x, order);
    for (std::size_t n = 0; n < coeffs_.size(); ++n) {
        y.add_mul(coeffs_[n], ansatz_.term(n, x, order));
    }
    return y;
}

Real SpectralSolution::second_derivative(const Real& x) const {
    if (x.sign() <= 0) throw DomainError("second_derivative: x must be > 0");
    Real y = ansatz_.inhomogeneous(x, 2);
    for (std::size_t n = 0; n < coeffs_.size(); ++n) {
        y.add_mul(coeffs_[n], ansatz_.term(n, x, 2));
    }
    return y;
}

Real SpectralSolution::slope_at_origin() const {
    return ansatz_.derivative_at_origin(coeffs_);
}

Real SpectralSolution::residual(const Real& x) const {
    const Real y = eval(x, 0);
    return abs(second_derivative(x) - y * sqrt(y) / sqrt(x));
}

std::vector<Real> SpectralSolution::residual_profile(std::span<const Real> probe,
                                                     Exec exec) const {
    std::vector<Real> out(probe.size(), ctx_.real(0));
    if (exec == Exec::parallel) {
        const long n = static_cast<long>(probe.size());
#pragma omp parallel for schedule(static)
        for (long i = 0; i < n; ++i) {
            out[static_cast<std::size_t>(i)] = residual(probe[static_cast<std::size_t>(i)]);
        }
    } else {
        for (std::size_t i = 0; i < probe.size(); ++i) {
            out[i] = residual(probe[i]);
        }
    }
    return out;
}

nlohmann::json SpectralSolution::to_json() const {
    nlohmann::json j;
    j["N"] = ansatz_.basis().truncation();
    j["alpha"] = ansatz_.basis().alpha().to_decimal_exact();
    j["L"] = ansatz_.basis().scale().to_decimal_exact();
    j["digits"] = ctx_.digits();
    j["iterations"] = iterations_;
    nlohmann::json cs = nlohmann::json::array();
    for (const Real& c : coeffs_) cs.push_back(c.to_decimal_exact());
    j["coeffs"] = std::move(cs);
    return j;
}

SpectralSolution SpectralSolution::from_json(const nlohmann::json& j) {
    const PrecisionContext ctx(j.at("digits").get<int>());
    const int truncation = j.at("N").get<int>();
    FrbBasis basis(truncation, ctx.real(j.at("alpha").get<std::string>()),
                   ctx.real(j.at("L").get<std::string>()), ctx);
    const auto& cs = j.at("coeffs");
    if (!cs.is_array() || cs.size() != static_cast<std::size_t>(truncation) + 1) {
        throw std::invalid_argument("solution file must hold exactly N+1 coefficients");
    }
    std::vector<Real> coeffs;
    coeffs.reserve(cs.size());
    for (const auto& s : cs) coeffs.push_back(ctx.real(s.get<std::string>()));
    const int iterations = j.at("iterations").get<int>();
    if (iterations < 1) throw std::invalid_argument("iterations must be >= 1");
    return SpectralSolution(TfAnsatz(std::move(basis), ctx), std::move(coeffs),
                            iterations, ctx);
}

Real energy(const Real& nuclear_charge, const Real& slope, const PrecisionContext& ctx) {
    if (!(nuclear_charge > ctx.real(0))) {
        throw DomainError("energy: nuclear charge must be > 0");
    }
    const Real two_thirds = ctx.real(2) / 3;
    const Real seven_thirds = ctx.real(7) / 3;
    return ctx.real(6) / 7 * pow(4 * ctx.pi() / 3, two_thirds) *
           pow(nuclear_charge, seven_thirds) * slope;
}

TfConfig TfConfig::defaults(const PrecisionContext& ctx) {
    TfConfig c;
    c.alpha = ctx.real(1) / 2;
    c.scale = ctx.real(1);
    return c;
}

TfRun solve_thomas_fermi(const TfConfig& config, const PrecisionContext& ctx) {
    FrbBasis basis(config.truncation, config.alpha, config.scale, ctx);
    TfAnsatz ansatz(std::move(basis), ctx);
    const CollocationGrid grid = build_grid(config.truncation, ctx);
    TfProblem problem(ctx);
    QlmResult qr = qlm_iterate(problem, ansatz, grid, ctx, config.iterations, config.exec);
    SpectralSolution sol(std::move(ansatz), std::move(qr.coeffs), config.iterations, ctx);
    return TfRun{std::move(sol), std::move(qr.trace)};
}

SpectralSolution solution_at_iteration(const TfConfig& config, const IterationTrace& trace,
                                       int iteration, const PrecisionContext& ctx) {
    for (const IterationRecord& rec : trace.records) {
        if (rec.iteration == iteration) {
            FrbBasis basis(config.truncation, config.alpha, config.scale, ctx);
            return SpectralSolution(TfAnsatz(std::move(basis), ctx), rec.coeffs,
                                    iteration, ctx);
        }
    }
    throw std::invalid_argument("trace has no record for iteration " +
                                std::to_string(iteration));
}

} // namespace frbc
