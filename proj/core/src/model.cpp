#include "dnls/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

namespace dnls {

namespace {

// |u|^{p-2} u and |u|^p / p with a fast path for small integer exponents.
double abs_pow(double a, double p) {
    if (p == std::floor(p) && p >= 0.0 && p <= 16.0) {
        double r = 1.0;
        for (int k = 0; k < static_cast<int>(p); ++k) r *= a;
        return r;
    }
    return std::pow(a, p);
}

} // namespace

void Potential::finish(const Graph& g) {
    graph_id_ = g.id();
    v0_ = values_[0];
    vinf_ = values_[0];
    for (double v : values_) {
        if (!(v > 0.0)) throw model_error("potential must be strictly positive everywhere");
        v0_ = std::min(v0_, v);
        vinf_ = std::max(vinf_, v);
    }
}

Potential Potential::constant(const Graph& g, double value) {
    Potential p;
    p.kind_ = PotentialKind::constant;
    p.values_.assign(static_cast<std::size_t>(g.vertex_count()), value);
    p.finish(g);
    return p;
}

Potential Potential::periodic(const Graph& g, const std::vector<double>& cell, const std::vector<int>& periods) {
    if (g.mode() != GraphMode::dirichlet_box && g.mode() != GraphMode::periodic_torus)
        throw model_error("periodic potential requires a lattice graph");
    const int dim = g.dimension();
    if (static_cast<int>(periods.size()) != dim) throw model_error("periods length must match lattice dimension");
    long long cell_size = 1;
    for (int a = 0; a < dim; ++a) {
        const int t = periods[static_cast<std::size_t>(a)];
        if (t < 1) throw model_error("axis " + std::to_string(a) + ": period must be >= 1");
        if (g.sides()[static_cast<std::size_t>(a)] % t != 0)
            throw model_error("axis " + std::to_string(a) + ": side " + std::to_string(g.sides()[static_cast<std::size_t>(a)]) +
                              " is not a multiple of period " + std::to_string(t));
        cell_size *= t;
    }
    if (static_cast<long long>(cell.size()) != cell_size)
        throw model_error("fundamental cell has " + std::to_string(cell.size()) + " values, expected " + std::to_string(cell_size));

    Potential p;
    p.kind_ = PotentialKind::periodic;
    p.periods_ = periods;
    p.values_.resize(static_cast<std::size_t>(g.vertex_count()));
    for (int v = 0; v < g.vertex_count(); ++v) {
        const std::vector<int> c = g.coordinates(v);
        int cell_idx = 0;
        for (int a = 0; a < dim; ++a)
            cell_idx = cell_idx * periods[static_cast<std::size_t>(a)] + c[static_cast<std::size_t>(a)] % periods[static_cast<std::size_t>(a)];
        p.values_[static_cast<std::size_t>(v)] = cell[static_cast<std::size_t>(cell_idx)];
    }
    p.finish(g);
    return p;
}

Potential Potential::well(const Graph& g, double v_inf, const std::vector<std::pair<int, double>>& dips) {
    Potential p;
    p.kind_ = dips.empty() ? PotentialKind::constant : PotentialKind::bounded_well;
    p.values_.assign(static_cast<std::size_t>(g.vertex_count()), v_inf);
    std::map<int, double> unique_dips; // deepest wins on duplicates
    for (auto [v, depth] : dips) {
        if (v < 0 || v >= g.vertex_count()) throw model_error("dip vertex " + std::to_string(v) + " out of range");
        auto [it, inserted] = unique_dips.emplace(v, depth);
        if (!inserted) it->second = std::max(it->second, depth);
    }
    for (auto [v, depth] : unique_dips) {
        const double dipped = v_inf - depth;
        if (!(dipped > 0.0))
            throw model_error("dip at vertex " + std::to_string(v) + " drives the potential to " + std::to_string(dipped));
        p.values_[static_cast<std::size_t>(v)] = dipped;
    }
    p.finish(g);
    if (p.kind_ == PotentialKind::bounded_well) p.vinf_ = v_inf;
    return p;
}

Nonlinearity Nonlinearity::power(std::vector<PowerTerm> terms) {
    if (terms.empty()) throw model_error("power nonlinearity needs at least one term");
    Nonlinearity nl;
    nl.q_max_ = 0.0;
    nl.x_dependent_ = false;
    nl.odd_ = true;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const auto& t = terms[i];
        if (!(t.exponent > 2.0))
            throw model_error("exponent q[" + std::to_string(i) + "] = " + std::to_string(t.exponent) +
                              " violates q > 2 (superquadratic growth would fail)");
        if (t.coefficients.empty()) {
            if (!(t.coefficient > 0.0))
                throw model_error("coefficient a[" + std::to_string(i) + "] must be strictly positive");
        } else {
            nl.x_dependent_ = true;
            for (double a : t.coefficients)
                if (!(a > 0.0)) throw model_error("coefficient field a[" + std::to_string(i) + "] must be strictly positive");
        }
        nl.q_max_ = std::max(nl.q_max_, t.exponent);
    }
    nl.terms_ = std::move(terms);
    return nl;
}

Nonlinearity Nonlinearity::custom(std::function<double(int, double)> f, std::function<double(int, double)> F,
                                  double growth_exponent, bool x_dependent, bool odd) {
    if (!f || !F) throw model_error("custom nonlinearity needs both evaluators");
    if (!(growth_exponent > 2.0)) throw model_error("claimed growth exponent must exceed 2");
    Nonlinearity nl;
    nl.custom_f_ = std::move(f);
    nl.custom_F_ = std::move(F);
    nl.q_max_ = growth_exponent;
    nl.x_dependent_ = x_dependent;
    nl.odd_ = odd;
    return nl;
}

double Nonlinearity::f(int x, double u) const {
    if (custom_f_) return custom_f_(x, u);
    double acc = 0.0;
    const double au = std::abs(u);
    for (const auto& t : terms_) {
        const double a = t.coefficients.empty() ? t.coefficient : t.coefficients[static_cast<std::size_t>(x)];
        acc += a * abs_pow(au, t.exponent - 2.0) * u;
    }
    return acc;
}

double Nonlinearity::F(int x, double u) const {
    if (custom_F_) return custom_F_(x, u);
    double acc = 0.0;
    const double au = std::abs(u);
    for (const auto& t : terms_) {
        const double a = t.coefficients.empty() ? t.coefficient : t.coefficients[static_cast<std::size_t>(x)];
        acc += a * abs_pow(au, t.exponent) / t.exponent;
    }
    return acc;
}

std::string ConditionReport::summary() const {
    std::ostringstream os;
    os << "vanishing slope near 0: " << (vanishing_slope_ok ? "pass" : "FAIL") << " (max |f/u| small = " << small_slope_max << "); "
       << "f/|u| monotone: " << (monotone_ok ? "pass" : "FAIL") << " (" << monotonicity_violations << " violations); "
       << "superquadratic F: " << (superquadratic_ok ? "pass" : "FAIL") << " (min F/u^2 large = " << large_ratio_min << ")";
    return os.str();
}

ConditionReport check_conditions(const Nonlinearity& nl, std::span<const std::pair<int, double>> grid,
                                 const ConditionThresholds& th) {
    ConditionReport rep;
    rep.large_ratio_min = std::numeric_limits<double>::infinity();

    // Group samples per vertex so the monotone scan compares like with like.
    std::map<int, std::vector<double>> per_vertex;
    for (auto [x, u] : grid) {
        if (u == 0.0) continue;
        per_vertex[x].push_back(u);

        const double fu = nl.f(x, u);
        if (std::abs(u) <= th.small_u) rep.small_slope_max = std::max(rep.small_slope_max, std::abs(fu / u));
        if (std::abs(u) >= th.large_u) rep.large_ratio_min = std::min(rep.large_ratio_min, nl.F(x, u) / (u * u));
    }

    for (auto& [x, us] : per_vertex) {
        // Check each sign branch separately; f/|u| must strictly increase in u.
        std::sort(us.begin(), us.end());
        bool have_prev = false;
        double prev_u = 0.0, prev_ratio = 0.0;
        for (double u : us) {
            const double ratio = nl.f(x, u) / std::abs(u);
            const bool same_branch = have_prev && (prev_u < 0.0) == (u < 0.0);
            if (same_branch && u != prev_u && ratio <= prev_ratio) {
                rep.monotonicity_violations += 1;
                rep.worst_monotonicity_gap = std::max(rep.worst_monotonicity_gap, prev_ratio - ratio);
            }
            have_prev = true;
            prev_u = u;
            prev_ratio = ratio;
        }
    }

    rep.vanishing_slope_ok = rep.small_slope_max <= th.small_slope;
    rep.monotone_ok = rep.monotonicity_violations == 0;
    rep.superquadratic_ok = std::isfinite(rep.large_ratio_min) && rep.large_ratio_min >= th.large_ratio;
    return rep;
}

std::vector<std::pair<int, double>> default_condition_grid(int vertex_count) {
    std::vector<std::pair<int, double>> grid;
    const int xs = std::min(vertex_count, 4);
    for (int i = 0; i < xs; ++i) {
        const int x = i * std::max(1, vertex_count / xs);
        for (double mag : {1e-6, 1e-4, 1e-3, 1e-2, 0.1, 0.5, 1.0, 2.0, 10.0, 1e2, 1e3, 1e4}) {
            grid.emplace_back(x, mag);
            grid.emplace_back(x, -mag);
        }
    }
    return grid;
}

} // namespace dnls
