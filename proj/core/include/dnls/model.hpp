#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dnls/graph.hpp"

namespace dnls {

enum class PotentialKind { constant, periodic, bounded_well };

/// Strictly positive per-vertex potential V with its construction metadata.
class Potential {
public:
    /// V identically `value` on every vertex.
    static Potential constant(const Graph& g, double value);

    /// Tiles `cell` (row-major over the periods) across a lattice graph whose
    /// sides are multiples of the per-axis periods.
    static Potential periodic(const Graph& g, const std::vector<double>& cell, const std::vector<int>& periods);

    /// V = v_inf everywhere except finitely many dipped vertices where
    /// V = v_inf - depth. Empty dips degrade to the constant kind.
    static Potential well(const Graph& g, double v_inf, const std::vector<std::pair<int, double>>& dips);

    PotentialKind kind() const { return kind_; }
    const std::vector<double>& values() const { return values_; }
    double operator[](int v) const { return values_[static_cast<std::size_t>(v)]; }
    int size() const { return static_cast<int>(values_.size()); }

    double min_value() const { return v0_; }   // V0
    double max_value() const { return vinf_; } // V_inf for wells, sup V otherwise
    const std::vector<int>& periods() const { return periods_; }
    std::uint64_t graph_id() const { return graph_id_; }

private:
    Potential() = default;
    void finish(const Graph& g);

    PotentialKind kind_ = PotentialKind::constant;
    std::vector<double> values_;
    double v0_ = 0.0, vinf_ = 0.0;
    std::vector<int> periods_;
    std::uint64_t graph_id_ = 0;
};

/// Evaluator pair (f, F) with the metadata the Nehari machinery relies on:
/// the growth exponent and whether f depends on the vertex.
class Nonlinearity {
public:
    struct PowerTerm {
        double exponent;                  // q > 2
        double coefficient;               // used when coefficients is empty
        std::vector<double> coefficients; // per-vertex a(x) > 0, optional
    };

    /// f(x,u) = sum_i a_i(x) |u|^{q_i - 2} u,  F(x,u) = sum_i a_i(x) |u|^{q_i} / q_i.
    static Nonlinearity power(std::vector<PowerTerm> terms);
    static Nonlinearity power(double coefficient, double exponent) {
        return power({PowerTerm{exponent, coefficient, {}}});
    }

    /// User-supplied evaluators. `growth_exponent` is the claimed q in the
    /// growth condition; `odd` enables the solver's sign normalization.
    /// Custom models are gated by check_conditions at solver startup.
    static Nonlinearity custom(std::function<double(int, double)> f, std::function<double(int, double)> F,
                               double growth_exponent, bool x_dependent, bool odd);

    double f(int x, double u) const;
    double F(int x, double u) const;

    bool is_power() const { return custom_f_ == nullptr; }
    bool x_dependent() const { return x_dependent_; }
    bool odd() const { return odd_; }
    double max_exponent() const { return q_max_; }
    const std::vector<PowerTerm>& terms() const { return terms_; }

private:
    Nonlinearity() = default;

    std::vector<PowerTerm> terms_;
    std::function<double(int, double)> custom_f_;
    std::function<double(int, double)> custom_F_;
    double q_max_ = 0.0;
    bool x_dependent_ = false;
    bool odd_ = true;
};

/// Thresholds for the numeric spot-checks of the growth hypotheses.
struct ConditionThresholds {
    double small_u = 1e-3;      // |u| at or below this counts as "small"
    double small_slope = 1e-3;  // require |f/u| <= this there
    double large_u = 1e3;       // |u| at or above this counts as "large"
    double large_ratio = 10.0;  // require F/u^2 >= this there
};

struct ConditionReport {
    // f(x,u) = o(u): worst |f/u| over small samples.
    double small_slope_max = 0.0;
    bool vanishing_slope_ok = true;
    // f/|u| strictly increasing: count of ordered sample pairs violating it.
    int monotonicity_violations = 0;
    double worst_monotonicity_gap = 0.0;
    bool monotone_ok = true;
    // F/u^2 -> infinity: smallest ratio over large samples.
    double large_ratio_min = 0.0;
    bool superquadratic_ok = true;

    bool passed() const { return vanishing_slope_ok && monotone_ok && superquadratic_ok; }
    std::string summary() const;
};

/// Evaluates the three hypotheses on a sample grid of (vertex, u) pairs.
/// Diagnostic only; never throws on failure.
ConditionReport check_conditions(const Nonlinearity& nl, std::span<const std::pair<int, double>> grid,
                                 const ConditionThresholds& thresholds = {});

/// Default grid spanning small and large |u| on a handful of vertices.
std::vector<std::pair<int, double>> default_condition_grid(int vertex_count);

} // namespace dnls
