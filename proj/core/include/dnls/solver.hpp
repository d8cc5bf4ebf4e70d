#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dnls/nehari.hpp"

namespace dnls {

struct StepRule {
    double initial = 1.0;              // largest trial step
    double backtrack = 0.5;            // shrink factor, in (0,1)
    double sufficient_decrease = 1e-4; // Armijo constant
};

enum class InitKind { bump_at_vertex, random_positive, user_field };

struct SolverOptions {
    int max_iters = 100000;
    double tol_grad = 1e-9;    // stopping: tangent-gradient sup norm
    double tol_point = 1e-8;   // pointwise residual, relative to max(1, |u|_inf)
    double tol_nehari = 1e-10; // |Phi'(u)u| at the returned point
    StepRule step;
    std::uint64_t seed = 0;
    InitKind init = InitKind::bump_at_vertex;
    int init_vertex = -1; // bump location; -1 places it at the middle vertex
    std::optional<Field> init_field;
    bool record_trace = false;
};

struct TraceRow {
    int iter;
    double s;
    double reduced_value;
    double tangent_grad_norm; // sup norm
};

struct GroundStateResult {
    Field u_star;
    double energy = 0.0; // Phi(u_star), the value c
    Residuals residuals;
    std::vector<double> s_history;    // s_w per accepted iterate
    std::vector<double> energy_trace; // Psi per accepted iterate, non-increasing
    std::vector<TraceRow> trace;      // populated when record_trace
    int iterations = 0;
    bool converged = false;
    double wall_time_seconds = 0.0;
};

/// Minimizes Psi over the unit sphere by tangent-gradient descent with
/// backtracking and Nehari re-projection. Non-convergence is reported in the
/// result, never thrown.
GroundStateResult minimize(const Problem& p, const SolverOptions& opts = {});

struct VerifyReport {
    bool pointwise_ok = false;
    bool nehari_ok = false;
    bool infmax_ok = false;
    double pointwise_sup = 0.0;
    double pointwise_threshold = 0.0;
    double nehari_residual = 0.0;
    double infmax_worst_margin = 0.0; // min over rays of (max_s Phi(sw) - energy)
    int rays = 0;

    bool passed() const { return pointwise_ok && nehari_ok && infmax_ok; }
    std::string summary() const;
};

/// Checks a converged result: pointwise residual, Nehari membership, and the
/// inf-max characterization (no sampled ray's fiber maximum beats the claimed
/// ground state energy by more than 1e-8).
VerifyReport verify(const Problem& p, const GroundStateResult& r, int rays = 100, std::uint64_t seed = 12345);

struct EnergyComparison {
    GroundStateResult well;  // ground state of the given problem (energy c)
    GroundStateResult limit; // same graph and f with V = V_inf (energy c_inf)
    double c = 0.0;
    double c_inf = 0.0;
    double gap = 0.0; // c_inf - c
};

/// Solves the bounded-well problem and its constant-V_inf limit problem on
/// the same graph. Requires an x-independent nonlinearity and a potential of
/// kind bounded_well or constant. The two solves run concurrently.
EnergyComparison compare_limit_energy(const Problem& well_problem, const SolverOptions& opts = {});

struct TruncationRow {
    std::vector<int> sides;
    int vertex_count = 0;
    double energy = 0.0;
    double delta_prev = 0.0; // energy - previous energy (<= 0 expected)
    int iterations = 0;
    bool converged = false;
};

/// Ground state energy per dirichlet box size; c_L is non-increasing in L
/// because zero extension nests the trial spaces. `make_problem` builds the
/// model on each box. Independent sizes run concurrently.
std::vector<TruncationRow> truncation_study(int dimension, const std::vector<int>& sizes,
                                            const std::function<Problem(const Graph&)>& make_problem,
                                            const SolverOptions& opts = {}, int workers = 0);

} // namespace dnls
