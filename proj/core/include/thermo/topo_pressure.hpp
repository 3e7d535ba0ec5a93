#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "thermo/cover_algebra.hpp"
#include "thermo/report.hpp"
#include "thermo/systems.hpp"

namespace thermo {

enum class PressureKind { qminus, qplus, pcover, generating, separated, consolidated };

const char* to_string(PressureKind k);

/// A level-n quantity and how far the solver can be trusted.
struct LevelValue {
    double value = 0.0;
    Bound bound = Bound::exact;
};

struct PressureEstimate {
    PressureKind kind = PressureKind::pcover;
    std::optional<double> epsilon;
    std::vector<int> n_values;
    std::vector<double> raw;    // level-n quantity
    std::vector<double> values; // (1/n) log raw
    std::vector<Bound> bounds;
    double extrapolated = 0.0;
};

/// Builds the scaffold used at level n and radius eps.
using ScaffoldFactory = std::function<System(int n, double eps)>;

/// Always the same scaffold.
ScaffoldFactory fixed_scaffold(System sys);

/// Cyclic words of depth scaffold_depth(n, eps) for the given SFT.
ScaffoldFactory symbolic_scaffold(int alphabet, TransitionMatrix transitions, std::string name = {});

/// n + k with k the cylinder depth of an eps-ball.
int scaffold_depth(int n, double eps);

/// Q_n(T, f, A): minimum over subcovers of A^n of the sum of inf e^{f_n}.
LevelValue q_value(const System& sys, const Potential& f, const Cover& a, int n,
                   SolverMode mode = SolverMode::exact);

/// P_n(T, f, A): same with sup e^{f_n}.
LevelValue p_value(const System& sys, const Potential& f, const Cover& a, int n,
                   SolverMode mode = SolverMode::exact);

struct CoverPressure {
    PressureEstimate qminus;
    PressureEstimate qplus;
    PressureEstimate pcover;
};

CoverPressure cover_pressure(const System& sys, const Potential& f, const Cover& a, int n_max,
                             SolverMode mode = SolverMode::exact);

struct PointChoice {
    std::vector<PointId> points;
    double value = 0.0;
    Bound bound = Bound::exact;
};

/// Maximum-weight (n, eps)-separated set with weights e^{f_n}.
PointChoice separated_set(const System& sys, const Potential& f, double eps, int n,
                          SolverMode mode = SolverMode::exact);

/// Minimum-weight (n, eps)-generating set with weights e^{f_n}.
PointChoice generating_set(const System& sys, const Potential& f, double eps, int n,
                           SolverMode mode = SolverMode::exact);

LevelValue s_value(const System& sys, const Potential& f, double eps, int n,
                   SolverMode mode = SolverMode::exact);
LevelValue g_value(const System& sys, const Potential& f, double eps, int n,
                   SolverMode mode = SolverMode::exact);

bool is_separated(const System& sys, double eps, int n, const std::vector<PointId>& points);
bool is_generating(const System& sys, double eps, int n, const std::vector<PointId>& points);

/// Sequences n = 1..n_max; extrapolation is the max over the last third of the
/// increments log(v_n / v_{n-1}).
PressureEstimate separated_pressure(const ScaffoldFactory& scaffold, const Potential& f, double eps,
                                    int n_max, SolverMode mode = SolverMode::exact);
PressureEstimate generating_pressure(const ScaffoldFactory& scaffold, const Potential& f, double eps,
                                     int n_max, SolverMode mode = SolverMode::exact);

struct TopologicalOptions {
    SolverMode mode = SolverMode::exact;
    double tolerance = 1e-3;
    /// Levels used for the ball-cover column; 0 disables it.
    int cover_n_max = 6;
    /// Ball covers are skipped on scaffolds larger than this.
    std::size_t cover_max_points = 4096;
    /// Stop iterating once a join would pair more members than this.
    std::size_t cover_max_pairs = std::size_t{1} << 18;
};

struct TopologicalReport {
    std::vector<double> eps_grid;
    std::vector<PressureEstimate> separated;
    std::vector<PressureEstimate> generating;
    std::vector<CoverPressure> ball_cover; // may be shorter than eps_grid
    PressureEstimate consolidated;
    double consolidated_eps = 0.0;
    bool converged = false;

    /// Every estimate in a fixed order, for CSV output.
    std::vector<PressureEstimate> all() const;
};

/// Default radius grid: diameter/4 * 2^-k, k = 0..levels-1.
std::vector<double> default_eps_grid(const System& sys, int levels = 6);

/// Separated, generating and ball-cover pressures on the grid plus the
/// consolidated value: the separated extrapolation at the first radius (in
/// decreasing order) that differs from the previous one by less than the
/// tolerance, else at the smallest radius.
///
/// Throws ContractError when the potential does not vanish at infinity up to
/// its constant (tail oscillation not decaying).
TopologicalReport topological_pressure(const ScaffoldFactory& scaffold, const Potential& f,
                                       std::vector<double> eps_grid, int n_max,
                                       const TopologicalOptions& options = {});

/// Checks that f is one-point uniformly continuous on the scaffold.
void require_one_point_potential(const System& sys, const Potential& f);

/// f_k as a potential on the same scaffold.
Potential iterated_potential(const System& sys, const Potential& f, int k);

/// Q/P for (T^k, f_k, A^k) over n steps against (T, f, A) over kn steps, and
/// level-wise Q_n(T^k, f_k, A) <= Q_{kn}(T, f, A) (same for P).
CheckReport iterated_system_inequality_check(const System& sys, const Potential& f, const Cover& a, int k,
                                             int n_max, SolverMode mode = SolverMode::exact);

} // namespace thermo
