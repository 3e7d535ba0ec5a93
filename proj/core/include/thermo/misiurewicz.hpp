#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "thermo/compactification.hpp"
#include "thermo/measure_pressure.hpp"
#include "thermo/report.hpp"

namespace thermo {

/// Weighted separated set and the measures built from it. Measures live on Z.
struct EmpiricalBundle {
    int n = 0;
    double eps = 0.0;
    std::vector<PointId> points; // E_n
    double a_n = 0.0;
    FiniteMeasure sigma;
    FiniteMeasure mu;
    Bound bound = Bound::exact;
};

/// E_n maximizes sum e^{f_n} over (n, eps)-separated sets of X (exact mode)
/// or is the greedy set (flagged lower); sigma_n = sum e^{f_n(x)} delta_x / A_n,
/// mu_n = (1/n) sum_{j<n} sigma_n o S^{-j}.
EmpiricalBundle empirical_construction(const ExtendedSystem& ext, const Potential& f, double eps, int n,
                                       SolverMode mode = SolverMode::exact);

struct IdentityResidual {
    double entropy_identity = 0.0; // H_sigma(Z^n) + n int g dmu_n - log A_n
    double birkhoff_identity = 0.0; // int g_n dsigma_n - n int g dmu_n
    std::size_t max_points_per_cell = 0;
};

/// Throws DomainError when a member of the partition has d~-diameter >= eps
/// or member 0 misses part of Z \ X.
IdentityResidual entropy_identity_check(const ExtendedSystem& ext, const EmpiricalBundle& bundle,
                                        const Partition& zpartition, const Potential& f);

struct ChunkedBound {
    double lhs = 0.0;       // q H_sigma(Z^n)
    double rhs = 0.0;       // 2q log|Z^q| + n H_mu(Z^q)
    double slack = 0.0;
    std::size_t cells = 0;  // |Z^q|, nonempty members
};

/// Requires 1 < q < n.
ChunkedBound chunked_entropy_bound(const ExtendedSystem& ext, const EmpiricalBundle& bundle,
                                   const Partition& zpartition, int q);

struct DefectReport {
    double defect = 0.0;
    double bound = 0.0; // 2 / n for test functions with sup norm 1
};

/// sup over normalized test functions (indicators of the partition members and
/// g / |g|_inf) of |int phi d(mu_n - mu_n o S^{-1})|.
DefectReport invariance_defect(const ExtendedSystem& ext, const EmpiricalBundle& bundle,
                               const Partition& zpartition, const Potential& f);

/// Z_j = B_j \ (B_0 u ... u B_{j-1}) for d~-balls of radius r < eps/2, r off
/// the realized distances. B_0 is centred at infinity (at point 0 when the
/// fiber is empty), the other centres are the first uncovered points.
Partition boundary_safe_partition(const ExtendedSystem& ext, const FiniteMeasure& mu, double eps);

using ExtensionFactory = std::function<ExtendedSystem(int n, double eps)>;

struct PipelineReport {
    double eps = 0.0;
    int n = 0;           // level used for mu*
    int n_argmax = 0;    // level maximizing (1/n) log A_n
    double a_n = 0.0;
    Bound bound = Bound::exact;
    double entropy_identity_residual = 0.0;
    double defect = 0.0;
    double defect_bound = 0.0;
    double chunk_slack = 0.0;
    double entropy = 0.0;
    double integral = 0.0;
    double measure_pressure = 0.0;
    double separated_pressure = 0.0;
    double gap = 0.0;
    double tol_defect = 0.0;
    double tol_chunk = 0.0;
    double tol_truncation = 0.0;
    double tolerance = 0.0;
    double total_mass = 0.0;
    double mass_near_infinity = 0.0;
    bool passed = false;
    std::vector<std::pair<int, double>> rates; // (n, (1/n) log A_n)
};

/// Bundles on the n grid, mu* = mu_n at the largest n restricted to X, and
/// the comparison separated_pressure(eps) <= P_{mu*}(T, f) + tolerance.
std::pair<FiniteMeasure, PipelineReport> lower_bound_pipeline(const ExtensionFactory& factory, const Potential& f,
                                                              double eps, const std::vector<int>& n_grid,
                                                              const std::vector<int>& q_grid,
                                                              SolverMode mode = SolverMode::exact);

} // namespace thermo
