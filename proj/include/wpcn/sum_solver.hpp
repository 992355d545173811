#ifndef WPCN_SUM_SOLVER_HPP
#define WPCN_SUM_SOLVER_HPP

// Sum-throughput maximization over the time simplex, in closed form, plus the
// conventional TDMA reference (no energy slot, fixed per-user energy).

#include <wpcn/controls.hpp>
#include <wpcn/errors.hpp>
#include <wpcn/model.hpp>
#include <wpcn/roots.hpp>

#include <cmath>
#include <limits>
#include <vector>

namespace wpcn {

struct SumSolution {
    TimeAllocation allocation;
    double z_star = 0.0; // root of z ln z - z + 1 = A; NaN for the TDMA baseline
    double A = 0.0;      // sum of effective SNRs
    ThroughputReport report;
};

/// Optimal sum-throughput allocation:
///   tau_0 = (z* - 1) / (A + z* - 1),  tau_i = gamma_i / (A + z* - 1)
/// where A = sum gamma_i and z* > 1 solves z ln z - z + 1 = A.
/// Users with gamma_i = 0 get tau_i = 0.
inline SumSolution solve_sum(const NetworkInstance& instance, const SolverControls& controls = {}) {
    if (!instance.any_positive())
        throw degenerate_instance("solve_sum: every effective SNR is zero");
    const double A = instance.total_gamma();
    const double w = detail::solve_f_shifted(A, controls); // z* - 1
    const double denom = A + w;

    std::vector<double> tau(instance.users() + 1);
    tau[0] = w / denom;
    for (std::size_t i = 0; i < instance.users(); ++i)
        tau[i + 1] = instance.gamma(i) / denom;

    TimeAllocation alloc(std::move(tau));
    auto report = evaluate_rates(instance, alloc);
    return SumSolution{alloc, 1.0 + w, A, std::move(report)};
}

/// tau_0* written through the root alone: (z* - 1) / (z* ln z*).
inline double tau0_alternative_form(double z_star) {
    if (!(z_star > 1.0) || !std::isfinite(z_star))
        throw invalid_input("tau0_alternative_form: z* must be finite and > 1");
    const double w = z_star - 1.0;
    return w / (z_star * std::log1p(w));
}

/// Sum-throughput optimum of a TDMA network whose users hold a fixed energy
/// budget (no downlink slot).  Here gamma_i = g_i * E / (Gamma sigma^2) and the
/// rate is tau_i log2(1 + gamma_i / tau_i); the optimum equalises gamma_i / tau_i.
inline SumSolution solve_conventional_tdma(const NetworkInstance& instance) {
    if (!instance.any_positive())
        throw degenerate_instance("solve_conventional_tdma: every effective SNR is zero");
    const double A = instance.total_gamma();
    std::vector<double> tau(instance.users() + 1, 0.0);
    std::vector<double> rates(instance.users());
    for (std::size_t i = 0; i < instance.users(); ++i) {
        tau[i + 1] = instance.gamma(i) / A;
        rates[i] = tau[i + 1] > 0.0 ? tau[i + 1] * std::log1p(instance.gamma(i) / tau[i + 1]) / ln2
                                    : 0.0;
    }
    TimeAllocation alloc(std::move(tau));
    return SumSolution{alloc, std::numeric_limits<double>::quiet_NaN(), A,
                       make_report(std::move(rates), alloc)};
}

} // namespace wpcn

#endif
