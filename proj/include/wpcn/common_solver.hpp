#ifndef WPCN_COMMON_SOLVER_HPP
#define WPCN_COMMON_SOLVER_HPP

// Common-throughput (max-min) and weighted sum-throughput allocation.
//
// The weighted problem  max sum_i lambda_i R_i(tau)  over the simplex is solved
// through its KKT system: with z_i = gamma_i tau_0 / tau_i,
//
//   Q(z_i) = ln(1 + z_i) - z_i / (1 + z_i) = (mu / lambda_i) ln 2
//   S(z)   = sum_i lambda_i gamma_i / (1 + z_i) = mu ln 2
//
// and tau_0 = 1 / (1 + sum_j gamma_j / z_j), tau_i = (gamma_i / z_i) tau_0.
//
// Feasibility of per-user targets r_i is decided on the dual
//   G(lambda) = min_tau -sum_i lambda_i (R_i(tau) - r_i),
// which is positive somewhere on lambda >= 0 iff the targets are infeasible.
// The ellipsoid method runs on F = -G, whose subgradient at lambda is
// upsilon_i = R_i(tau*(lambda)) - r_i.  The common rate is found by bisecting
// on the target level.

#include <wpcn/controls.hpp>
#include <wpcn/errors.hpp>
#include <wpcn/model.hpp>
#include <wpcn/roots.hpp>
#include <wpcn/sum_solver.hpp>

#include <Eigen/Dense>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

namespace wpcn {

struct Weights {
    std::vector<double> lambda;

    explicit Weights(std::vector<double> l) : lambda(std::move(l)) {
        if (lambda.empty())
            throw invalid_input("weights must not be empty");
        bool any = false;
        for (double x : lambda) {
            if (!(x >= 0.0) || !std::isfinite(x))
                throw invalid_input("weights must be finite and >= 0");
            any = any || x > 0.0;
        }
        if (!any)
            throw invalid_input("at least one weight must be > 0");
    }

    static Weights unit(std::size_t users) { return Weights(std::vector<double>(users, 1.0)); }
};

struct RateProfile {
    std::vector<double> beta;

    explicit RateProfile(std::vector<double> b) : beta(std::move(b)) {
        if (beta.empty())
            throw invalid_input("rate profile must not be empty");
        double s = 0.0;
        for (double x : beta) {
            if (!(x > 0.0) || !std::isfinite(x))
                throw invalid_input("rate profile entries must be > 0");
            s += x;
        }
        if (std::abs(s - 1.0) > 1e-12)
            throw invalid_input("rate profile must sum to 1");
    }

    /// beta_i = R_i / sum_j R_j for required per-user rates R.
    static RateProfile from_required(const std::vector<double>& required) {
        double s = 0.0;
        for (double x : required)
            s += x;
        if (!(s > 0.0))
            throw invalid_input("required rates must have a positive sum");
        std::vector<double> b(required.size());
        for (std::size_t i = 0; i < b.size(); ++i)
            b[i] = required[i] / s;
        return RateProfile(std::move(b));
    }

    static RateProfile uniform(std::size_t users) {
        return RateProfile(std::vector<double>(users, 1.0 / double(users)));
    }
};

struct WeightedSumSolution {
    TimeAllocation allocation;
    double mu_star = 0.0;
    std::vector<double> z; // +inf for users that get no uplink time
    int iterations = 0;
};

struct KktResiduals {
    double per_user = 0.0; // max_i |Q(z_i) - (mu / lambda_i) ln 2| over active users
    double coupling = 0.0; // |S(z) - mu ln 2|
};

namespace detail {

inline double q_residual_fn(double z) { return t_kkt(z); }

// Users with lambda_i gamma_i > 0 carry the weighted objective.
inline std::vector<std::size_t> active_users(const NetworkInstance& inst, const Weights& w) {
    std::vector<std::size_t> a;
    for (std::size_t i = 0; i < inst.users(); ++i)
        if (w.lambda[i] > 0.0 && inst.gamma(i) > 0.0)
            a.push_back(i);
    return a;
}

} // namespace detail

/// Weighted sum-throughput maximizer.  mu is found by a safeguarded Newton
/// search on the coupling residual S(z(mu)) - mu ln 2, which decreases
/// strictly in mu with derivative -ln 2 (1 + sum_i gamma_i / z_i).
inline WeightedSumSolution solve_weighted_sum(const NetworkInstance& instance, const Weights& weights,
                                              const SolverControls& controls = {}) {
    const std::size_t K = instance.users();
    if (weights.lambda.size() != K)
        throw invalid_input("weights and instance have different user counts");
    const auto active = detail::active_users(instance, weights);
    if (active.empty())
        throw degenerate_instance("solve_weighted_sum: no user has both a positive weight and SNR");

    // Largest c whose root still fits in a double; beyond it z_i = inf, tau_i = 0.
    static const double c_limit = t_kkt(std::numeric_limits<double>::max());

    std::vector<double> z(K, std::numeric_limits<double>::infinity());
    double weighted_gamma = 0.0;
    for (auto i : active)
        weighted_gamma += weights.lambda[i] * instance.gamma(i);

    // S(z) - mu ln 2 and sum gamma_i / z_i at a given mu
    auto evaluate = [&](double mu, double& ratio_sum) {
        double s = 0.0;
        ratio_sum = 0.0;
        for (auto i : active) {
            const double c = mu * ln2 / weights.lambda[i];
            z[i] = c >= c_limit ? std::numeric_limits<double>::infinity() : solve_t_eq_c(c, controls);
            s += weights.lambda[i] * instance.gamma(i) / (1.0 + z[i]);
            ratio_sum += instance.gamma(i) / z[i];
        }
        return s - mu * ln2;
    };

    // h(0) = weighted_gamma > 0 and h(weighted_gamma / ln 2) < 0
    double lo = 0.0;
    double hi = weighted_gamma / ln2;
    double mu = 0.5 * hi;
    int it = 0;
    for (; it < controls.max_iters; ++it) {
        double ratio_sum = 0.0;
        const double h = evaluate(mu, ratio_sum);
        if (detail::within(h, mu * ln2, controls))
            break;
        if (h > 0.0)
            lo = mu;
        else
            hi = mu;
        if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi)
            break;
        double next = mu + h / (ln2 * (1.0 + ratio_sum));
        if (!(next > lo && next < hi))
            next = 0.5 * (lo + hi);
        mu = next;
    }
    if (it == controls.max_iters) {
        std::ostringstream os;
        os << "solve_weighted_sum: multiplier search did not converge in " << controls.max_iters
           << " iterations";
        throw iteration_limit(os.str(), lo, hi);
    }

    double ratio_sum = 0.0;
    for (auto i : active)
        ratio_sum += instance.gamma(i) / z[i];
    std::vector<double> tau(K + 1, 0.0);
    tau[0] = 1.0 / (1.0 + ratio_sum);
    for (auto i : active)
        tau[i + 1] = instance.gamma(i) / z[i] * tau[0];
    return WeightedSumSolution{TimeAllocation(std::move(tau)), mu, std::move(z), it + 1};
}

/// KKT residuals of a weighted-sum solution, recomputed from its allocation
/// (z_i = gamma_i tau_0 / tau_i).
inline KktResiduals weighted_sum_residuals(const NetworkInstance& instance, const Weights& weights,
                                           const WeightedSumSolution& sol) {
    KktResiduals r;
    const auto& a = sol.allocation;
    double s = 0.0;
    for (auto i : detail::active_users(instance, weights)) {
        if (a.ul(i) <= 0.0)
            continue;
        const double z = instance.gamma(i) * a.dl() / a.ul(i);
        r.per_user = std::max(r.per_user,
                              std::abs(detail::q_residual_fn(z) - sol.mu_star / weights.lambda[i] * ln2));
        s += weights.lambda[i] * instance.gamma(i) / (1.0 + z);
    }
    r.coupling = std::abs(s - sol.mu_star * ln2);
    return r;
}

struct DualEvaluation {
    double value = 0.0;               // G(lambda)
    TimeAllocation allocation;        // minimizer of the Lagrangian
    std::vector<double> rates;        // R_i at that allocation
    std::vector<double> subgradient;  // upsilon_i = R_i - r_i, a subgradient of -G
};

/// G(lambda) = -sum_i lambda_i (R_i(tau*) - r_i) with tau* the weighted-sum
/// maximizer.  When no user carries weight, any allocation minimizes the
/// Lagrangian; the sum-throughput optimum is used.
inline DualEvaluation dual_value(const NetworkInstance& instance, std::span<const double> lambda,
                                 std::span<const double> targets, const SolverControls& controls = {}) {
    const std::size_t K = instance.users();
    if (lambda.size() != K || targets.size() != K)
        throw invalid_input("dual_value: weights/targets do not match the user count");

    bool any_active = false;
    for (std::size_t i = 0; i < K; ++i)
        any_active = any_active || (lambda[i] > 0.0 && instance.gamma(i) > 0.0);

    std::optional<TimeAllocation> alloc;
    if (any_active) {
        std::vector<double> lam(lambda.begin(), lambda.end());
        for (double& x : lam)
            x = std::max(x, 0.0);
        alloc = solve_weighted_sum(instance, Weights(std::move(lam)), controls).allocation;
    } else if (instance.any_positive()) {
        alloc = solve_sum(instance, controls).allocation;
    } else {
        alloc = TimeAllocation::equal(K);
    }

    auto report = evaluate_rates(instance, *alloc);
    DualEvaluation d{0.0, *alloc, report.per_user_rates, std::vector<double>(K)};
    for (std::size_t i = 0; i < K; ++i) {
        d.subgradient[i] = d.rates[i] - targets[i];
        d.value -= lambda[i] * d.subgradient[i];
    }
    return d;
}

inline DualEvaluation dual_value(const NetworkInstance& instance, const Weights& weights, double target_rate,
                                 const SolverControls& controls = {}) {
    if (!(target_rate > 0.0))
        throw invalid_input("dual_value: target rate must be > 0");
    std::vector<double> t(instance.users(), target_rate);
    return dual_value(instance, weights.lambda, t, controls);
}

/// Central-cut ellipsoid {x : (x - c)^T P^{-1} (x - c) <= 1}.
struct EllipsoidState {
    Eigen::VectorXd center;
    Eigen::MatrixXd shape;
    int iteration = 0;

    static EllipsoidState ball(Eigen::VectorXd c, double radius) {
        const auto n = c.size();
        return EllipsoidState{std::move(c), radius * radius * Eigen::MatrixXd::Identity(n, n), 0};
    }

    /// sqrt(g^T P g): how far a linear function with gradient g can rise above
    /// its value at the center while staying inside the ellipsoid.
    double width(const Eigen::VectorXd& g) const { return std::sqrt(std::max(0.0, g.dot(shape * g))); }

    /// Keep the half {x : g^T (x - c) <= 0}.  Returns false for a zero cut.
    bool cut(const Eigen::VectorXd& g) {
        const double w = width(g);
        if (!(w > 0.0))
            return false;
        const double n = double(center.size());
        const Eigen::VectorXd b = shape * g / w;
        center -= b / (n + 1.0);
        if (center.size() == 1) {
            shape *= 0.25; // one dimension: halve the interval
        } else {
            shape = (n * n / (n * n - 1.0)) * (shape - (2.0 / (n + 1.0)) * b * b.transpose());
            shape = 0.5 * (shape + shape.transpose());
        }
        ++iteration;
        return true;
    }

    bool positive_definite() const {
        Eigen::LLT<Eigen::MatrixXd> llt(shape);
        return llt.info() == Eigen::Success;
    }
};

namespace detail {

// Uplink slot needed by a user to reach `rate` given tau_0: solves
// tau log2(1 + gamma tau_0 / tau) = rate.  +inf when the rate is out of reach
// (the rate saturates at gamma tau_0 / ln 2 as tau grows).
inline double slot_for_rate(double gamma, double tau0, double rate) {
    if (rate <= 0.0)
        return 0.0;
    const double energy = gamma * tau0;
    const double q = rate * ln2 / energy; // log(1 + y) / y = q, y = energy / tau
    if (!(energy > 0.0) || !(q < 1.0))
        return std::numeric_limits<double>::infinity();
    // phi(s) = log1p(e^s) e^{-s} decreases from 1 to 0 over s in R
    auto phi = [q](double s) {
        const double y = std::exp(s);
        return std::log1p(y) / y - q;
    };
    double lo = -60.0, hi = 700.0;
    if (phi(lo) <= 0.0)
        return energy / std::exp(lo);
    std::uintmax_t iters = 200;
    auto [a, b] = boost::math::tools::toms748_solve(phi, lo, hi, boost::math::tools::eps_tolerance<double>(),
                                                    iters);
    return energy / std::exp(0.5 * (a + b));
}

// Total block time needed to serve `targets` when the energy slot is tau0.
inline double block_time(const NetworkInstance& inst, std::span<const double> targets, double tau0) {
    double total = tau0;
    for (std::size_t i = 0; i < inst.users(); ++i)
        total += slot_for_rate(inst.gamma(i), tau0, targets[i]);
    return total;
}

} // namespace detail

/// Shortest schedule serving `targets`, rescaled onto the unit block.  The
/// feasible region {tau : R_i(tau) >= r_i} is convex, so the needed block time
/// is convex in tau_0 and a Brent search finds its minimum.  Rates are
/// homogeneous of degree one in tau, so the rescaled schedule serves r_i / T.
/// Returns nullopt when some positive target belongs to a zero-SNR user.
inline std::optional<std::pair<TimeAllocation, double>> min_time_allocation(const NetworkInstance& instance,
                                                                            std::span<const double> targets) {
    const std::size_t K = instance.users();
    double tau0_min = 0.0;
    bool any = false;
    for (std::size_t i = 0; i < K; ++i) {
        if (targets[i] <= 0.0)
            continue;
        if (instance.gamma(i) <= 0.0)
            return std::nullopt;
        tau0_min = std::max(tau0_min, targets[i] * ln2 / instance.gamma(i));
        any = true;
    }
    if (!any)
        return std::pair{TimeAllocation::equal(K), 0.0};

    auto total = [&](double t0) { return detail::block_time(instance, targets, t0); };
    const double lo = tau0_min * (1.0 + 1e-12);
    auto [t0, T] = boost::math::tools::brent_find_minima(total, lo, lo + 1.0, std::numeric_limits<double>::digits);
    std::vector<double> tau(K + 1, 0.0);
    tau[0] = t0 / T;
    for (std::size_t i = 0; i < K; ++i)
        tau[i + 1] = detail::slot_for_rate(instance.gamma(i), t0, targets[i]) / T;
    return std::pair{TimeAllocation(std::move(tau)), T};
}

/// Trim every user down to the common level min_i R_i / beta_i, then stretch
/// the schedule back to the full block.  Afterwards R_i / beta_i is the same
/// for all users and sum tau = 1.
inline TimeAllocation equalize_rates(const NetworkInstance& instance, const TimeAllocation& alloc,
                                     std::span<const double> beta) {
    const std::size_t K = instance.users();
    const auto rep = evaluate_rates(instance, alloc);
    double level = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < K; ++i)
        level = std::min(level, rep.per_user_rates[i] / beta[i]);

    std::vector<double> tau(K + 1, 0.0);
    tau[0] = alloc.dl();
    if (!(level > 0.0)) {
        // nobody can be served: spend the block on energy
        tau[0] = 1.0;
        return TimeAllocation(std::move(tau));
    }
    double total = tau[0];
    for (std::size_t i = 0; i < K; ++i) {
        const double need = detail::slot_for_rate(instance.gamma(i), alloc.dl(), beta[i] * level);
        tau[i + 1] = std::min(need, alloc.ul(i));
        total += tau[i + 1];
    }
    for (double& t : tau)
        t /= total;
    return TimeAllocation(std::move(tau));
}

struct FeasibilityResult {
    bool feasible = false;
    std::optional<Weights> certificate;          // lambda with G(lambda) > 0 when infeasible
    std::optional<TimeAllocation> allocation;    // serves the targets when feasible
    int iterations = 0;
    double dual_bound = 0.0;                     // upper bound on max G over the search region
};

/// Ellipsoid search for lambda >= 0 with G(lambda) > 0.
///
/// Start: ball of radius 10 K around (1/K, ..., 1/K).  Centers with a negative
/// coordinate get a constraint cut.  Otherwise G is evaluated; a positive value
/// ends the search (infeasible).  An allocation meeting every target also ends
/// it (feasible, primal certificate).  Cuts only discard points where G is below
/// its value at the cut center, so G(center) + sqrt(v^T P v) bounds G on
/// everything not yet discarded; the search ends feasible once that bound drops
/// under `ellipsoid_gap`.
inline FeasibilityResult check_feasibility(const NetworkInstance& instance, std::span<const double> targets,
                                           const SolverControls& controls = {}) {
    const std::size_t K = instance.users();
    if (targets.size() != K)
        throw invalid_input("check_feasibility: targets do not match the user count");
    double target_max = 0.0;
    for (double t : targets) {
        if (!(t >= 0.0) || !std::isfinite(t))
            throw invalid_input("check_feasibility: targets must be finite and >= 0");
        target_max = std::max(target_max, t);
    }

    FeasibilityResult res;
    if (target_max == 0.0) {
        res.feasible = true;
        res.allocation = TimeAllocation::equal(K);
        return res;
    }
    for (std::size_t i = 0; i < K; ++i)
        if (targets[i] > 0.0 && instance.gamma(i) <= 0.0) {
            std::vector<double> l(K, 0.0);
            l[i] = 1.0;
            res.certificate = Weights(std::move(l));
            res.dual_bound = targets[i];
            return res;
        }

    const double n = double(K);
    auto ell = EllipsoidState::ball(Eigen::VectorXd::Constant(Eigen::Index(K), 1.0 / n), 10.0 * n);
    const int cap = controls.ellipsoid_cap(K);
    // G values this small are rounding noise in the rates
    const double noise = 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, target_max);

    Eigen::VectorXd g = Eigen::VectorXd::Zero(Eigen::Index(K));
    double best_bound = std::numeric_limits<double>::infinity();
    for (int it = 0; it < cap; ++it) {
        res.iterations = it + 1;
        Eigen::Index worst;
        if (ell.center.minCoeff(&worst) < 0.0) {
            g.setZero();
            g(worst) = -1.0;
            ell.cut(g);
            continue;
        }
        std::vector<double> lam(ell.center.data(), ell.center.data() + K);
        auto d = dual_value(instance, lam, targets, controls);
        const double scale = std::max(1.0, ell.center.lpNorm<1>());
        if (d.value > noise * scale) {
            res.certificate = Weights(std::move(lam));
            res.dual_bound = d.value;
            return res;
        }
        if (std::all_of(d.subgradient.begin(), d.subgradient.end(), [](double v) { return v >= 0.0; })) {
            res.feasible = true;
            res.allocation = d.allocation;
            res.dual_bound = 0.0;
            return res;
        }
        for (std::size_t i = 0; i < K; ++i)
            g(Eigen::Index(i)) = d.subgradient[i];
        const double bound = d.value + ell.width(g);
        best_bound = std::min(best_bound, bound);
        if (bound <= controls.ellipsoid_gap) {
            res.feasible = true;
            res.dual_bound = std::max(bound, 0.0);
            auto built = min_time_allocation(instance, targets);
            res.allocation = built->first;
            return res;
        }
        ell.cut(g);
    }
    std::ostringstream os;
    os << "check_feasibility: ellipsoid reached " << cap << " iterations without a certificate";
    throw iteration_limit(os.str(), 0.0, best_bound);
}

struct CommonSolution {
    double common_rate = 0.0;  // common rate, or the profile's sum rate
    TimeAllocation allocation;
    ThroughputReport report;
    int bisection_iters = 0;
    bool converged = false;
    bool degenerate = false;   // some user has zero SNR, so the common rate is 0
    double r_min = 0.0;        // final bisection bracket
    double r_max = 0.0;
    int ellipsoid_iters = 0;   // summed over all feasibility checks
    int unresolved_checks = 0; // feasibility checks that hit the ellipsoid cap
};

namespace detail {

inline CommonSolution bisect_profile(const NetworkInstance& instance, std::span<const double> beta,
                                     const SolverControls& controls, std::optional<double> r_max_init) {
    controls.validate();
    const std::size_t K = instance.users();
    if (!instance.any_positive())
        throw degenerate_instance("common-throughput: every effective SNR is zero");

    if (std::any_of(instance.gamma().begin(), instance.gamma().end(), [](double g) { return g <= 0.0; })) {
        std::vector<double> tau(K + 1, 0.0);
        tau[0] = 1.0;
        TimeAllocation alloc(std::move(tau));
        CommonSolution s{0.0, alloc, evaluate_rates(instance, alloc)};
        s.converged = true;
        s.degenerate = true;
        return s;
    }

    // A little headroom so that K = 1 (where the optimum equals the sum rate)
    // still sees an infeasible upper end.
    const double upper = r_max_init.value_or(solve_sum(instance, controls).report.sum_rate +
                                             10.0 * controls.bisection_tol);
    if (!(upper > 0.0))
        throw invalid_input("r_max_init must be > 0");

    double r_min = 0.0;
    double r_max = upper;
    TimeAllocation feasible_alloc = TimeAllocation::equal(K);
    CommonSolution sol{0.0, feasible_alloc, evaluate_rates(instance, feasible_alloc)};
    std::vector<double> targets(K);
    bool saw_infeasible = false;
    while (r_max - r_min >= controls.bisection_tol) {
        const double level = 0.5 * (r_min + r_max);
        for (std::size_t i = 0; i < K; ++i)
            targets[i] = beta[i] * level;
        ++sol.bisection_iters;
        bool feasible = false;
        try {
            auto fr = check_feasibility(instance, targets, controls);
            sol.ellipsoid_iters += fr.iterations;
            feasible = fr.feasible;
            if (feasible)
                feasible_alloc = *fr.allocation;
        } catch (const iteration_limit&) {
            // no certificate either way: keep the bracket's lower end certified
            ++sol.unresolved_checks;
        }
        if (feasible) {
            r_min = level;
        } else {
            r_max = level;
            saw_infeasible = true;
        }
    }
    if (!saw_infeasible) {
        std::ostringstream os;
        os << "r_max_init = " << upper << " is not above the optimum; use a larger initial upper bound";
        throw invalid_input(os.str());
    }

    sol.allocation = equalize_rates(instance, feasible_alloc, beta);
    sol.report = evaluate_rates(instance, sol.allocation);
    double level = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < K; ++i)
        level = std::min(level, sol.report.per_user_rates[i] / beta[i]);
    sol.common_rate = level;
    sol.r_min = r_min;
    sol.r_max = r_max;
    sol.converged = true;
    return sol;
}

} // namespace detail

/// Maximum common throughput: bisection on the common level with the
/// ellipsoid feasibility test, then rate equalization of the last feasible
/// allocation.  Default upper bound is the maximum sum rate (plus 10 delta).
inline CommonSolution solve_common(const NetworkInstance& instance, const SolverControls& controls = {},
                                   std::optional<double> r_max_init = std::nullopt) {
    const auto beta = std::vector<double>(instance.users(), 1.0);
    return detail::bisect_profile(instance, beta, controls, r_max_init);
}

/// Maximum sum throughput subject to R_i >= beta_i * R for a rate profile
/// beta.  The returned common_rate is that sum R.
inline CommonSolution solve_rate_profile(const NetworkInstance& instance, const RateProfile& profile,
                                         const SolverControls& controls = {},
                                         std::optional<double> r_max_init = std::nullopt) {
    if (profile.beta.size() != instance.users())
        throw invalid_input("rate profile and instance have different user counts");
    return detail::bisect_profile(instance, profile.beta, controls, r_max_init);
}

struct RegionPoint {
    std::vector<double> weights;
    std::vector<double> rates;
    TimeAllocation allocation;
};

/// Weighted sum-throughput sweep.  For two users the weights run over
/// (cos theta, sin theta), theta in [0, pi/2], tracing the boundary of the
/// achievable throughput region.  With other user counts the first user gets
/// cos theta and every other user sin theta.
inline std::vector<RegionPoint> throughput_region(const NetworkInstance& instance, int n_weights,
                                                  const SolverControls& controls = {}) {
    if (n_weights < 2)
        throw invalid_input("throughput_region: n_weights must be >= 2");
    const std::size_t K = instance.users();
    std::vector<RegionPoint> out;
    out.reserve(std::size_t(n_weights));
    for (int j = 0; j < n_weights; ++j) {
        const double theta = 0.5 * std::numbers::pi * double(j) / double(n_weights - 1);
        double c = std::cos(theta), s = std::sin(theta);
        if (j == 0)
            s = 0.0;
        if (j == n_weights - 1)
            c = 0.0;
        std::vector<double> lam(K, s);
        lam[0] = c;
        if (K == 1)
            lam[0] = 1.0;
        Weights w(lam);
        TimeAllocation alloc = detail::active_users(instance, w).empty()
                                   ? TimeAllocation::equal(K)
                                   : solve_weighted_sum(instance, w, controls).allocation;
        auto rep = evaluate_rates(instance, alloc);
        out.push_back(RegionPoint{std::move(lam), std::move(rep.per_user_rates), std::move(alloc)});
    }
    return out;
}

} // namespace wpcn

#endif
