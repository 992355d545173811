#ifndef WPCN_MODEL_HPP
#define WPCN_MODEL_HPP

// Harvest-then-transmit throughput model.
//
// A block of unit length is split into a downlink energy slot tau_0 and K
// uplink TDMA slots tau_1..tau_K.  User i harvests zeta*P_A*h_i*tau_0 during
// the downlink slot and spends it in its own uplink slot, which yields
//
//     R_i(tau) = tau_i * log2(1 + gamma_i * tau_0 / tau_i)   [bps/Hz]
//
// with the effective SNR gamma_i = eta_i*zeta*h_i*g_i*P_A / (Gamma*sigma^2).
// Everything here is in linear units; dB conversions live at the config
// boundary.

#include <wpcn/errors.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace wpcn {

inline constexpr double ln2 = 0.693147180559945309417232121458176568;

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }
inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

struct PhysicalParams {
    double transmit_power_hap = 0.1;       // P_A [W]
    double harvest_efficiency = 0.5;       // zeta
    double snr_gap = 9.549925860214358;    // Gamma, linear (9.8 dB)
    double noise_power = 1e-13;            // sigma^2 [W]
    std::vector<double> energy_use_fraction; // eta_i; empty means 1 for every user
    double bandwidth_hz = 1e6;             // only used to report bps

    double eta(std::size_t user) const {
        return energy_use_fraction.empty() ? 1.0 : energy_use_fraction.at(user);
    }

    void validate() const {
        if (!(transmit_power_hap > 0.0) || !std::isfinite(transmit_power_hap))
            throw invalid_input("transmit_power_hap must be > 0");
        if (!(noise_power > 0.0) || !std::isfinite(noise_power))
            throw invalid_input("noise_power must be > 0");
        if (!(snr_gap >= 1.0) || !std::isfinite(snr_gap))
            throw invalid_input("snr_gap must be >= 1 (linear)");
        if (!(harvest_efficiency > 0.0 && harvest_efficiency < 1.0))
            throw invalid_input("harvest_efficiency must lie in (0, 1)");
        for (double e : energy_use_fraction)
            if (!(e > 0.0 && e <= 1.0))
                throw invalid_input("energy_use_fraction entries must lie in (0, 1]");
        if (!(bandwidth_hz > 0.0))
            throw invalid_input("bandwidth_hz must be > 0");
    }
};

struct ChannelRealization {
    std::vector<double> dl_gains; // h_i
    std::vector<double> ul_gains; // g_i
    std::vector<double> distances; // optional metadata, metres

    std::size_t size() const { return dl_gains.size(); }

    void validate() const {
        if (dl_gains.empty())
            throw invalid_input("channel realization needs at least one user");
        if (dl_gains.size() != ul_gains.size())
            throw invalid_input("dl_gains and ul_gains differ in length");
        if (!distances.empty() && distances.size() != dl_gains.size())
            throw invalid_input("distances length does not match the gains");
        auto bad = [](double x) { return !(x >= 0.0) || !std::isfinite(x); };
        if (std::any_of(dl_gains.begin(), dl_gains.end(), bad) ||
            std::any_of(ul_gains.begin(), ul_gains.end(), bad))
            throw invalid_input("channel gains must be finite and >= 0");
        for (double d : distances)
            if (!(d > 0.0))
                throw invalid_input("distances must be > 0");
    }
};

/// Per-block problem data.  The effective SNR vector is all any solver needs.
class NetworkInstance {
public:
    struct Provenance {
        PhysicalParams params;
        ChannelRealization channels;
    };

    explicit NetworkInstance(std::vector<double> gamma,
                             std::optional<Provenance> source = std::nullopt)
        : gamma_(std::move(gamma)), source_(std::move(source)) {
        if (gamma_.empty())
            throw invalid_input("network instance needs at least one user");
        for (std::size_t i = 0; i < gamma_.size(); ++i)
            if (!(gamma_[i] >= 0.0) || !std::isfinite(gamma_[i])) {
                std::ostringstream os;
                os << "effective SNR of user " << i + 1 << " is not a finite value >= 0";
                throw invalid_input(os.str());
            }
    }

    std::size_t users() const { return gamma_.size(); }
    std::span<const double> gamma() const { return gamma_; }
    double gamma(std::size_t user) const { return gamma_[user]; }
    const std::optional<Provenance>& source() const { return source_; }

    double total_gamma() const { return std::accumulate(gamma_.begin(), gamma_.end(), 0.0); }
    bool any_positive() const {
        return std::any_of(gamma_.begin(), gamma_.end(), [](double g) { return g > 0.0; });
    }

private:
    std::vector<double> gamma_;
    std::optional<Provenance> source_;
};

/// tau = [tau_0, tau_1, ..., tau_K], nonnegative, sum <= 1 (+1e-9 slack).
class TimeAllocation {
public:
    static constexpr double sum_slack = 1e-9;

    explicit TimeAllocation(std::vector<double> tau) : tau_(std::move(tau)) {
        if (tau_.size() < 2)
            throw invalid_input("time allocation needs tau_0 and at least one user slot");
        for (double t : tau_)
            if (!(t >= 0.0) || !std::isfinite(t))
                throw invalid_input("time allocation entries must be finite and >= 0");
        if (total() > 1.0 + sum_slack)
            throw invalid_input("time allocation exceeds the unit block");
    }

    /// Equal time allocation: every slot gets 1/(K+1).
    static TimeAllocation equal(std::size_t users) {
        return TimeAllocation(std::vector<double>(users + 1, 1.0 / double(users + 1)));
    }

    std::size_t users() const { return tau_.size() - 1; }
    double dl() const { return tau_[0]; }
    /// Uplink slot of the zero-based user index.
    double ul(std::size_t user) const { return tau_[user + 1]; }
    double operator[](std::size_t slot) const { return tau_[slot]; }
    std::span<const double> values() const { return tau_; }
    double total() const { return std::accumulate(tau_.begin(), tau_.end(), 0.0); }

private:
    std::vector<double> tau_;
};

struct ThroughputReport {
    std::vector<double> per_user_rates; // bps/Hz, zero-based user index
    double sum_rate = 0.0;
    double min_rate = 0.0;
    TimeAllocation allocation;
};

/// Rate of one user with the R = 0 convention at tau_i = 0 (the limit tau_i -> 0+).
inline double user_rate(double gamma, double tau0, double tau_i) {
    if (tau_i <= 0.0 || tau0 <= 0.0 || gamma <= 0.0)
        return 0.0;
    return tau_i * std::log1p(gamma * tau0 / tau_i) / ln2;
}

inline ThroughputReport make_report(std::vector<double> rates, TimeAllocation alloc) {
    ThroughputReport r{std::move(rates), 0.0, 0.0, std::move(alloc)};
    r.sum_rate = std::accumulate(r.per_user_rates.begin(), r.per_user_rates.end(), 0.0);
    r.min_rate = *std::min_element(r.per_user_rates.begin(), r.per_user_rates.end());
    return r;
}

inline NetworkInstance effective_snr(const PhysicalParams& params,
                                     const ChannelRealization& channels) {
    params.validate();
    channels.validate();
    if (!params.energy_use_fraction.empty() &&
        params.energy_use_fraction.size() != channels.size())
        throw invalid_input("energy_use_fraction length does not match the user count");

    const double scale = params.harvest_efficiency * params.transmit_power_hap /
                         (params.snr_gap * params.noise_power);
    std::vector<double> gamma(channels.size());
    for (std::size_t i = 0; i < gamma.size(); ++i) {
        gamma[i] = params.eta(i) * scale * channels.dl_gains[i] * channels.ul_gains[i];
        if (!std::isfinite(gamma[i])) {
            std::ostringstream os;
            os << "effective SNR of user " << i + 1 << " overflowed";
            throw invalid_input(os.str());
        }
    }
    return NetworkInstance(std::move(gamma), NetworkInstance::Provenance{params, channels});
}

/// Energy harvested by each user over a downlink slot of length tau0 (unit block).
inline std::vector<double> harvested_energy(const PhysicalParams& params,
                                            const ChannelRealization& channels, double tau0) {
    if (!(tau0 >= 0.0 && tau0 <= 1.0))
        throw invalid_input("tau0 must lie in [0, 1]");
    std::vector<double> e(channels.size());
    for (std::size_t i = 0; i < e.size(); ++i)
        e[i] = params.harvest_efficiency * params.transmit_power_hap * channels.dl_gains[i] * tau0;
    return e;
}

/// Average uplink transmit power.  A zero-length slot carrying energy has no
/// finite power; the caller should use the zero-rate limit instead.
inline double user_tx_power(double energy, double eta, double tau_i) {
    if (tau_i > 0.0)
        return eta * energy / tau_i;
    if (energy > 0.0)
        throw invalid_input("zero-length uplink slot with positive energy: power is unbounded");
    return 0.0;
}

inline ThroughputReport evaluate_rates(const NetworkInstance& instance, const TimeAllocation& alloc) {
    if (alloc.users() != instance.users())
        throw invalid_input("allocation and instance have different user counts");
    std::vector<double> rates(instance.users());
    for (std::size_t i = 0; i < rates.size(); ++i)
        rates[i] = user_rate(instance.gamma(i), alloc.dl(), alloc.ul(i));
    return make_report(std::move(rates), alloc);
}

/// Analytic Hessian of R_user over (tau_0, ..., tau_K).  Only the
/// (0,0), (0,s), (s,0), (s,s) entries are nonzero, s = user + 1.
inline Eigen::MatrixXd rate_hessian(const NetworkInstance& instance, const TimeAllocation& alloc,
                                    std::size_t user) {
    if (alloc.users() != instance.users())
        throw invalid_input("allocation and instance have different user counts");
    if (user >= instance.users())
        throw invalid_input("user index out of range");
    const double t0 = alloc.dl();
    const double ti = alloc.ul(user);
    if (!(t0 > 0.0 && ti > 0.0))
        throw invalid_input("Hessian is only defined at interior points (tau_0 > 0, tau_i > 0)");

    const std::size_t n = alloc.users() + 1;
    const std::size_t s = user + 1;
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(Eigen::Index(n), Eigen::Index(n));
    const double g = instance.gamma(user);
    const double beta = 1.0 + g * t0 / ti;
    const double c = g * g / (ln2 * beta * beta);
    H(0, 0) = -c / ti;
    H(Eigen::Index(s), Eigen::Index(s)) = -c * t0 * t0 / (ti * ti * ti);
    H(Eigen::Index(s), 0) = H(0, Eigen::Index(s)) = c * t0 / (ti * ti);
    return H;
}

} // namespace wpcn

#endif
