#pragma once

#include <cstdint>

namespace e3dsim {

/// First-order radio model: transmitting k bits over d meters costs
/// e_elec*k + eps_amp*k*d^2, receiving k bits costs e_elec*k.
struct RadioModel {
    double e_elec = 50e-9;     // J/bit, electronics (both tx and rx)
    double eps_amp = 100e-12;  // J/bit/m^2, amplifier
    std::uint32_t data_bits = 2000;
    std::uint32_t ctrl_bits = 64;
};

double tx_cost(const RadioModel& m, std::uint64_t bits, double dist_m);
double rx_cost(const RadioModel& m, std::uint64_t bits);

enum class EnergyCategory { Tx, Rx, Ctrl };

enum class DrainOutcome {
    Ok,            // spent, still alive
    SpentAndDied,  // spent down to exactly zero; the action itself succeeded
    Rejected,      // not enough energy: nothing spent, node is now dead
};

/// Battery with a per-category spend ledger. The residual is derived from the
/// ledger, so initial == residual + spent_tx + spent_rx + spent_ctrl holds to
/// a couple of ulps at all times, and the residual never increases.
class Battery {
public:
    explicit Battery(double initial_joules);

    double initial() const { return initial_; }
    double residual() const { return initial_ - (spent_tx_ + spent_rx_ + spent_ctrl_); }
    bool alive() const { return alive_; }
    double spent_tx() const { return spent_tx_; }
    double spent_rx() const { return spent_rx_; }
    double spent_ctrl() const { return spent_ctrl_; }
    double spent_total() const { return spent_tx_ + spent_rx_ + spent_ctrl_; }

    /// Spend `amount` joules against the given category. If the battery holds
    /// less than `amount`, nothing is spent and the node dies with its
    /// residual frozen. Draining a dead battery is a simulator bug and throws
    /// std::logic_error.
    DrainOutcome drain(double amount, EnergyCategory category);

private:
    double initial_;
    double spent_tx_ = 0.0;
    double spent_rx_ = 0.0;
    double spent_ctrl_ = 0.0;
    bool alive_ = true;
};

}  // namespace e3dsim
