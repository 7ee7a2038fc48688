#include "e3dsim/energy.hpp"

#include <stdexcept>

namespace e3dsim {

double tx_cost(const RadioModel& m, std::uint64_t bits, double dist_m) {
    const double k = static_cast<double>(bits);
    return m.e_elec * k + m.eps_amp * k * dist_m * dist_m;
}

double rx_cost(const RadioModel& m, std::uint64_t bits) {
    return m.e_elec * static_cast<double>(bits);
}

Battery::Battery(double initial_joules) : initial_(initial_joules) {
    if (!(initial_joules > 0.0)) {
        throw std::invalid_argument("Battery: initial energy must be positive");
    }
}

DrainOutcome Battery::drain(double amount, EnergyCategory category) {
    if (!alive_) {
        throw std::logic_error("Battery::drain on a dead node (simulator bug)");
    }
    if (amount < 0.0) {
        throw std::logic_error("Battery::drain with negative amount");
    }
    if (amount > residual()) {
        alive_ = false;  // dies without spending; residual frozen
        return DrainOutcome::Rejected;
    }
    switch (category) {
        case EnergyCategory::Tx: spent_tx_ += amount; break;
        case EnergyCategory::Rx: spent_rx_ += amount; break;
        case EnergyCategory::Ctrl: spent_ctrl_ += amount; break;
    }
    if (residual() <= 0.0) {
        alive_ = false;  // spent to exactly zero: the action succeeded, then death
        return DrainOutcome::SpentAndDied;
    }
    return DrainOutcome::Ok;
}

}  // namespace e3dsim
