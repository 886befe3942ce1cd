#pragma once

#include <cstdint>

namespace wsnsim {

// First-order radio model: electronics cost per bit on both ends, d^2
// amplifier cost on the transmit side, per-signal aggregation cost at
// the cluster head. Defaults are the classic LEACH-lineage constants.
struct RadioParams {
    double e_elec = 50e-9;     // J/bit
    double eps_amp = 100e-12;  // J/bit/m^2
    double e_da = 5e-9;        // J/bit/signal
    std::int64_t packet_bits = 2000;
};

double tx_cost(const RadioParams& p, std::int64_t bits, double d);
double rx_cost(const RadioParams& p, std::int64_t bits);
double aggregation_cost(const RadioParams& p, std::int64_t bits, int signals);

}  // namespace wsnsim
