#include "wsnsim/energy.hpp"

#include "wsnsim/errors.hpp"

namespace wsnsim {

double tx_cost(const RadioParams& p, std::int64_t bits, double d) {
    if (bits < 0) throw InputError("tx_cost: negative bit count");
    if (d < 0) throw InputError("tx_cost: negative distance");
    return p.e_elec * static_cast<double>(bits) + p.eps_amp * static_cast<double>(bits) * d * d;
}

double rx_cost(const RadioParams& p, std::int64_t bits) {
    if (bits < 0) throw InputError("rx_cost: negative bit count");
    return p.e_elec * static_cast<double>(bits);
}

double aggregation_cost(const RadioParams& p, std::int64_t bits, int signals) {
    if (bits < 0) throw InputError("aggregation_cost: negative bit count");
    if (signals < 1) throw InputError("aggregation_cost: needs at least one signal");
    return p.e_da * static_cast<double>(bits) * static_cast<double>(signals);
}

}  // namespace wsnsim
