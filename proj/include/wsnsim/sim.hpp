#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wsnsim/protocols.hpp"

namespace wsnsim {

enum class ProtocolKind { Leach, Eeds, F3n };

std::string protocol_name(ProtocolKind kind);
ProtocolKind protocol_from_name(const std::string& name);

struct SimConfig {
    ProtocolKind protocol = ProtocolKind::Leach;
    int node_count = 30;
    double width = 60.0;
    double height = 60.0;
    double initial_energy = 0.1;  // J per node
    int rounds = 500;
    std::uint64_t seed = 0;
    RadioParams radio;
    std::optional<double> radio_range;  // default: max(width, height) / 4
    std::optional<Position> bs_pos;     // default: (width/2, 1.5*height)
    LeachParams leach;
    EedsParams eeds;
    F3nParams f3n;
    int e_rate_window = 5;

    double resolved_radio_range() const;
    Position resolved_bs() const;
};

struct RoundMetrics {
    int round = 0;  // 1-based
    int alive = 0;
    double total_residual = 0.0;
    double residual_variance = 0.0;
    int ch_count = 0;
    double cc = 0.0;
    std::optional<double> pl;
    double dr = 0.0;
};

struct LifetimeStats {
    std::optional<int> fnd;  // first node death
    std::optional<int> hnd;  // half nodes dead
    std::optional<int> lnd;  // last node death
};

struct SimResult {
    std::vector<RoundMetrics> rounds;
    LifetimeStats lifetime;
    std::vector<double> charged;        // charge ledger total per executed round
    std::vector<double> residual_drop;  // total residual decrease per executed round
};

// Uniform deployment over the area, all nodes at initial energy. Node
// positions come from the seed's deployment stream only.
Topology deploy(const SimConfig& config);

// Population variance over all deployed nodes (dead nodes count at 0 J).
double residual_variance(const std::vector<Node>& nodes);

std::unique_ptr<Protocol> make_protocol(const SimConfig& config);

/// One protocol run: elect -> cluster -> charge -> metrics, once per round,
/// halting early when every node is dead. Exposed as a class so tests can
/// drive single rounds against hand-built topologies.
class Simulation {
public:
    explicit Simulation(const SimConfig& config);
    Simulation(const SimConfig& config, Topology topology);

    // Executes one round; false when no node was alive to run it.
    bool step();

    const Topology& topology() const { return topology_; }
    Topology& topology() { return topology_; }
    const std::vector<RoundMetrics>& metrics() const { return metrics_; }
    const std::vector<double>& charged() const { return charged_; }
    const std::vector<double>& residual_drop() const { return residual_drop_; }
    const std::vector<int>& last_heads() const { return last_heads_; }
    const std::vector<Cluster>& last_clusters() const { return last_clusters_; }

    SimResult run();  // steps until `rounds` or extinction

private:
    SimConfig config_;
    Topology topology_;
    std::unique_ptr<Protocol> protocol_;
    SplitMix64 election_rng_;
    EnergyHistory history_;
    int next_round_ = 0;  // 0-based
    std::vector<RoundMetrics> metrics_;
    std::vector<double> charged_;
    std::vector<double> residual_drop_;
    std::vector<int> last_heads_;
    std::vector<Cluster> last_clusters_;
};

SimResult run_simulation(const SimConfig& config);
SimResult run_simulation(const SimConfig& config, Topology topology);

LifetimeStats lifetime_from_metrics(const std::vector<RoundMetrics>& rounds, int node_count);

// --- cross-protocol comparison ------------------------------------------

struct RunSummary {
    ProtocolKind protocol;
    std::uint64_t seed = 0;
    LifetimeStats lifetime;
    std::vector<double> variance_at_checkpoint;
    SimResult result;
};

struct ComparisonTable {
    std::vector<int> checkpoints;  // rounds 50, 100, ..., 500 (clipped to config)
    struct Row {
        std::string protocol;
        double mean_fnd = 0.0;
        double mean_hnd = 0.0;
        double mean_lnd = 0.0;
        std::vector<double> mean_variance;
    };
    std::vector<Row> rows;
    std::vector<RunSummary> runs;
};

// Runs every (protocol, seed) pair on otherwise identical configs.
// Undefined lifetime marks average as rounds+1.
ComparisonTable compare_runs(const SimConfig& base, const std::vector<ProtocolKind>& protocols,
                             const std::vector<std::uint64_t>& seeds);

// --- CSV ---------------------------------------------------------------

std::string metrics_to_csv(const std::vector<RoundMetrics>& rounds);
std::string comparison_to_csv(const ComparisonTable& table);
std::string comparison_to_text(const ComparisonTable& table);

}  // namespace wsnsim
