#include "wsnsim/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "wsnsim/errors.hpp"

namespace wsnsim {

namespace {

constexpr std::uint64_t kDeployStream = 0;
constexpr std::uint64_t kElectionStream = 1;

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void validate(const SimConfig& c) {
    if (c.node_count < 1) throw ConfigError("node_count must be >= 1");
    if (c.rounds < 1) throw ConfigError("rounds must be >= 1");
    if (!(c.initial_energy > 0)) throw ConfigError("initial_energy must be positive");
    if (!(c.width > 0) || !(c.height > 0)) throw ConfigError("area must be positive");
    if (!(c.resolved_radio_range() > 0)) throw ConfigError("radio_range must be positive");
    if (!(c.radio.e_elec > 0) || !(c.radio.eps_amp > 0) || !(c.radio.e_da > 0))
        throw ConfigError("radio constants must be positive");
    if (c.radio.packet_bits <= 0) throw ConfigError("packet_bits must be positive");
    if (!(c.leach.p > 0 && c.leach.p < 1)) throw ConfigError("leach.p must lie in (0,1)");
    if (!(c.eeds.ch_fraction > 0 && c.eeds.ch_fraction < 1))
        throw ConfigError("eeds.ch_fraction must lie in (0,1)");
    if (!(c.f3n.ch_fraction > 0 && c.f3n.ch_fraction < 1))
        throw ConfigError("f3n.ch_fraction must lie in (0,1)");
    if (c.eeds.qualification_threshold < 0 || c.eeds.qualification_threshold > 1)
        throw ConfigError("eeds.qualification_threshold must lie in [0,1]");
    if (c.e_rate_window < 1) throw ConfigError("e_rate_window must be >= 1");
}

}  // namespace

std::string protocol_name(ProtocolKind kind) {
    switch (kind) {
        case ProtocolKind::Leach: return "leach";
        case ProtocolKind::Eeds: return "eeds";
        case ProtocolKind::F3n: return "f3n";
    }
    return "unknown";
}

ProtocolKind protocol_from_name(const std::string& name) {
    if (name == "leach") return ProtocolKind::Leach;
    if (name == "eeds") return ProtocolKind::Eeds;
    if (name == "f3n") return ProtocolKind::F3n;
    throw ConfigError("unknown protocol '" + name + "' (expected leach|eeds|f3n)");
}

double SimConfig::resolved_radio_range() const {
    return radio_range ? *radio_range : std::max(width, height) / 4.0;
}

Position SimConfig::resolved_bs() const {
    return bs_pos ? *bs_pos : Position{width / 2.0, height * 1.5};
}

Topology deploy(const SimConfig& config) {
    validate(config);
    SplitMix64 rng = make_stream(config.seed, kDeployStream);
    Topology t;
    t.width = config.width;
    t.height = config.height;
    t.bs_pos = config.resolved_bs();
    t.radio_range = config.resolved_radio_range();
    for (int i = 0; i < config.node_count; ++i) {
        Node n;
        n.id = i;
        n.pos = {rng.uniform(0.0, config.width), rng.uniform(0.0, config.height)};
        n.residual_energy = config.initial_energy;
        n.alive = true;
        t.nodes.push_back(n);
    }
    return t;
}

double residual_variance(const std::vector<Node>& nodes) {
    if (nodes.empty()) throw InputError("residual_variance: no nodes");
    double mean = 0.0;
    for (const auto& n : nodes) mean += n.residual_energy;
    mean /= static_cast<double>(nodes.size());
    double var = 0.0;
    for (const auto& n : nodes) {
        const double d = n.residual_energy - mean;
        var += d * d;
    }
    return var / static_cast<double>(nodes.size());
}

std::unique_ptr<Protocol> make_protocol(const SimConfig& config) {
    switch (config.protocol) {
        case ProtocolKind::Leach: return std::make_unique<LeachProtocol>(config.leach);
        case ProtocolKind::Eeds: return std::make_unique<EedsProtocol>(config.eeds);
        case ProtocolKind::F3n: return std::make_unique<F3nProtocol>(config.f3n);
    }
    throw ConfigError("unknown protocol kind");
}

Simulation::Simulation(const SimConfig& config) : Simulation(config, deploy(config)) {}

Simulation::Simulation(const SimConfig& config, Topology topology)
    : config_(config),
      topology_(std::move(topology)),
      protocol_(make_protocol(config)),
      election_rng_(make_stream(config.seed, kElectionStream)),
      history_(config.e_rate_window) {
    validate(config_);
}

bool Simulation::step() {
    if (topology_.alive_count() == 0) return false;

    double residual_before = 0.0;
    for (const auto& n : topology_.nodes) residual_before += n.residual_energy;

    std::vector<int> alive_at_start;
    for (const auto& n : topology_.nodes)
        if (n.alive) alive_at_start.push_back(n.id);

    build_encounter_graph(topology_);  // refreshes queue_size

    NormalizedMap normalized;
    if (protocol_->needs_features()) {
        auto features = compute_features(topology_, history_, config_.radio);
        normalized = normalize_features(features, topology_, config_.initial_energy);
    }

    last_heads_ = protocol_->elect(next_round_, topology_, normalized, election_rng_);
    last_clusters_ = form_clusters(last_heads_, topology_);
    const ChargeLedger ledger = apply_round_charges(topology_, last_clusters_, config_.radio);

    std::map<int, double> spent;
    for (int id : alive_at_start) spent[id] = 0.0;
    for (const auto& [id, joules] : ledger.per_node) spent[id] = joules;
    history_.record_round(spent);

    double residual_after = 0.0;
    for (const auto& n : topology_.nodes) residual_after += n.residual_energy;

    RoundMetrics m;
    m.round = next_round_ + 1;
    m.alive = topology_.alive_count();
    m.total_residual = residual_after;
    m.residual_variance = residual_variance(topology_.nodes);
    m.ch_count = static_cast<int>(last_heads_.size());
    auto graph = build_encounter_graph(topology_);  // post-round metrics
    auto em = encounter_metrics(graph);
    m.cc = em.cc;
    m.pl = em.pl;
    m.dr = em.dr;

    metrics_.push_back(m);
    charged_.push_back(ledger.total);
    residual_drop_.push_back(residual_before - residual_after);
    ++next_round_;
    return true;
}

SimResult Simulation::run() {
    while (next_round_ < config_.rounds) {
        if (!step()) break;
    }
    SimResult result;
    result.rounds = metrics_;
    result.lifetime = lifetime_from_metrics(metrics_, config_.node_count);
    result.charged = charged_;
    result.residual_drop = residual_drop_;
    return result;
}

SimResult run_simulation(const SimConfig& config) {
    Simulation sim(config);
    return sim.run();
}

SimResult run_simulation(const SimConfig& config, Topology topology) {
    Simulation sim(config, std::move(topology));
    return sim.run();
}

LifetimeStats lifetime_from_metrics(const std::vector<RoundMetrics>& rounds, int node_count) {
    LifetimeStats stats;
    for (const auto& m : rounds) {
        if (!stats.fnd && m.alive < node_count) stats.fnd = m.round;
        if (!stats.hnd && m.alive * 2 <= node_count) stats.hnd = m.round;
        if (!stats.lnd && m.alive == 0) stats.lnd = m.round;
    }
    return stats;
}

ComparisonTable compare_runs(const SimConfig& base, const std::vector<ProtocolKind>& protocols,
                             const std::vector<std::uint64_t>& seeds) {
    if (protocols.empty() || seeds.empty())
        throw InputError("compare_runs: need at least one protocol and one seed");

    ComparisonTable table;
    for (int c = 50; c <= base.rounds; c += 50) table.checkpoints.push_back(c);
    if (table.checkpoints.empty()) table.checkpoints.push_back(base.rounds);

    for (ProtocolKind kind : protocols) {
        ComparisonTable::Row row;
        row.protocol = protocol_name(kind);
        row.mean_variance.assign(table.checkpoints.size(), 0.0);
        double sum_fnd = 0.0, sum_hnd = 0.0, sum_lnd = 0.0;

        for (std::uint64_t seed : seeds) {
            SimConfig cfg = base;
            cfg.protocol = kind;
            cfg.seed = seed;
            RunSummary summary;
            summary.protocol = kind;
            summary.seed = seed;
            summary.result = run_simulation(cfg);
            summary.lifetime = summary.result.lifetime;

            const double undefined = static_cast<double>(base.rounds + 1);
            sum_fnd += summary.lifetime.fnd.value_or(base.rounds + 1);
            sum_hnd += summary.lifetime.hnd.value_or(base.rounds + 1);
            sum_lnd += summary.lifetime.lnd.value_or(base.rounds + 1);
            (void)undefined;

            for (std::size_t i = 0; i < table.checkpoints.size(); ++i) {
                // A halted run means the network is fully dead: variance 0.
                double v = 0.0;
                for (const auto& m : summary.result.rounds)
                    if (m.round == table.checkpoints[i]) v = m.residual_variance;
                summary.variance_at_checkpoint.push_back(v);
                row.mean_variance[i] += v;
            }
            table.runs.push_back(std::move(summary));
        }

        const double n = static_cast<double>(seeds.size());
        row.mean_fnd = sum_fnd / n;
        row.mean_hnd = sum_hnd / n;
        row.mean_lnd = sum_lnd / n;
        for (auto& v : row.mean_variance) v /= n;
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::string metrics_to_csv(const std::vector<RoundMetrics>& rounds) {
    std::ostringstream os;
    os << "round,alive,total_residual_j,residual_variance_j2,ch_count,cc,pl,dr\n";
    for (const auto& m : rounds) {
        os << m.round << ',' << m.alive << ',' << fmt_double(m.total_residual) << ','
           << fmt_double(m.residual_variance) << ',' << m.ch_count << ',' << fmt_double(m.cc)
           << ',' << (m.pl ? fmt_double(*m.pl) : std::string()) << ',' << fmt_double(m.dr)
           << '\n';
    }
    return os.str();
}

std::string comparison_to_csv(const ComparisonTable& table) {
    std::ostringstream os;
    os << "protocol,mean_fnd,mean_hnd,mean_lnd";
    for (int c : table.checkpoints) os << ",var_r" << c;
    os << '\n';
    for (const auto& row : table.rows) {
        os << row.protocol << ',' << fmt_double(row.mean_fnd) << ','
           << fmt_double(row.mean_hnd) << ',' << fmt_double(row.mean_lnd);
        for (double v : row.mean_variance) os << ',' << fmt_double(v);
        os << '\n';
    }
    return os.str();
}

std::string comparison_to_text(const ComparisonTable& table) {
    std::ostringstream os;
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%-8s %10s %10s %10s", "protocol", "mean_fnd",
                  "mean_hnd", "mean_lnd");
    os << buf;
    for (int c : table.checkpoints) {
        std::snprintf(buf, sizeof(buf), " %12s", ("var_r" + std::to_string(c)).c_str());
        os << buf;
    }
    os << '\n';
    for (const auto& row : table.rows) {
        std::snprintf(buf, sizeof(buf), "%-8s %10.2f %10.2f %10.2f", row.protocol.c_str(),
                      row.mean_fnd, row.mean_hnd, row.mean_lnd);
        os << buf;
        for (double v : row.mean_variance) {
            std::snprintf(buf, sizeof(buf), " %12.4e", v);
            os << buf;
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace wsnsim
