#pragma once

#include <deque>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "wsnsim/energy.hpp"
#include "wsnsim/fuzzy.hpp"
#include "wsnsim/network.hpp"
#include "wsnsim/rng.hpp"

namespace wsnsim {

// Raw (unnormalized) election inputs for one node.
struct NodeFeatures {
    double tr_energy = 0.0;   // J, cost of one packet to the alive-node centroid
    double r_energy = 0.0;    // J, residual
    double e_rate = 0.0;      // J/round, trailing-window mean consumption
    int q_size = 0;           // encounter degree this round
    double d_centroid = 0.0;  // m, distance to alive-node centroid
    double proximity = 0.0;   // m, distance to base station
    int neighbor_count = 0;
};

// Same features scaled into [0,1] for the fuzzy controllers.
struct NormalizedFeatures {
    double tr_energy = 0.0;
    double r_energy = 0.0;
    double e_rate = 0.0;
    double q_size = 0.0;
    double d_centroid = 0.0;
    double proximity = 0.0;
    double neighbor_count = 0.0;
};

using FeatureMap = std::map<int, NodeFeatures>;
using NormalizedMap = std::map<int, NormalizedFeatures>;

// Trailing window of per-round energy spend, one deque per node.
class EnergyHistory {
public:
    explicit EnergyHistory(int window = 5);

    void record_round(const std::map<int, double>& spent);
    double mean_rate(int id) const;  // 0 when no history yet
    int window() const { return window_; }

private:
    int window_;
    std::map<int, std::deque<double>> spend_;
};

struct LeachParams {
    double p = 0.05;  // desired CH probability, in (0,1)
};

struct EedsParams {
    double qualification_threshold = 0.5;
    double ch_fraction = 0.2;
};

struct F3nParams {
    double ch_fraction = 0.05;
};

struct Cluster {
    int head = 0;
    std::vector<int> members;
};

// --- controller construction -------------------------------------------

// Grid rule generator: one rule per combination of input terms. Each
// term contributes its index scaled to [0,1] (reversed when direction is
// negative); the consequent is the output term nearest the weighted mean
// score. |direction[i]| is the weight of input i.
std::vector<fuzzy::FuzzyRule> generate_grid_rules(
    const std::vector<fuzzy::LinguisticVariable>& inputs,
    const std::vector<int>& direction, const fuzzy::LinguisticVariable& output);

// Local qualification controller: r_energy, neighbor_count, d_centroid
// onto a 5-term qualification value (higher = better candidate).
fuzzy::FuzzyInferenceSystem make_eeds_local_fis();

// Global 144-rule cost controller over the six election variables
// (lower cost = better candidate).
fuzzy::FuzzyInferenceSystem make_eeds_global_fis();

// F3N baseline: residual power, neighbor degree, distance to centroid
// onto a chance value (higher = better candidate).
fuzzy::FuzzyInferenceSystem make_f3n_fis();

// --- features ------------------------------------------------------------

// Requires build_encounter_graph to have run on `t` this round so that
// queue_size is current. Throws when no node is alive.
FeatureMap compute_features(const Topology& t, const EnergyHistory& history,
                            const RadioParams& radio);

NormalizedMap normalize_features(const FeatureMap& features, const Topology& t,
                                 double initial_energy);

double eeds_local_qualification(const NormalizedFeatures& f,
                                const fuzzy::FuzzyInferenceSystem& local_fis);
double eeds_global_cost(const NormalizedFeatures& f,
                        const fuzzy::FuzzyInferenceSystem& global_fis);
double f3n_chance(const NormalizedFeatures& f, const fuzzy::FuzzyInferenceSystem& fis);

// --- elections -------------------------------------------------------------

std::vector<int> eeds_elect(const Topology& t, const EedsParams& params,
                            const fuzzy::FuzzyInferenceSystem& local_fis,
                            const fuzzy::FuzzyInferenceSystem& global_fis,
                            const NormalizedMap& features);

std::vector<int> f3n_elect(const Topology& t, const F3nParams& params,
                           const fuzzy::FuzzyInferenceSystem& fis,
                           const NormalizedMap& features);

struct LeachState {
    std::set<int> served_this_epoch;
};

std::vector<int> leach_elect(int round, LeachState& state, const LeachParams& params,
                             const Topology& t, SplitMix64& rng);

// leach_elect plus a dead-round guard: a draw that elects nobody forces the
// max-residual alive node (preferring nodes that have not served this epoch)
// so every simulated round has at least one head.
std::vector<int> leach_guarded_elect(int round, LeachState& state, const LeachParams& params,
                                     const Topology& t, SplitMix64& rng);

std::vector<Cluster> form_clusters(const std::vector<int>& ch_set, const Topology& t);

// --- the round energy exchange ----------------------------------------

struct ChargeLedger {
    double total = 0.0;
    std::map<int, double> per_node;
};

// Members pay tx to their head; heads pay rx per member, aggregation over
// members+1 signals, and tx to the base station. Charges clip at each
// node's available energy; nodes at zero are marked dead at round end.
ChargeLedger apply_round_charges(Topology& t, const std::vector<Cluster>& clusters,
                                 const RadioParams& radio);

// Uniform protocol front-end so the harness can drive all three the same way.
class Protocol {
public:
    virtual ~Protocol() = default;
    virtual std::string name() const = 0;
    virtual bool needs_features() const = 0;
    virtual std::vector<int> elect(int round, const Topology& t,
                                   const NormalizedMap& features, SplitMix64& rng) = 0;
};

class LeachProtocol final : public Protocol {
public:
    explicit LeachProtocol(LeachParams params) : params_(params) {}
    std::string name() const override { return "leach"; }
    bool needs_features() const override { return false; }
    std::vector<int> elect(int round, const Topology& t, const NormalizedMap&,
                           SplitMix64& rng) override;

private:
    LeachParams params_;
    LeachState state_;
};

class EedsProtocol final : public Protocol {
public:
    explicit EedsProtocol(EedsParams params);
    std::string name() const override { return "eeds"; }
    bool needs_features() const override { return true; }
    std::vector<int> elect(int round, const Topology& t, const NormalizedMap& features,
                           SplitMix64& rng) override;
    const fuzzy::FuzzyInferenceSystem& local_fis() const { return local_fis_; }
    const fuzzy::FuzzyInferenceSystem& global_fis() const { return global_fis_; }

private:
    EedsParams params_;
    fuzzy::FuzzyInferenceSystem local_fis_;
    fuzzy::FuzzyInferenceSystem global_fis_;
};

class F3nProtocol final : public Protocol {
public:
    explicit F3nProtocol(F3nParams params);
    std::string name() const override { return "f3n"; }
    bool needs_features() const override { return true; }
    std::vector<int> elect(int round, const Topology& t, const NormalizedMap& features,
                           SplitMix64& rng) override;
    const fuzzy::FuzzyInferenceSystem& fis() const { return fis_; }

private:
    F3nParams params_;
    fuzzy::FuzzyInferenceSystem fis_;
};

}  // namespace wsnsim
