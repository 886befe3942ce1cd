#include "wsnsim/protocols.hpp"

#include <algorithm>
#include <cmath>

#include "wsnsim/errors.hpp"

namespace wsnsim {

using fuzzy::FuzzyInferenceSystem;
using fuzzy::FuzzyRule;
using fuzzy::LinguisticVariable;
using fuzzy::MembershipFunction;
using fuzzy::Term;
using fuzzy::make_uniform_partition;

EnergyHistory::EnergyHistory(int window) : window_(window) {
    if (window_ < 1) throw InputError("EnergyHistory: window must be >= 1");
}

void EnergyHistory::record_round(const std::map<int, double>& spent) {
    for (const auto& [id, joules] : spent) {
        auto& dq = spend_[id];
        dq.push_back(joules);
        while (static_cast<int>(dq.size()) > window_) dq.pop_front();
    }
}

double EnergyHistory::mean_rate(int id) const {
    auto it = spend_.find(id);
    if (it == spend_.end() || it->second.empty()) return 0.0;
    double sum = 0.0;
    for (double v : it->second) sum += v;
    return sum / static_cast<double>(it->second.size());
}

std::vector<FuzzyRule> generate_grid_rules(const std::vector<LinguisticVariable>& inputs,
                                           const std::vector<int>& direction,
                                           const LinguisticVariable& output) {
    if (direction.size() != inputs.size())
        throw InputError("generate_grid_rules: one direction flag per input required");
    const int out_top = static_cast<int>(output.terms().size()) - 1;

    std::vector<FuzzyRule> rules;
    std::vector<std::size_t> combo(inputs.size(), 0);
    while (true) {
        double score = 0.0;
        double weight_sum = 0.0;
        FuzzyRule rule;
        for (std::size_t v = 0; v < inputs.size(); ++v) {
            const auto& var = inputs[v];
            const std::size_t k = var.terms().size();
            double s = (k == 1) ? 0.0
                                : static_cast<double>(combo[v]) / static_cast<double>(k - 1);
            if (direction[v] < 0) s = 1.0 - s;
            const double w = std::abs(static_cast<double>(direction[v]));
            if (w == 0.0) throw InputError("generate_grid_rules: zero direction weight");
            score += w * s;
            weight_sum += w;
            rule.antecedent.emplace_back(var.name(), var.terms()[combo[v]].name);
        }
        score /= weight_sum;
        const auto out_idx = static_cast<std::size_t>(std::lround(score * out_top));
        rule.consequent = {output.name(), output.terms()[out_idx].name};
        rules.push_back(std::move(rule));

        int pos = static_cast<int>(inputs.size()) - 1;
        while (pos >= 0) {
            if (++combo[static_cast<std::size_t>(pos)] <
                inputs[static_cast<std::size_t>(pos)].terms().size())
                break;
            combo[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    return rules;
}

namespace {

LinguisticVariable cost_output_variable() {
    // VL is the trapezoidal term; the remaining five are triangular.
    std::vector<Term> terms;
    terms.push_back({"VL", MembershipFunction::trapezoidal(0.0, 0.0, 0.1, 0.2)});
    terms.push_back({"L", MembershipFunction::triangular(0.0, 0.2, 0.4)});
    terms.push_back({"LM", MembershipFunction::triangular(0.2, 0.4, 0.6)});
    terms.push_back({"HM", MembershipFunction::triangular(0.4, 0.6, 0.8)});
    terms.push_back({"H", MembershipFunction::triangular(0.6, 0.8, 1.0)});
    terms.push_back({"VH", MembershipFunction::triangular(0.8, 1.0, 1.0)});
    return LinguisticVariable("cost", 0.0, 1.0, std::move(terms));
}

}  // namespace

FuzzyInferenceSystem make_eeds_local_fis() {
    std::vector<LinguisticVariable> inputs;
    inputs.push_back(make_uniform_partition("r_energy", 0.0, 1.0, {"Low", "Medium", "High"}));
    inputs.push_back(
        make_uniform_partition("neighbor_count", 0.0, 1.0, {"Low", "Medium", "High"}));
    inputs.push_back(
        make_uniform_partition("d_centroid", 0.0, 1.0, {"small", "medium", "large"}));
    LinguisticVariable output =
        make_uniform_partition("qualification", 0.0, 1.0, {"VL", "L", "M", "H", "VH"});
    // Qualification rises with energy and neighbours, falls with centroid distance.
    auto rules = generate_grid_rules(inputs, {+1, +1, -1}, output);
    return FuzzyInferenceSystem(std::move(inputs), std::move(output), std::move(rules));
}

FuzzyInferenceSystem make_eeds_global_fis() {
    std::vector<LinguisticVariable> inputs;
    inputs.push_back(make_uniform_partition("tr_energy", 0.0, 1.0, {"Low", "High"}));
    inputs.push_back(make_uniform_partition("r_energy", 0.0, 1.0, {"Low", "Medium", "High"}));
    inputs.push_back(make_uniform_partition("e_rate", 0.0, 1.0, {"Small", "Medium", "High"}));
    inputs.push_back(make_uniform_partition("q_size", 0.0, 1.0, {"small", "large"}));
    inputs.push_back(make_uniform_partition("d_centroid", 0.0, 1.0, {"small", "large"}));
    inputs.push_back(make_uniform_partition("proximity", 0.0, 1.0, {"small", "large"}));
    LinguisticVariable output = cost_output_variable();
    // Everything except residual energy drives the link cost up.
    auto rules = generate_grid_rules(inputs, {+1, -1, +1, +1, +1, +1}, output);
    return FuzzyInferenceSystem(std::move(inputs), std::move(output), std::move(rules));
}

FuzzyInferenceSystem make_f3n_fis() {
    std::vector<LinguisticVariable> inputs;
    inputs.push_back(make_uniform_partition("r_energy", 0.0, 1.0, {"Low", "Medium", "High"}));
    inputs.push_back(
        make_uniform_partition("neighbor_count", 0.0, 1.0, {"Low", "Medium", "High"}));
    inputs.push_back(
        make_uniform_partition("d_centroid", 0.0, 1.0, {"small", "medium", "large"}));
    LinguisticVariable output =
        make_uniform_partition("chance", 0.0, 1.0, {"VL", "L", "M", "H", "VH"});
    auto rules = generate_grid_rules(inputs, {+1, +1, -1}, output);
    return FuzzyInferenceSystem(std::move(inputs), std::move(output), std::move(rules));
}

FeatureMap compute_features(const Topology& t, const EnergyHistory& history,
                            const RadioParams& radio) {
    std::vector<Position> alive_positions;
    for (const auto& n : t.nodes)
        if (n.alive) alive_positions.push_back(n.pos);
    if (alive_positions.empty()) throw InputError("compute_features: no alive nodes");

    const Position alive_centroid = centroid(alive_positions);
    FeatureMap out;
    for (const auto& n : t.nodes) {
        if (!n.alive) continue;
        NodeFeatures f;
        f.r_energy = n.residual_energy;
        f.d_centroid = distance(n.pos, alive_centroid);
        f.proximity = distance(n.pos, t.bs_pos);
        f.tr_energy = tx_cost(radio, radio.packet_bits, f.d_centroid);
        f.e_rate = history.mean_rate(n.id);
        f.q_size = n.queue_size;
        f.neighbor_count = n.queue_size;
        out[n.id] = f;
    }
    return out;
}

NormalizedMap normalize_features(const FeatureMap& features, const Topology& t,
                                 double initial_energy) {
    const double diag = t.diagonal();
    const int alive = t.alive_count();
    const double degree_div = alive > 1 ? static_cast<double>(alive - 1) : 1.0;
    auto unit = [](double v) { return std::clamp(v, 0.0, 1.0); };

    NormalizedMap out;
    for (const auto& [id, f] : features) {
        NormalizedFeatures n;
        n.tr_energy = unit(f.tr_energy / initial_energy);
        n.r_energy = unit(f.r_energy / initial_energy);
        n.e_rate = unit(f.e_rate / initial_energy);
        n.q_size = unit(static_cast<double>(f.q_size) / degree_div);
        n.d_centroid = unit(diag > 0 ? f.d_centroid / diag : 0.0);
        n.proximity = unit(diag > 0 ? f.proximity / diag : 0.0);
        n.neighbor_count = unit(static_cast<double>(f.neighbor_count) / degree_div);
        out[id] = n;
    }
    return out;
}

double eeds_local_qualification(const NormalizedFeatures& f,
                                const FuzzyInferenceSystem& local_fis) {
    return local_fis.evaluate({{"r_energy", f.r_energy},
                               {"neighbor_count", f.neighbor_count},
                               {"d_centroid", f.d_centroid}});
}

double eeds_global_cost(const NormalizedFeatures& f, const FuzzyInferenceSystem& global_fis) {
    return global_fis.evaluate({{"tr_energy", f.tr_energy},
                                {"r_energy", f.r_energy},
                                {"e_rate", f.e_rate},
                                {"q_size", f.q_size},
                                {"d_centroid", f.d_centroid},
                                {"proximity", f.proximity}});
}

double f3n_chance(const NormalizedFeatures& f, const FuzzyInferenceSystem& fis) {
    return fis.evaluate({{"r_energy", f.r_energy},
                         {"neighbor_count", f.neighbor_count},
                         {"d_centroid", f.d_centroid}});
}

namespace {

int target_head_count(int alive, double fraction) {
    return std::max(1, static_cast<int>(std::ceil(alive * fraction)));
}

}  // namespace

std::vector<int> eeds_elect(const Topology& t, const EedsParams& params,
                            const FuzzyInferenceSystem& local_fis,
                            const FuzzyInferenceSystem& global_fis,
                            const NormalizedMap& features) {
    const int alive = t.alive_count();
    if (alive == 0) throw InputError("eeds_elect: no alive nodes");

    // Local level: qualification filter, falling back to all alive nodes
    // when nobody clears the threshold.
    std::vector<int> candidates;
    for (const auto& [id, f] : features)
        if (eeds_local_qualification(f, local_fis) >= params.qualification_threshold)
            candidates.push_back(id);
    if (candidates.empty())
        for (const auto& [id, f] : features) candidates.push_back(id);

    // Global level: rank candidates by link cost, ties by lower id.
    std::vector<std::pair<double, int>> scored;
    for (int id : candidates)
        scored.emplace_back(eeds_global_cost(features.at(id), global_fis), id);
    std::sort(scored.begin(), scored.end());

    const auto k = static_cast<std::size_t>(target_head_count(alive, params.ch_fraction));
    std::vector<int> heads;
    for (std::size_t i = 0; i < scored.size() && i < k; ++i) heads.push_back(scored[i].second);
    std::sort(heads.begin(), heads.end());
    return heads;
}

std::vector<int> f3n_elect(const Topology& t, const F3nParams& params,
                           const FuzzyInferenceSystem& fis, const NormalizedMap& features) {
    const int alive = t.alive_count();
    if (alive == 0) throw InputError("f3n_elect: no alive nodes");

    std::vector<std::pair<double, int>> scored;  // (-chance, id): highest chance first
    for (const auto& [id, f] : features) scored.emplace_back(-f3n_chance(f, fis), id);
    std::sort(scored.begin(), scored.end());

    const auto k = static_cast<std::size_t>(target_head_count(alive, params.ch_fraction));
    std::vector<int> heads;
    for (std::size_t i = 0; i < scored.size() && i < k; ++i) heads.push_back(scored[i].second);
    std::sort(heads.begin(), heads.end());
    return heads;
}

std::vector<int> leach_elect(int round, LeachState& state, const LeachParams& params,
                             const Topology& t, SplitMix64& rng) {
    if (!(params.p > 0.0 && params.p < 1.0))
        throw InputError("leach_elect: p must lie in (0,1)");
    const int epoch = std::max(1, static_cast<int>(std::lround(1.0 / params.p)));
    const int phase = round % epoch;
    if (phase == 0) state.served_this_epoch.clear();

    const double threshold = params.p / (1.0 - params.p * static_cast<double>(phase));

    std::vector<int> heads;
    for (const auto& n : t.nodes) {  // ascending id order fixes the draw sequence
        if (!n.alive) continue;
        if (state.served_this_epoch.count(n.id)) continue;
        if (rng.next_double() < threshold) {
            heads.push_back(n.id);
            state.served_this_epoch.insert(n.id);
        }
    }

    return heads;
}

std::vector<int> leach_guarded_elect(int round, LeachState& state, const LeachParams& params,
                                     const Topology& t, SplitMix64& rng) {
    auto heads = leach_elect(round, state, params, t, rng);
    if (heads.empty() && t.alive_count() > 0) {
        // Dead-round guard: force the richest alive node, ties by lower id.
        // Nodes that already served this epoch are only eligible when every
        // alive node has served, so the rotation is disturbed only when it
        // has already completed early.
        const Node* best = nullptr;
        for (const auto& n : t.nodes)
            if (n.alive && !state.served_this_epoch.count(n.id) &&
                (!best || n.residual_energy > best->residual_energy))
                best = &n;
        if (!best)
            for (const auto& n : t.nodes)
                if (n.alive && (!best || n.residual_energy > best->residual_energy)) best = &n;
        heads.push_back(best->id);
        state.served_this_epoch.insert(best->id);
    }
    return heads;
}

std::vector<Cluster> form_clusters(const std::vector<int>& ch_set, const Topology& t) {
    if (ch_set.empty()) throw InputError("form_clusters: empty cluster-head set");

    std::vector<Cluster> clusters;
    std::vector<int> heads = ch_set;
    std::sort(heads.begin(), heads.end());
    for (int h : heads) {
        if (!t.find(h)) throw InputError("form_clusters: unknown head id " + std::to_string(h));
        clusters.push_back({h, {}});
    }

    for (const auto& n : t.nodes) {
        if (!n.alive) continue;
        if (std::binary_search(heads.begin(), heads.end(), n.id)) continue;
        std::size_t best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < clusters.size(); ++c) {
            double d = distance(n.pos, t.find(clusters[c].head)->pos);
            if (d < best_d) {  // ties keep the lower head id (heads are sorted)
                best_d = d;
                best = c;
            }
        }
        clusters[best].members.push_back(n.id);
    }
    for (auto& c : clusters) std::sort(c.members.begin(), c.members.end());
    return clusters;
}

ChargeLedger apply_round_charges(Topology& t, const std::vector<Cluster>& clusters,
                                 const RadioParams& radio) {
    ChargeLedger ledger;
    auto charge = [&](int id, double joules) {
        Node* n = t.find(id);
        const double paid = std::min(joules, n->residual_energy);
        n->residual_energy -= paid;
        ledger.per_node[id] += paid;
        ledger.total += paid;
    };

    for (auto& n : t.nodes) n.role = Role::Member;

    for (const auto& c : clusters) {
        Node* head = t.find(c.head);
        head->role = Role::Head;
        for (int m : c.members)
            charge(m, tx_cost(radio, radio.packet_bits,
                              distance(t.find(m)->pos, head->pos)));
        for (std::size_t i = 0; i < c.members.size(); ++i)
            charge(c.head, rx_cost(radio, radio.packet_bits));
        charge(c.head, aggregation_cost(radio, radio.packet_bits,
                                        static_cast<int>(c.members.size()) + 1));
        charge(c.head, tx_cost(radio, radio.packet_bits, distance(head->pos, t.bs_pos)));
    }

    // Deaths take effect at round end.
    for (auto& n : t.nodes)
        if (n.residual_energy <= 0.0) {
            n.residual_energy = 0.0;
            n.alive = false;
        }
    return ledger;
}

std::vector<int> LeachProtocol::elect(int round, const Topology& t, const NormalizedMap&,
                                      SplitMix64& rng) {
    return leach_guarded_elect(round, state_, params_, t, rng);
}

EedsProtocol::EedsProtocol(EedsParams params)
    : params_(params), local_fis_(make_eeds_local_fis()), global_fis_(make_eeds_global_fis()) {}

std::vector<int> EedsProtocol::elect(int, const Topology& t, const NormalizedMap& features,
                                     SplitMix64&) {
    return eeds_elect(t, params_, local_fis_, global_fis_, features);
}

F3nProtocol::F3nProtocol(F3nParams params) : params_(params), fis_(make_f3n_fis()) {}

std::vector<int> F3nProtocol::elect(int, const Topology& t, const NormalizedMap& features,
                                    SplitMix64&) {
    return f3n_elect(t, params_, fis_, features);
}

}  // namespace wsnsim
