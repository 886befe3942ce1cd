#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "json.hpp"

namespace wsnsim {

struct Position {
    double x = 0.0;
    double y = 0.0;
};

double distance(const Position& a, const Position& b);
Position centroid(const std::vector<Position>& positions);

enum class Role { Member, Head };

struct Node {
    int id = 0;
    Position pos;
    double residual_energy = 0.0;  // joules
    bool alive = true;
    Role role = Role::Member;
    int queue_size = 0;  // encounter degree this round
};

struct Topology {
    std::vector<Node> nodes;
    double width = 0.0;   // meters
    double height = 0.0;  // meters
    Position bs_pos;
    double radio_range = 0.0;  // meters

    const Node* find(int id) const;
    Node* find(int id);
    int alive_count() const;
    double diagonal() const;
};

// Alive nodes within radio range of `id` (closed ball, excluding itself).
std::vector<int> neighbors(const Topology& t, int id);

/// Undirected simple graph over the alive nodes; an edge means the pair is
/// within mutual radio range this round.
struct EncounterGraph {
    std::vector<int> vertices;                 // ascending ids
    std::vector<std::pair<int, int>> edges;    // (i, j) with i < j
    std::map<int, std::vector<int>> adjacency;

    int degree(int id) const;
    bool has_edge(int a, int b) const;
};

// Builds the graph and writes each alive node's degree back into its
// queue_size field; dead nodes get queue_size 0.
EncounterGraph build_encounter_graph(Topology& t);

struct EncounterMetrics {
    double cc = 0.0;
    std::optional<double> pl;
    double dr = 0.0;
    int node_count = 0;
    double avg_degree = 0.0;
};

double clustering_coefficient(const EncounterGraph& g);
std::optional<double> average_path_length(const EncounterGraph& g);
double disconnected_ratio(const EncounterGraph& g);
EncounterMetrics encounter_metrics(const EncounterGraph& g);

nlohmann::json topology_to_json(const Topology& t);
Topology topology_from_json(const nlohmann::json& j);

}  // namespace wsnsim
