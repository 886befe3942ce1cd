#include "wsnsim/network.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

#include "wsnsim/errors.hpp"

namespace wsnsim {

double distance(const Position& a, const Position& b) {
    if (!(std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(b.x) && std::isfinite(b.y)))
        throw InputError("distance: non-finite position");
    return std::hypot(a.x - b.x, a.y - b.y);
}

Position centroid(const std::vector<Position>& positions) {
    if (positions.empty()) throw InputError("centroid: empty position list");
    double sx = 0.0, sy = 0.0;
    for (const auto& p : positions) {
        sx += p.x;
        sy += p.y;
    }
    const double n = static_cast<double>(positions.size());
    return {sx / n, sy / n};
}

const Node* Topology::find(int id) const {
    for (const auto& n : nodes)
        if (n.id == id) return &n;
    return nullptr;
}

Node* Topology::find(int id) {
    for (auto& n : nodes)
        if (n.id == id) return &n;
    return nullptr;
}

int Topology::alive_count() const {
    int c = 0;
    for (const auto& n : nodes)
        if (n.alive) ++c;
    return c;
}

double Topology::diagonal() const { return std::hypot(width, height); }

std::vector<int> neighbors(const Topology& t, int id) {
    const Node* self = t.find(id);
    if (!self) throw InputError("neighbors: unknown node id " + std::to_string(id));
    std::vector<int> out;
    for (const auto& n : t.nodes) {
        if (n.id == id || !n.alive) continue;
        if (distance(self->pos, n.pos) <= t.radio_range) out.push_back(n.id);
    }
    std::sort(out.begin(), out.end());
    return out;
}

int EncounterGraph::degree(int id) const {
    auto it = adjacency.find(id);
    return it == adjacency.end() ? 0 : static_cast<int>(it->second.size());
}

bool EncounterGraph::has_edge(int a, int b) const {
    auto it = adjacency.find(a);
    if (it == adjacency.end()) return false;
    return std::find(it->second.begin(), it->second.end(), b) != it->second.end();
}

EncounterGraph build_encounter_graph(Topology& t) {
    EncounterGraph g;
    std::vector<const Node*> alive;
    for (auto& n : t.nodes) {
        n.queue_size = 0;
        if (n.alive) {
            alive.push_back(&n);
            g.vertices.push_back(n.id);
            g.adjacency[n.id];
        }
    }
    std::sort(g.vertices.begin(), g.vertices.end());
    for (std::size_t i = 0; i < alive.size(); ++i) {
        for (std::size_t j = i + 1; j < alive.size(); ++j) {
            if (distance(alive[i]->pos, alive[j]->pos) <= t.radio_range) {
                int a = std::min(alive[i]->id, alive[j]->id);
                int b = std::max(alive[i]->id, alive[j]->id);
                g.edges.emplace_back(a, b);
                g.adjacency[a].push_back(b);
                g.adjacency[b].push_back(a);
            }
        }
    }
    std::sort(g.edges.begin(), g.edges.end());
    for (auto& [id, adj] : g.adjacency) std::sort(adj.begin(), adj.end());
    for (auto& n : t.nodes)
        if (n.alive) n.queue_size = g.degree(n.id);
    return g;
}

double clustering_coefficient(const EncounterGraph& g) {
    if (g.vertices.empty()) return 0.0;
    double sum = 0.0;
    for (int v : g.vertices) {
        const auto& adj = g.adjacency.at(v);
        const std::size_t k = adj.size();
        if (k < 2) continue;  // degree < 2 contributes 0
        int links = 0;
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = i + 1; j < k; ++j)
                if (g.has_edge(adj[i], adj[j])) ++links;
        sum += static_cast<double>(links) / (static_cast<double>(k) * (k - 1) / 2.0);
    }
    return sum / static_cast<double>(g.vertices.size());
}

namespace {

// BFS hop counts from src; unreachable vertices get -1.
std::map<int, int> bfs_hops(const EncounterGraph& g, int src) {
    std::map<int, int> dist;
    for (int v : g.vertices) dist[v] = -1;
    std::deque<int> queue{src};
    dist[src] = 0;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (int w : g.adjacency.at(u)) {
            if (dist[w] < 0) {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

}  // namespace

std::optional<double> average_path_length(const EncounterGraph& g) {
    double total = 0.0;
    long pairs = 0;
    for (int v : g.vertices) {
        auto dist = bfs_hops(g, v);
        for (int w : g.vertices) {
            if (w <= v) continue;
            if (dist[w] > 0) {
                total += dist[w];
                ++pairs;
            }
        }
    }
    if (pairs == 0) return std::nullopt;
    return total / static_cast<double>(pairs);
}

double disconnected_ratio(const EncounterGraph& g) {
    const std::size_t n = g.vertices.size();
    if (n < 2) return 0.0;
    long disconnected = 0;
    for (int v : g.vertices) {
        auto dist = bfs_hops(g, v);
        for (int w : g.vertices) {
            if (w <= v) continue;
            if (dist[w] < 0) ++disconnected;
        }
    }
    const double pairs = static_cast<double>(n) * (n - 1) / 2.0;
    return static_cast<double>(disconnected) / pairs;
}

EncounterMetrics encounter_metrics(const EncounterGraph& g) {
    EncounterMetrics m;
    m.cc = clustering_coefficient(g);
    m.pl = average_path_length(g);
    m.dr = disconnected_ratio(g);
    m.node_count = static_cast<int>(g.vertices.size());
    m.avg_degree = g.vertices.empty()
                       ? 0.0
                       : 2.0 * static_cast<double>(g.edges.size()) / m.node_count;
    return m;
}

nlohmann::json topology_to_json(const Topology& t) {
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& n : t.nodes)
        nodes.push_back({{"id", n.id}, {"x", n.pos.x}, {"y", n.pos.y},
                         {"energy", n.residual_energy}});
    return {{"area", {t.width, t.height}},
            {"bs", {t.bs_pos.x, t.bs_pos.y}},
            {"radio_range", t.radio_range},
            {"nodes", nodes}};
}

Topology topology_from_json(const nlohmann::json& j) {
    Topology t;
    const auto area = j.at("area").get<std::vector<double>>();
    if (area.size() != 2) throw InputError("topology: area must be [width, height]");
    t.width = area[0];
    t.height = area[1];
    const auto bs = j.at("bs").get<std::vector<double>>();
    if (bs.size() != 2) throw InputError("topology: bs must be [x, y]");
    t.bs_pos = {bs[0], bs[1]};
    t.radio_range = j.at("radio_range").get<double>();
    if (t.radio_range <= 0) throw InputError("topology: radio_range must be positive");
    std::set<int> ids;
    for (const auto& nj : j.at("nodes")) {
        Node n;
        n.id = nj.at("id").get<int>();
        n.pos = {nj.at("x").get<double>(), nj.at("y").get<double>()};
        n.residual_energy = nj.at("energy").get<double>();
        n.alive = n.residual_energy > 0.0;
        if (!ids.insert(n.id).second)
            throw InputError("topology: duplicate node id " + std::to_string(n.id));
        t.nodes.push_back(n);
    }
    return t;
}

}  // namespace wsnsim
