#include "wsnsim/config.hpp"

#include <fstream>
#include <set>

#include "wsnsim/errors.hpp"

namespace wsnsim {

namespace {

const std::set<std::string> kTopLevelKeys = {
    "protocol", "nodes",  "area", "initial_energy", "rounds", "seed",
    "radio_range", "bs",  "radio", "leach", "eeds", "f3n", "e_rate_window"};
const std::set<std::string> kRadioKeys = {"e_elec", "eps_amp", "e_da", "packet_bits"};
const std::set<std::string> kLeachKeys = {"p"};
const std::set<std::string> kEedsKeys = {"qualification_threshold", "ch_fraction"};
const std::set<std::string> kF3nKeys = {"ch_fraction"};

void reject_unknown(const nlohmann::json& obj, const std::set<std::string>& known,
                    const std::string& scope) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!known.count(it.key()))
            throw ConfigError("unknown config key '" + scope + it.key() + "'");
}

double require_number(const nlohmann::json& j, const std::string& key) {
    if (!j.is_number()) throw ConfigError("config key '" + key + "' must be a number");
    return j.get<double>();
}

}  // namespace

void apply_override(nlohmann::json& doc, const std::string& key_value) {
    auto eq = key_value.find('=');
    if (eq == std::string::npos || eq == 0)
        throw ConfigError("override '" + key_value + "' is not of the form key=value");
    const std::string path = key_value.substr(0, eq);
    const std::string raw = key_value.substr(eq + 1);

    nlohmann::json value = nlohmann::json::parse(raw, nullptr, false);
    if (value.is_discarded()) value = raw;  // bare strings need no quoting

    nlohmann::json* cursor = &doc;
    std::size_t start = 0;
    while (true) {
        auto dot = path.find('.', start);
        const std::string part = path.substr(start, dot - start);
        if (part.empty()) throw ConfigError("override '" + key_value + "' has an empty key part");
        if (dot == std::string::npos) {
            (*cursor)[part] = value;
            break;
        }
        cursor = &(*cursor)[part];
        start = dot + 1;
    }
}

SimConfig config_from_json(nlohmann::json doc) {
    if (!doc.is_object()) throw ConfigError("config root must be a JSON object");
    reject_unknown(doc, kTopLevelKeys, "");

    SimConfig cfg;
    if (!doc.contains("protocol")) throw ConfigError("missing required key 'protocol'");
    cfg.protocol = protocol_from_name(doc["protocol"].get<std::string>());
    if (!doc.contains("nodes")) throw ConfigError("missing required key 'nodes'");
    cfg.node_count = static_cast<int>(require_number(doc["nodes"], "nodes"));
    if (!doc.contains("area")) throw ConfigError("missing required key 'area'");
    const auto area = doc["area"].get<std::vector<double>>();
    if (area.size() != 2) throw ConfigError("'area' must be [width, height]");
    cfg.width = area[0];
    cfg.height = area[1];

    if (doc.contains("initial_energy"))
        cfg.initial_energy = require_number(doc["initial_energy"], "initial_energy");
    if (doc.contains("rounds"))
        cfg.rounds = static_cast<int>(require_number(doc["rounds"], "rounds"));
    if (doc.contains("seed")) cfg.seed = doc["seed"].get<std::uint64_t>();
    if (doc.contains("radio_range"))
        cfg.radio_range = require_number(doc["radio_range"], "radio_range");
    if (doc.contains("bs")) {
        const auto bs = doc["bs"].get<std::vector<double>>();
        if (bs.size() != 2) throw ConfigError("'bs' must be [x, y]");
        cfg.bs_pos = Position{bs[0], bs[1]};
    }
    if (doc.contains("radio")) {
        const auto& r = doc["radio"];
        reject_unknown(r, kRadioKeys, "radio.");
        if (r.contains("e_elec")) cfg.radio.e_elec = require_number(r["e_elec"], "radio.e_elec");
        if (r.contains("eps_amp"))
            cfg.radio.eps_amp = require_number(r["eps_amp"], "radio.eps_amp");
        if (r.contains("e_da")) cfg.radio.e_da = require_number(r["e_da"], "radio.e_da");
        if (r.contains("packet_bits"))
            cfg.radio.packet_bits =
                static_cast<std::int64_t>(require_number(r["packet_bits"], "radio.packet_bits"));
    }
    if (doc.contains("leach")) {
        const auto& l = doc["leach"];
        reject_unknown(l, kLeachKeys, "leach.");
        if (l.contains("p")) cfg.leach.p = require_number(l["p"], "leach.p");
    }
    if (doc.contains("eeds")) {
        const auto& e = doc["eeds"];
        reject_unknown(e, kEedsKeys, "eeds.");
        if (e.contains("qualification_threshold"))
            cfg.eeds.qualification_threshold =
                require_number(e["qualification_threshold"], "eeds.qualification_threshold");
        if (e.contains("ch_fraction"))
            cfg.eeds.ch_fraction = require_number(e["ch_fraction"], "eeds.ch_fraction");
    }
    if (doc.contains("f3n")) {
        const auto& f = doc["f3n"];
        reject_unknown(f, kF3nKeys, "f3n.");
        if (f.contains("ch_fraction"))
            cfg.f3n.ch_fraction = require_number(f["ch_fraction"], "f3n.ch_fraction");
    }
    if (doc.contains("e_rate_window"))
        cfg.e_rate_window = static_cast<int>(require_number(doc["e_rate_window"], "e_rate_window"));

    // Trip the range checks now so errors surface before any run starts.
    try {
        deploy(cfg);
    } catch (const ConfigError&) {
        throw;
    }
    return cfg;
}

SimConfig parse_config(const std::string& path, const std::vector<std::string>& overrides) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    nlohmann::json doc = nlohmann::json::parse(in, nullptr, false);
    if (doc.is_discarded()) throw ConfigError("config file '" + path + "' is not valid JSON");
    for (const auto& ov : overrides) apply_override(doc, ov);
    return config_from_json(std::move(doc));
}

nlohmann::json config_to_json(const SimConfig& config) {
    const Position bs = config.resolved_bs();
    return {{"protocol", protocol_name(config.protocol)},
            {"nodes", config.node_count},
            {"area", {config.width, config.height}},
            {"initial_energy", config.initial_energy},
            {"rounds", config.rounds},
            {"seed", config.seed},
            {"radio_range", config.resolved_radio_range()},
            {"bs", {bs.x, bs.y}},
            {"radio",
             {{"e_elec", config.radio.e_elec},
              {"eps_amp", config.radio.eps_amp},
              {"e_da", config.radio.e_da},
              {"packet_bits", config.radio.packet_bits}}},
            {"leach", {{"p", config.leach.p}}},
            {"eeds",
             {{"qualification_threshold", config.eeds.qualification_threshold},
              {"ch_fraction", config.eeds.ch_fraction}}},
            {"f3n", {{"ch_fraction", config.f3n.ch_fraction}}},
            {"e_rate_window", config.e_rate_window}};
}

}  // namespace wsnsim
