#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wsnsim/artifacts.hpp"
#include "wsnsim/config.hpp"
#include "wsnsim/errors.hpp"

namespace {

constexpr int kExitInternal = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

bool plain_diagnostics() {
    const char* v = std::getenv("WSNSIM_PLAIN");
    return v != nullptr && *v != '\0' && std::string(v) != "0";
}

void report(const std::string& kind, const std::string& msg) {
    if (plain_diagnostics())
        std::cerr << kind << ": " << msg << "\n";
    else
        std::cerr << "\x1b[31m" << kind << ":\x1b[0m " << msg << "\n";
}

int run_mode(const std::string& config_path, const std::vector<std::string>& overrides,
             const std::string& out_dir) {
    wsnsim::SimConfig cfg = wsnsim::parse_config(config_path, overrides);
    wsnsim::SimResult result = wsnsim::run_simulation(cfg);
    auto files = wsnsim::emit_run_artifacts(cfg, result, out_dir);
    for (const auto& f : files) std::cout << "wrote " << f << "\n";
    const auto& lt = result.lifetime;
    std::cout << "rounds executed: " << result.rounds.size()
              << "  fnd: " << (lt.fnd ? std::to_string(*lt.fnd) : "-")
              << "  hnd: " << (lt.hnd ? std::to_string(*lt.hnd) : "-")
              << "  lnd: " << (lt.lnd ? std::to_string(*lt.lnd) : "-") << "\n";
    return 0;
}

int compare_mode(const std::string& config_path, const std::vector<std::string>& overrides,
                 int seed_count, const std::string& out_dir) {
    if (seed_count < 1) throw wsnsim::ConfigError("--seeds must be >= 1");
    wsnsim::SimConfig base = wsnsim::parse_config(config_path, overrides);
    std::vector<std::uint64_t> seeds;
    for (int s = 0; s < seed_count; ++s) seeds.push_back(base.seed + static_cast<std::uint64_t>(s));
    auto table = wsnsim::compare_runs(
        base, {wsnsim::ProtocolKind::Eeds, wsnsim::ProtocolKind::F3n,
               wsnsim::ProtocolKind::Leach},
        seeds);
    auto files = wsnsim::emit_compare_artifacts(base, table, out_dir);
    for (const auto& f : files) std::cout << "wrote " << f << "\n";
    std::cout << wsnsim::comparison_to_text(table);
    return 0;
}

int validate_fis_mode(const std::string& rulebase_path) {
    std::ifstream in(rulebase_path);
    if (!in) throw wsnsim::IoError("cannot open rule base '" + rulebase_path + "'");
    nlohmann::json doc = nlohmann::json::parse(in, nullptr, false);
    if (doc.is_discarded())
        throw wsnsim::ConfigError("rule base '" + rulebase_path + "' is not valid JSON");

    // Accept either a bare FIS document or a map of named FIS documents.
    std::vector<std::pair<std::string, nlohmann::json>> systems;
    if (doc.contains("rules"))
        systems.emplace_back("fis", doc);
    else
        for (auto it = doc.begin(); it != doc.end(); ++it)
            systems.emplace_back(it.key(), it.value());

    bool all_ok = true;
    for (const auto& [name, j] : systems) {
        auto fis = wsnsim::fuzzy::fis_from_json(j);
        auto report = fis.validate();
        std::cout << name << ": " << report.rule_count << " rules, "
                  << (report.ok() ? "OK" : "INVALID") << "\n";
        for (const auto& m : report.missing_antecedents)
            std::cout << "  missing antecedent [" << m << "]\n";
        for (const auto& d : report.duplicate_antecedents)
            std::cout << "  duplicate antecedent [" << d << "]\n";
        for (const auto& d : report.dangling_references) std::cout << "  " << d << "\n";
        all_ok = all_ok && report.ok();
    }
    return all_ok ? 0 : kExitConfig;
}

int emit_rulebase_mode(const std::string& protocol, const std::string& out_dir) {
    auto kind = wsnsim::protocol_from_name(protocol);
    auto doc = wsnsim::rulebase_json(kind);
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    const std::string path =
        (std::filesystem::path(out_dir) / ("rulebase_" + protocol + ".json")).string();
    wsnsim::write_text_file(path, doc.dump(2) + "\n");
    std::cout << "wrote " << path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Round-based WSN energy simulator with fuzzy cluster-head election"};
    app.require_subcommand(1);

    std::string config_path, out_dir = "out", rulebase_path, protocol;
    std::vector<std::string> overrides;
    int seed_count = 10;

    auto* run = app.add_subcommand("run", "Run one simulation and emit its artifacts");
    run->add_option("--config", config_path, "JSON config file")->required();
    run->add_option("--set", overrides, "Override a config key, e.g. --set rounds=10");
    run->add_option("--out", out_dir, "Output directory");

    auto* compare =
        app.add_subcommand("compare", "Sweep eeds/f3n/leach over a block of seeds");
    compare->add_option("--config", config_path, "JSON config file")->required();
    compare->add_option("--set", overrides, "Override a config key");
    compare->add_option("--seeds", seed_count, "Number of consecutive seeds");
    compare->add_option("--out", out_dir, "Output directory");

    auto* validate = app.add_subcommand("validate-fis", "Validate a rule-base JSON file");
    validate->add_option("--rulebase", rulebase_path, "Rule base JSON")->required();

    auto* emit = app.add_subcommand("emit-rulebase", "Write the generated rule base fixture");
    emit->add_option("--protocol", protocol, "eeds or f3n")->required();
    emit->add_option("--out", out_dir, "Output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return run_mode(config_path, overrides, out_dir);
        if (compare->parsed()) return compare_mode(config_path, overrides, seed_count, out_dir);
        if (validate->parsed()) return validate_fis_mode(rulebase_path);
        if (emit->parsed()) return emit_rulebase_mode(protocol, out_dir);
    } catch (const wsnsim::ConfigError& e) {
        report("config error", e.what());
        return kExitConfig;
    } catch (const wsnsim::IoError& e) {
        report("io error", e.what());
        return kExitIo;
    } catch (const std::exception& e) {
        report("error", e.what());
        return kExitInternal;
    }
    return kExitInternal;
}
