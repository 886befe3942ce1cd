#include "wsnsim/artifacts.hpp"

#include <filesystem>
#include <fstream>

#include "wsnsim/config.hpp"
#include "wsnsim/errors.hpp"
#include "wsnsim/protocols.hpp"

namespace fs = std::filesystem;

namespace wsnsim {

nlohmann::json rulebase_json(ProtocolKind kind) {
    switch (kind) {
        case ProtocolKind::Eeds:
            return {{"local", fuzzy::to_json(make_eeds_local_fis())},
                    {"global", fuzzy::to_json(make_eeds_global_fis())}};
        case ProtocolKind::F3n:
            return {{"fis", fuzzy::to_json(make_f3n_fis())}};
        case ProtocolKind::Leach:
            break;
    }
    throw InputError("rulebase_json: protocol '" + protocol_name(kind) + "' has no rule base");
}

std::string metrics_filename(ProtocolKind kind, std::uint64_t seed) {
    return "metrics_" + protocol_name(kind) + "_s" + std::to_string(seed) + ".csv";
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << content;
    if (!out) throw IoError("write failed for '" + path + "'");
}

namespace {

void ensure_dir(const std::string& out_dir) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec || !fs::is_directory(out_dir))
        throw IoError("cannot create output directory '" + out_dir + "'");
}

}  // namespace

std::vector<std::string> emit_run_artifacts(const SimConfig& config, const SimResult& result,
                                            const std::string& out_dir) {
    ensure_dir(out_dir);
    std::vector<std::string> written;

    const std::string metrics_path =
        (fs::path(out_dir) / metrics_filename(config.protocol, config.seed)).string();
    write_text_file(metrics_path, metrics_to_csv(result.rounds));
    written.push_back(metrics_path);

    const std::string config_path = (fs::path(out_dir) / "resolved_config.json").string();
    write_text_file(config_path, config_to_json(config).dump(2) + "\n");
    written.push_back(config_path);

    if (config.protocol != ProtocolKind::Leach) {
        const std::string rb_path =
            (fs::path(out_dir) / ("rulebase_" + protocol_name(config.protocol) + ".json"))
                .string();
        write_text_file(rb_path, rulebase_json(config.protocol).dump(2) + "\n");
        written.push_back(rb_path);
    }
    return written;
}

std::vector<std::string> emit_compare_artifacts(const SimConfig& base,
                                                const ComparisonTable& table,
                                                const std::string& out_dir) {
    ensure_dir(out_dir);
    std::vector<std::string> written;

    for (const auto& run : table.runs) {
        const std::string path =
            (fs::path(out_dir) / metrics_filename(run.protocol, run.seed)).string();
        write_text_file(path, metrics_to_csv(run.result.rounds));
        written.push_back(path);
    }

    const std::string csv_path = (fs::path(out_dir) / "comparison.csv").string();
    write_text_file(csv_path, comparison_to_csv(table));
    written.push_back(csv_path);

    const std::string txt_path = (fs::path(out_dir) / "comparison.txt").string();
    write_text_file(txt_path, comparison_to_text(table));
    written.push_back(txt_path);

    const std::string config_path = (fs::path(out_dir) / "resolved_config.json").string();
    write_text_file(config_path, config_to_json(base).dump(2) + "\n");
    written.push_back(config_path);

    return written;
}

}  // namespace wsnsim
