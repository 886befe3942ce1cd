#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "wsnsim/sim.hpp"

namespace wsnsim {

// Rule-base fixture for a fuzzy protocol: {"local":..., "global":...} for
// EEDS, {"fis":...} for F3N. LEACH has none.
nlohmann::json rulebase_json(ProtocolKind kind);

std::string metrics_filename(ProtocolKind kind, std::uint64_t seed);

// Single run: metrics CSV + resolved_config.json (+ rulebase when fuzzy).
// Returns the paths written.
std::vector<std::string> emit_run_artifacts(const SimConfig& config, const SimResult& result,
                                            const std::string& out_dir);

// Compare sweep: one metrics CSV per (protocol, seed), comparison.csv,
// comparison.txt, and the resolved base config.
std::vector<std::string> emit_compare_artifacts(const SimConfig& base,
                                                const ComparisonTable& table,
                                                const std::string& out_dir);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace wsnsim
