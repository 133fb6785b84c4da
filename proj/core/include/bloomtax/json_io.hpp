#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "bloomtax/avca.hpp"
#include "bloomtax/evaluation.hpp"
#include "bloomtax/verbset.hpp"

namespace bloomtax {

// Consensus documents (schema "bloomtax-consensus/1", see docs/formats.md).
std::string consensus_to_json(const ConsensusVerbSet& set);
ConsensusVerbSet consensus_from_json(std::string_view json, std::string_view origin = "consensus");
ConsensusVerbSet load_consensus(const std::filesystem::path& file);
void save_consensus(const ConsensusVerbSet& set, const std::filesystem::path& file);

/// Single-line report; the chunk, when given, adds question/extraction fields.
std::string report_to_json(const ClassificationReport& report, const ChunkResult* chunk = nullptr,
                           std::string_view question = {});

std::string metrics_to_json(std::span<const MetricRow> rows, const MetricRow& macro, const ConfusionMatrix& matrix,
                            std::string_view lexicon_version);

std::string audit_to_json(const AuditReport& report);

}  // namespace bloomtax
