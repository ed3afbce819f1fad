#pragma once

#include "qci/ansatz.hpp"
#include "qci/channels.hpp"
#include "qci/cohinfo.hpp"
#include "qci/optimize.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace qci::serialize {

using nlohmann::json;

/// {"kind": "depolarizing"|"gadc"|"dephrasure", <parameters>...}
json channel_to_json(const channels::KrausChannel& channel);
channels::KrausChannel channel_from_json(const json& j);

json encoding_to_json(const ansatz::Encoding& enc);
ansatz::Encoding encoding_from_json(const json& j, int d);

json ansatz_to_json(const ansatz::AnsatzSpec& spec);
ansatz::AnsatzSpec ansatz_from_json(const json& j);

json stage_to_json(const optimize::Stage& stage);
optimize::Stage stage_from_json(const json& j);
json chain_to_json(const std::vector<optimize::Stage>& stages);
std::vector<optimize::Stage> chain_from_json(const json& j);

json evaluation_to_json(const cohinfo::CodeEvaluation& ev);

json run_record_to_json(const optimize::RunRecord& rec);

/// Code files map basis strings (A^k|R display order) to [re, im] pairs:
/// {"k": 3, "dim_R": 8, "dim_A": 2, "entries": {"000|000": [re, im], ...}}
std::vector<cohinfo::TableEntry> entries_from_json(const json& j);
json entries_to_json(const std::vector<cohinfo::TableEntry>& entries);

std::string format_double(double v);

}  // namespace qci::serialize
