#pragma once

#include <json.hpp>

#include "inferlab/report.hpp"

namespace inferlab {

nlohmann::json verdict_to_json(const Verdict& v);
Verdict verdict_from_json(const nlohmann::json& j);

nlohmann::json witness_to_json(const Witness& w);
Witness witness_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const Report& r);
/// Throws std::invalid_argument on a document that does not follow the schema.
Report report_from_json(const nlohmann::json& j);

}  // namespace inferlab
