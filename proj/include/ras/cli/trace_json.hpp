#pragma once

#include "ras/engine.hpp"

#include <json.hpp>

namespace ras
{
    // Round-major: {"rounds":[{"round","messages":[{"from","to","tag","words","vec"}]}],
    // "outputs":[{"agent","value"|null,"round"}], "legality", "message_count",
    // "rounds_executed", "seed"}. Bottom outputs are null.
    nlohmann::json trace_to_json(const ExecutionTrace& trace);
    ExecutionTrace trace_from_json(const nlohmann::json& doc);

    std::string legality_name(Legality l);
}
