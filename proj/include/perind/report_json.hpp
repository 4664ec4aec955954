#pragma once

#include "perind/bounds.hpp"
#include "perind/homology.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace perind {

nlohmann::json to_json(const FinAbGroup& g);
FinAbGroup fin_ab_group_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ExponentEntry& e);
ExponentEntry exponent_entry_from_json(const nlohmann::json& j);

nlohmann::json to_json(const BoundReport& r);
BoundReport bound_report_from_json(const nlohmann::json& j);

nlohmann::json to_json(const CohomologyGroup& g);

/// What every CLI subcommand emits under --json.
struct OutputEnvelope {
    std::string command;
    nlohmann::json inputs = nlohmann::json::object();
    nlohmann::json result;
    std::vector<std::string> citations;

    nlohmann::json to_json() const;
    static OutputEnvelope from_json(const nlohmann::json& j);

    bool operator==(const OutputEnvelope&) const = default;
};

} // namespace perind
