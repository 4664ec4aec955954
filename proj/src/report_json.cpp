#include "perind/report_json.hpp"

#include "perind/error.hpp"
#include "perind/json_io.hpp"

namespace perind {

using nlohmann::json;

json to_json(const FinAbGroup& g)
{
    json torsion = json::array();
    for (const auto& d : g.invariant_factors()) torsion.push_back(integer_to_json(d));
    return {{"free_rank", g.free_rank()}, {"torsion", std::move(torsion)}, {"text", g.to_string()}};
}

FinAbGroup fin_ab_group_from_json(const json& j)
{
    std::vector<Integer> torsion;
    for (const auto& t : j.at("torsion")) torsion.push_back(integer_from_json(t));
    return FinAbGroup(j.at("free_rank").get<std::size_t>(), std::move(torsion));
}

json to_json(const ExponentEntry& e)
{
    json out = {{"value", e.value ? integer_to_json(*e.value) : json(nullptr)},
                {"provenance", to_string(e.provenance)},
                {"source", e.source}};
    if (e.composite) out["composite"] = true;
    return out;
}

ExponentEntry exponent_entry_from_json(const json& j)
{
    ExponentEntry e;
    if (!j.at("value").is_null()) e.value = integer_from_json(j.at("value"));
    e.provenance = provenance_from_string(j.at("provenance").get<std::string>());
    e.source = j.at("source").get<std::string>();
    e.composite = j.value("composite", false);
    return e;
}

json to_json(const BoundReport& r)
{
    json factors = json::array();
    for (const auto& f : r.factors) {
        json entry = to_json(f.entry);
        entry["index"] = f.index;
        factors.push_back(std::move(entry));
    }
    json out = {{"bound", r.bound ? integer_to_json(*r.bound) : json(nullptr)},
                {"known", r.known()},
                {"partial_product", integer_to_json(r.partial_product)},
                {"kind", to_string(r.kind)},
                {"subject", r.subject},
                {"statement", r.statement()},
                {"theorem", r.theorem},
                {"period", r.period},
                {"factors", std::move(factors)},
                {"assumptions", r.assumptions}};
    if (!r.contributors.empty()) {
        json cs = json::array();
        for (const auto& c : r.contributors) cs.push_back(to_json(c));
        out["contributors"] = std::move(cs);
    }
    return out;
}

BoundReport bound_report_from_json(const json& j)
{
    try {
        BoundReport r;
        if (!j.at("bound").is_null()) r.bound = integer_from_json(j.at("bound"));
        r.partial_product = integer_from_json(j.at("partial_product"));
        r.kind = bound_kind_from_string(j.at("kind").get<std::string>());
        r.subject = j.at("subject").get<std::string>();
        r.theorem = j.at("theorem").get<std::string>();
        r.period = j.at("period").get<std::uint64_t>();
        for (const auto& f : j.at("factors"))
            r.factors.push_back({f.at("index").get<std::uint64_t>(), exponent_entry_from_json(f)});
        r.assumptions = j.at("assumptions").get<std::vector<std::string>>();
        if (j.contains("contributors"))
            for (const auto& c : j.at("contributors")) r.contributors.push_back(bound_report_from_json(c));
        return r;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::MalformedInput, std::string("bound report: ") + e.what());
    }
}

json to_json(const CohomologyGroup& g)
{
    json out = to_json(g.group);
    out["degree"] = g.degree;
    return out;
}

json OutputEnvelope::to_json() const
{
    return {{"command", command}, {"inputs", inputs}, {"result", result}, {"citations", citations}};
}

OutputEnvelope OutputEnvelope::from_json(const json& j)
{
    try {
        OutputEnvelope e;
        e.command = j.at("command").get<std::string>();
        e.inputs = j.at("inputs");
        e.result = j.at("result");
        e.citations = j.at("citations").get<std::vector<std::string>>();
        return e;
    } catch (const json::exception& ex) {
        throw Error(ErrorKind::MalformedInput, std::string("envelope: ") + ex.what());
    }
}

} // namespace perind
