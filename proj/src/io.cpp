#include "wmms/io.hpp"

#include <fstream>

namespace wmms {

namespace {

Json rational_matrix(const Instance& inst, int agent) {
    Json row = Json::object();
    for (int j = 0; j < inst.m(); ++j) row[inst.items[j]] = inst.cost(agent, j).str();
    return row;
}

Rational parse_field(const Json& j, const char* what) {
    if (!j.is_string()) throw std::invalid_argument(std::string("expected rational string for ") + what);
    return Rational::parse(j.get<std::string>());
}

}  // namespace

Json instance_to_json(const Instance& inst) {
    Json j;
    j["format"] = "wmms-instance";
    j["agents"] = Json::array();
    for (int i = 0; i < inst.n(); ++i)
        j["agents"].push_back(Json{{"id", inst.agents[i]}, {"weight", inst.weights[i].str()}});
    j["items"] = inst.items;
    Json costs = Json::object();
    for (int i = 0; i < inst.n(); ++i) costs[inst.agents[i]] = rational_matrix(inst, i);
    j["costs"] = std::move(costs);
    return j;
}

Json grouped_to_json(const GroupedInstance& gi) {
    Json j;
    j["format"] = "wmms-instance";
    j["items"] = gi.items;
    j["agent_groups"] = Json::array();
    for (const auto& g : gi.groups) {
        Json row = Json::object();
        for (size_t e = 0; e < gi.items.size(); ++e) row[gi.items[e]] = g.values[e].str();
        j["agent_groups"].push_back(Json{{"prefix", g.prefix},
                                         {"count", g.count},
                                         {"weight", g.weight.str()},
                                         {"costs", std::move(row)}});
    }
    return j;
}

bool is_grouped_document(const Json& j) { return j.contains("agent_groups"); }

GroupedInstance grouped_from_json(const Json& j) {
    GroupedInstance gi;
    gi.items = j.at("items").get<std::vector<std::string>>();
    for (const auto& g : j.at("agent_groups")) {
        AgentGroupSpec spec;
        spec.prefix = g.at("prefix").get<std::string>();
        spec.count = g.at("count").get<long long>();
        spec.weight = parse_field(g.at("weight"), "group weight");
        const Json& costs = g.at("costs");
        spec.values.reserve(gi.items.size());
        for (const auto& item : gi.items) spec.values.push_back(parse_field(costs.at(item), "cost"));
        gi.groups.push_back(std::move(spec));
    }
    return gi;
}

Instance instance_from_json(const Json& j, long long max_agents) {
    if (is_grouped_document(j)) return grouped_from_json(j).expand(max_agents);
    Instance inst;
    for (const auto& a : j.at("agents")) {
        inst.agents.push_back(a.at("id").get<std::string>());
        inst.weights.push_back(parse_field(a.at("weight"), "weight"));
    }
    inst.items = j.at("items").get<std::vector<std::string>>();
    const Json& costs = j.at("costs");
    for (const auto& agent : inst.agents) {
        const Json& row = costs.at(agent);
        std::vector<Rational> values;
        values.reserve(inst.items.size());
        for (const auto& item : inst.items) values.push_back(parse_field(row.at(item), "cost"));
        inst.costs.push_back(std::move(values));
    }
    return inst;
}

Json allocation_to_json(const Allocation& alloc, const Json& metadata) {
    Json j;
    j["format"] = "wmms-allocation";
    Json assignment = Json::object();
    for (const auto& [item, agent] : alloc.assignment) assignment[item] = agent;
    j["assignment"] = std::move(assignment);
    j["metadata"] = metadata;
    return j;
}

Allocation allocation_from_json(const Json& j, Json* metadata) {
    Allocation alloc;
    for (const auto& [item, agent] : j.at("assignment").items())
        alloc.assignment[item] = agent.get<std::string>();
    if (metadata && j.contains("metadata")) *metadata = j.at("metadata");
    return alloc;
}

namespace {

Json profile_to_json(const AgentWmms& prof) {
    return Json{{"value", prof.value.str()}, {"partition", prof.partition}};
}

AgentWmms profile_from_json(const Json& j) {
    AgentWmms prof;
    prof.value = parse_field(j.at("value"), "wmms value");
    prof.partition = j.at("partition").get<std::vector<std::vector<int>>>();
    return prof;
}

Json rationals_to_json(const std::vector<Rational>& values) {
    Json arr = Json::array();
    for (const auto& v : values) arr.push_back(v.str());
    return arr;
}

std::vector<Rational> rationals_from_json(const Json& j) {
    std::vector<Rational> out;
    for (const auto& v : j) out.push_back(parse_field(v, "rational"));
    return out;
}

}  // namespace

Json trace_to_json(const CanonicalTrace& trace) {
    Json j;
    j["format"] = "wmms-canonical-trace";
    j["original"] = instance_to_json(trace.original);
    j["rounded_weights"] = Json{{"original", rationals_to_json(trace.weights.original)},
                                {"rounded", rationals_to_json(trace.weights.rounded)}};
    Json pads = Json::array();
    for (size_t i = 0; i < trace.pad.profiles.size(); ++i)
        pads.push_back(Json{{"profile", profile_to_json(trace.pad.profiles[i])},
                            {"aux_ids", trace.pad.aux_ids[i]}});
    j["pad"] = std::move(pads);
    j["scale"] = Json{{"weight_divisor", trace.scale.weight_divisor.str()},
                      {"value_divisors", rationals_to_json(trace.scale.value_divisors)}};
    j["dyadic"] = Json{{"aux_ids", trace.dyadic.aux_ids}, {"partitions", trace.dyadic.partitions}};
    j["ido"] = Json{{"original", instance_to_json(trace.ido.original)},
                    {"ido", instance_to_json(trace.ido.ido)}};
    j["aux_ids"] = std::vector<std::string>(trace.aux_ids.begin(), trace.aux_ids.end());
    return j;
}

CanonicalTrace trace_from_json(const Json& j) {
    CanonicalTrace trace;
    trace.original = instance_from_json(j.at("original"));
    trace.weights.original = rationals_from_json(j.at("rounded_weights").at("original"));
    trace.weights.rounded = rationals_from_json(j.at("rounded_weights").at("rounded"));
    for (const auto& pad : j.at("pad")) {
        trace.pad.profiles.push_back(profile_from_json(pad.at("profile")));
        trace.pad.aux_ids.push_back(pad.at("aux_ids").get<std::vector<std::string>>());
    }
    trace.scale.weight_divisor = parse_field(j.at("scale").at("weight_divisor"), "weight divisor");
    trace.scale.value_divisors = rationals_from_json(j.at("scale").at("value_divisors"));
    trace.dyadic.aux_ids =
        j.at("dyadic").at("aux_ids").get<std::vector<std::vector<std::vector<std::string>>>>();
    trace.dyadic.partitions =
        j.at("dyadic").at("partitions").get<std::vector<std::vector<std::vector<int>>>>();
    trace.ido.original = instance_from_json(j.at("ido").at("original"));
    trace.ido.ido = instance_from_json(j.at("ido").at("ido"));
    for (const auto& id : j.at("aux_ids")) trace.aux_ids.insert(id.get<std::string>());
    return trace;
}

Json certificates_to_json(const std::vector<LowerBoundCertificate>& certs) {
    Json j;
    j["format"] = "wmms-certificates";
    j["certificates"] = Json::array();
    for (const auto& cert : certs)
        j["certificates"].push_back(Json{{"group", cert.group}, {"bundles", cert.bundles}});
    return j;
}

std::vector<LowerBoundCertificate> certificates_from_json(const Json& j) {
    std::vector<LowerBoundCertificate> certs;
    for (const auto& c : j.at("certificates")) {
        LowerBoundCertificate cert;
        cert.group = c.at("group").get<int>();
        cert.bundles = c.at("bundles").get<std::vector<std::vector<std::vector<int>>>>();
        certs.push_back(std::move(cert));
    }
    return certs;
}

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw std::runtime_error("cannot parse '" + path + "': " + e.what());
    }
    return j;
}

void save_json(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << j.dump(2) << "\n";
}

Instance load_instance(const std::string& path, long long max_agents) {
    return instance_from_json(load_json(path), max_agents);
}

}  // namespace wmms
