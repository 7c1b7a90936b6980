#ifndef WMMS_IO_HPP
#define WMMS_IO_HPP

#include <string>

#include <json.hpp>

#include "wmms/generators.hpp"
#include "wmms/instance.hpp"
#include "wmms/reductions.hpp"

namespace wmms {

using Json = nlohmann::ordered_json;

/// Instance document: {"format": "wmms-instance", "agents": [{"id","weight"}],
/// "items": [...], "costs": {agent: {item: "p/q"}}}. Large identical-valuation
/// families may use "agent_groups" ({"prefix","count","weight","costs"})
/// instead of "agents"/"costs"; loading expands them.
Json instance_to_json(const Instance& inst);
Json grouped_to_json(const GroupedInstance& gi);
Instance instance_from_json(const Json& j, long long max_agents = 200000);
GroupedInstance grouped_from_json(const Json& j);
bool is_grouped_document(const Json& j);

/// Allocation document: {"format": "wmms-allocation", "assignment":
/// {item: agent}, "metadata": {...}}.
Json allocation_to_json(const Allocation& alloc, const Json& metadata = Json::object());
Allocation allocation_from_json(const Json& j, Json* metadata = nullptr);

/// Reduction traces round-trip through the same structured format.
Json trace_to_json(const CanonicalTrace& trace);
CanonicalTrace trace_from_json(const Json& j);

Json certificates_to_json(const std::vector<LowerBoundCertificate>& certs);
std::vector<LowerBoundCertificate> certificates_from_json(const Json& j);

/// File helpers; errors carry the path. Written files end with a newline and
/// are byte-stable for identical inputs.
Json load_json(const std::string& path);
void save_json(const std::string& path, const Json& j);

Instance load_instance(const std::string& path, long long max_agents = 200000);

}  // namespace wmms

#endif
