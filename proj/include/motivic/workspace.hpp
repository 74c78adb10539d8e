#ifndef MOTIVIC_WORKSPACE_HPP
#define MOTIVIC_WORKSPACE_HPP

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "motivic/invariants.hpp"
#include "motivic/kgroup.hpp"
#include "motivic/snc.hpp"
#include "motivic/toric.hpp"

namespace motivic {

struct WorkspaceConfig {
    Int detLimit{1000000};
    long expansionOrder = 12;
    std::optional<long> precision;  // filtration level for modular equality
};

/// Loaded variety records, registered invariant families (builtins plus
/// user-declared), blow-up declarations, and run configuration.
struct Workspace {
    VarietyDb db;
    std::map<std::string, InvariantFamily> families;
    std::vector<BlowupDecl> blowups;
    WorkspaceConfig config;

    const InvariantFamily& family(const std::string& name) const;
};

Workspace load_workspace(const nlohmann::json& j);
Workspace load_workspace_file(const std::string& path);

/// {"rank": n, "rays": [[ints]], "cones": [[ray indices]],
///  "complete": bool, "support": "qgorenstein" | {"coneIndex": [coeffs]}}.
/// Returns the validated fan.
Fan load_fan(const nlohmann::json& j);
Fan load_fan_file(const std::string& path);

/// Support from the fan JSON's "support" field against the validated fan;
/// defaults to the Q-Gorenstein solve. Explicit functionals are checked
/// for the value-1-on-rays invariant.
SupportFunction load_support(const nlohmann::json& fanJson, const Fan& validated);

/// {"ambient": {"class": expr, "dim": d},
///  "components": [{"name": str, "mult": "rational"}],
///  "strata": {"": expr, "1": expr, "1,2": expr, ...},
///  "strataKind": "closed" | "open"}.
SncResolution load_resolution(const nlohmann::json& j, const VarietyDb& db);
SncResolution load_resolution_file(const std::string& path, const VarietyDb& db);

nlohmann::json read_json_file(const std::string& path);

}  // namespace motivic

#endif
