#pragma once

#include <json.hpp>
#include <ostream>
#include <string>

#include "rspgame/equilibrium.hpp"

namespace rsp {

/// Instance document: nodes as integer ids, tables as maps keyed "j,l,t",
/// fleets with per-node placements keyed by node id. Round trips are
/// lossless (doubles are emitted with shortest-exact formatting).
nlohmann::json instance_to_json(const ProblemInstance& instance);
ProblemInstance instance_from_json(const nlohmann::json& doc);
ProblemInstance load_instance(const std::string& path);
void save_instance(const ProblemInstance& instance, const std::string& path);

/// Solution documents: tables keyed "i,j,l,t" (providers are 1 and 2),
/// states keyed "i,j,t".
nlohmann::json gne_to_json(const ProblemInstance& instance, const GneSolution& solution);
/// Rebuilds a profile from a document; demand and state tables are taken
/// from the file when present and recomputed otherwise.
GneSolution gne_from_json(const ProblemInstance& instance, const nlohmann::json& doc);
nlohmann::json monopoly_to_json(const ProblemInstance& instance, const MonopolySolution& solution);

/// Flat CSV: one row per table entry, header table,i,j,l,t,value.
void write_solution_csv(const ProblemInstance& instance, const GneSolution& solution,
                        std::ostream& os);
void write_solution_csv(const ProblemInstance& instance, const MonopolySolution& solution,
                        std::ostream& os);

/// Scenario document: {"weights": [...]} plus either "demand_fields" (a list
/// of "j,l,t"-keyed maps) or "demand_scales" (a list of per-slot multipliers
/// applied to the instance's base demand).
ScenarioSet scenarios_from_json(const ProblemInstance& instance, const nlohmann::json& doc);

std::string qp_status_name(QpStatus status);

}  // namespace rsp
