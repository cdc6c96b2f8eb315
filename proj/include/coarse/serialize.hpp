#pragma once
#include <string>

#include <json.hpp>

#include "coarse/audit.hpp"
#include "coarse/cohomology.hpp"
#include "coarse/combing.hpp"
#include "coarse/corona.hpp"
#include "coarse/metric_space.hpp"

namespace coarse {

nlohmann::json space_to_json(const FiniteMetricSpace& s);
FiniteMetricSpace space_from_json(const nlohmann::json& j);

nlohmann::json combing_to_json(const Combing& c);
Combing combing_from_json(const nlohmann::json& j, std::shared_ptr<const FiniteMetricSpace> s);

nlohmann::json audit_to_json(const AuditReport& r);
AuditReport audit_from_json(const nlohmann::json& j);

nlohmann::json cohomology_to_json(const CohomologyResult& r);
nlohmann::json stabilization_to_json(const StabilizationReport& r);
nlohmann::json partition_to_json(const ClusterPartition& p);
nlohmann::json nerve_to_json(const NerveGraph& g);

std::string expanding_table_csv(const AuditReport& r);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace coarse
