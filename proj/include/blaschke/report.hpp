#ifndef BLASCHKE_REPORT_HPP
#define BLASCHKE_REPORT_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "blaschke/classifier.hpp"
#include "blaschke/commutant.hpp"
#include "blaschke/continuation.hpp"
#include "blaschke/partition.hpp"
#include "blaschke/product.hpp"
#include "blaschke/types.hpp"

namespace blaschke {

using Json = nlohmann::ordered_json;

/// Deterministic serialization: keys in construction order, floats with 17
/// significant digits, no locale dependence. parse + re-dump is the identity
/// on bytes.
std::string canonical_dump(const Json& j);

Json json_cplx(Cplx z);
Json json_partition(const Partition& p);
Json config_to_json(const ToolConfig& cfg);
ToolConfig config_from_json(const Json& j);
ToolConfig load_config(const std::string& path);

/// Complex literal: [-+]?float([+-]float i | i)?  e.g. "0.5", "-1", "0.3+0.2i", "1i".
Cplx parse_complex(const std::string& text);
/// "a+bi:mult,a+bi:mult,..." with an optional ":mult" (default 1).
std::vector<std::pair<Cplx, int>> parse_zero_list(const std::string& text);

Json build_input_json(const BlaschkeProduct& b);
Json build_classify_report(const BlaschkeProduct& b, const ClassificationReport& rep,
                           const ToolConfig& cfg);
Json build_monodromy_report(const BlaschkeProduct& b, const MonodromyReport& rep,
                            const ToolConfig& cfg);
Json build_dim_report(const BlaschkeProduct& b, const DirichletReport& rep,
                      const ToolConfig& cfg);
Json build_critical_report(const BlaschkeProduct& b, const std::vector<Cplx>& critical,
                           const BranchSet& E, const ToolConfig& cfg);
Json build_enum_report(int n, bool filtered, const std::vector<Partition>& partitions,
                       const ToolConfig& cfg);

struct CaseSuiteResult {
  std::string label;
  int expected_dim = 0;
  int computed_dim = 0;
  bool pass = false;
};

Json build_case_suite_report(const std::vector<CaseSuiteResult>& results,
                             const ToolConfig& cfg);

}  // namespace blaschke

#endif
