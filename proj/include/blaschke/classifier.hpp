#ifndef BLASCHKE_CLASSIFIER_HPP
#define BLASCHKE_CLASSIFIER_HPP

#include <optional>
#include <string>
#include <vector>

#include "blaschke/commutant.hpp"
#include "blaschke/continuation.hpp"
#include "blaschke/partition.hpp"
#include "blaschke/product.hpp"

namespace blaschke {

struct ClassificationReport {
  int order = 0;
  Partition partition;
  int q = 0;
  Partition dual;
  int dirichlet_dim = 0;
  bool reducible_dirichlet = false;
  bool eq_power = false;
  bool decomposable = false;
  std::vector<std::vector<int>> subgroup_witnesses;
  std::vector<std::string> theorem_cases;
  std::string cross_check;  // "pass", "fail" or "not-applicable"
  std::string cross_check_detail;

  MonodromyReport mono;
  DirichletReport dirichlet;
};

/// Full pipeline: monodromy partition, dual count, commutant dimension,
/// power equivalence, decomposability, and the order 5/6/7/8 table checks.
ClassificationReport classify(const BlaschkeProduct& b, const ToolConfig& cfg = {});

struct CaseWitness {
  std::string label;
  BlaschkeProduct product;
  int expected_dim = 0;
};

/// One witness per order-6 case with fixed parameters; expected dimensions
/// are 6, 3, 2, 2, 3, 2, 2, 1.
std::vector<CaseWitness> order6_case_suite(std::uint64_t seed = 0);

}  // namespace blaschke

#endif
