#include "blaschke/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace blaschke {

namespace {

Partition p5_pairs() { return make_partition(5, {{0}, {1, 4}, {2, 3}}); }
Partition p5_rest() { return make_partition(5, {{0}, {1, 2, 3, 4}}); }

bool is_singletons(const Partition& p) { return p.q() == p.n; }

std::vector<std::string> order6_labels(const Partition& p, int dim) {
  if (dim == 6 && is_singletons(p)) return {"A"};
  if (dim == 1) return {"H"};
  Partition b = make_partition(6, {{0}, {1, 3, 5}, {2}, {4}});
  Partition cd = make_partition(6, {{0}, {1, 4}, {2, 5}, {3}});
  Partition f = make_partition(6, {{0}, {1, 2, 4, 5}, {3}});
  Partition g = make_partition(6, {{0}, {1, 3, 5}, {2, 4}});
  if (p == b && dim == 3) return {"B"};
  if (p == b && dim == 2) return {"C"};
  if (p == cd && dim == 2) return {"D"};
  if (p == cd && dim == 3) return {"E"};
  if (p == f && dim == 2) return {"F"};
  if (p == g && dim == 2) return {"G"};
  return {};
}

std::string order8_label(const Partition& p) {
  if (p == make_partition(8, {{0}, {1, 3, 5, 7}, {2}, {4}, {6}})) return "composed-quartic";
  if (p == make_partition(8, {{0}, {1, 5}, {2, 6}, {3, 7}, {4}})) return "quartic-of-square";
  if (p == make_partition(8, {{0}, {1, 3, 5, 7}, {2, 6}, {4}})) return "double-composition";
  return "";
}

}  // namespace

ClassificationReport classify(const BlaschkeProduct& b, const ToolConfig& cfg) {
  const int n = b.order();
  if (n < 2 || n > 12) throw Error("classify: order must be in [2, 12]");

  ClassificationReport rep;
  rep.order = n;
  rep.mono = monodromy(b, cfg);
  rep.partition = rep.mono.partition;
  rep.q = rep.mono.q;
  rep.dual = dual_partition(rep.partition);
  rep.dirichlet = dirichlet_dim(b, rep.mono, cfg);
  rep.dirichlet_dim = rep.dirichlet.dim;
  rep.reducible_dirichlet = rep.dirichlet.reducible;
  rep.eq_power = equivalent_to_power(b);
  rep.subgroup_witnesses = subgroup_unions(rep.partition);
  rep.decomposable = !rep.subgroup_witnesses.empty();

  rep.cross_check = "not-applicable";

  auto fail = [&](const std::string& detail) {
    rep.cross_check = "fail";
    if (!rep.cross_check_detail.empty()) rep.cross_check_detail += "; ";
    rep.cross_check_detail += detail;
  };

  if (n == 5 || n == 7) {
    rep.cross_check = "pass";
    if (rep.reducible_dirichlet != rep.eq_power)
      fail("dim > 1 must coincide with power equivalence");
    if (n == 5) {
      bool in_trichotomy = is_singletons(rep.partition) || rep.partition == p5_pairs() ||
                           rep.partition == p5_rest();
      if (!in_trichotomy) fail("partition outside the order-5 trichotomy");
      if (is_singletons(rep.partition))
        rep.theorem_cases = {"a"};
      else if (rep.partition == p5_pairs())
        rep.theorem_cases = {"b"};
      else if (rep.partition == p5_rest())
        rep.theorem_cases = {"c"};
    } else {
      rep.theorem_cases = {rep.eq_power ? "power" : "irreducible"};
    }
  } else if (n == 6) {
    rep.theorem_cases = order6_labels(rep.partition, rep.dirichlet_dim);
    rep.cross_check = rep.theorem_cases.empty() ? "fail" : "pass";
    if (rep.theorem_cases.empty())
      rep.cross_check_detail = "no order-6 table row matches (partition, dim)";
  } else if (n == 8) {
    std::string label = order8_label(rep.partition);
    if (!label.empty()) rep.theorem_cases = {label};
  }

  return rep;
}

std::vector<CaseWitness> order6_case_suite(std::uint64_t seed) {
  auto mob = [](double a, int m) { return make_blaschke({{Cplx(a, 0), m}}); };

  std::vector<CaseWitness> suite;
  suite.push_back({"A", power_product(6), 6});
  suite.push_back({"B", compose(mob(0.5, 2), power_product(3)), 3});
  suite.push_back({"C", compose(mob(0.6 * 0.6 * 0.6, 2), mob(0.6, 3)), 2});
  suite.push_back({"D", compose(mob(0.5, 3), power_product(2)), 2});
  suite.push_back({"E", compose(mob(0.6 * 0.6, 3), mob(0.6, 2)), 3});
  suite.push_back({"F", compose(mob(0.4, 2) * mob(0.7, 1), power_product(2)), 2});
  suite.push_back(
      {"G", compose(mob(0.5 * 0.5 * 0.3, 2), mob(0.5, 2) * mob(0.3, 1)), 2});

  std::mt19937_64 rng(seed + 97);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::pair<Cplx, int>> zeros;
  for (int k = 0; k < 6; ++k) {
    double r = 0.2 + 0.6 * std::sqrt(unit(rng));
    double th = 2.0 * std::numbers::pi * unit(rng);
    zeros.push_back({Cplx(r * std::cos(th), r * std::sin(th)), 1});
  }
  suite.push_back({"H", make_blaschke(zeros), 1});
  return suite;
}

}  // namespace blaschke
