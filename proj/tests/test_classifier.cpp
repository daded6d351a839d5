#include <doctest.h>

#include <numbers>
#include <random>

#include "blaschke/classifier.hpp"

using namespace blaschke;

namespace {

BlaschkeProduct random_product(std::mt19937_64& rng, int order, double rmax = 0.85) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::pair<Cplx, int>> zeros;
  for (int k = 0; k < order; ++k) {
    double r = rmax * std::sqrt(unit(rng));
    double th = 2.0 * std::numbers::pi * unit(rng);
    zeros.push_back({Cplx(r * std::cos(th), r * std::sin(th)), 1});
  }
  return make_blaschke(zeros);
}

}  // namespace

TEST_CASE("classify z^7") {
  ClassificationReport rep = classify(power_product(7));
  CHECK(rep.order == 7);
  CHECK(rep.q == 7);
  CHECK(rep.dirichlet_dim == 7);
  CHECK(rep.reducible_dirichlet);
  CHECK(rep.eq_power);
  CHECK(rep.cross_check == "pass");
  REQUIRE(rep.theorem_cases.size() == 1);
  CHECK(rep.theorem_cases[0] == "power");
}

TEST_CASE("classify a random order-7 product") {
  std::mt19937_64 rng(81);
  ClassificationReport rep = classify(random_product(rng, 7));
  CHECK(rep.dirichlet_dim == 1);
  CHECK_FALSE(rep.eq_power);
  CHECK(rep.cross_check == "pass");
  REQUIRE(rep.theorem_cases.size() == 1);
  CHECK(rep.theorem_cases[0] == "irreducible");
}

TEST_CASE("classify order-5 trichotomy labels") {
  ClassificationReport a = classify(power_product(5));
  CHECK(a.theorem_cases == std::vector<std::string>{"a"});
  CHECK(a.dirichlet_dim == 5);

  double beta = std::sqrt(55.0) / 8.0;
  BlaschkeProduct exc = power_product(2) *
                        make_blaschke({{Cplx(0.8 * beta, 0), 2}}) *
                        mobius_product(Cplx(beta, 0));
  ClassificationReport b = classify(exc);
  CHECK(b.theorem_cases == std::vector<std::string>{"b"});
  CHECK(b.q == 3);
  CHECK(b.dirichlet_dim == 1);
  CHECK(b.cross_check == "pass");

  std::mt19937_64 rng(83);
  ClassificationReport c = classify(random_product(rng, 5));
  CHECK(c.theorem_cases == std::vector<std::string>{"c"});
  CHECK(c.q == 2);
  CHECK(c.dirichlet_dim == 1);
}

TEST_CASE("order-6 case suite table") {
  std::vector<CaseWitness> suite = order6_case_suite(0);
  REQUIRE(suite.size() == 8);
  std::vector<int> expected = {6, 3, 2, 2, 3, 2, 2, 1};
  std::vector<std::string> labels = {"A", "B", "C", "D", "E", "F", "G", "H"};
  for (std::size_t i = 0; i < suite.size(); ++i) {
    CAPTURE(suite[i].label);
    CHECK(suite[i].label == labels[i]);
    CHECK(suite[i].expected_dim == expected[i]);
    ClassificationReport rep = classify(suite[i].product);
    CHECK(rep.dirichlet_dim == expected[i]);
    CHECK(rep.cross_check == "pass");
    bool found = false;
    for (const std::string& label : rep.theorem_cases) found = found || label == labels[i];
    CHECK(found);
  }
}

TEST_CASE("order-8 pattern labels") {
  // phi_{0.3}^2 (z^4)
  BlaschkeProduct i8 = compose(make_blaschke({{Cplx(0.3, 0), 2}}), power_product(4));
  ClassificationReport a = classify(i8);
  CHECK(a.partition == make_partition(8, {{0}, {1, 3, 5, 7}, {2}, {4}, {6}}));
  CHECK(a.q == 5);
  REQUIRE(a.theorem_cases.size() == 1);

  // phi_{0.5}^4 (z^2)
  BlaschkeProduct ii8 = compose(make_blaschke({{Cplx(0.5, 0), 4}}), power_product(2));
  ClassificationReport b = classify(ii8);
  CHECK(b.partition == make_partition(8, {{0}, {1, 5}, {2, 6}, {3, 7}, {4}}));
  CHECK(b.q == 5);

  // phi_{0.4}^2 (phi_{0.5}^2 (z^2))
  BlaschkeProduct iii8 = compose(
      make_blaschke({{Cplx(0.4, 0), 2}}),
      compose(make_blaschke({{Cplx(0.5, 0), 2}}), power_product(2)));
  ClassificationReport c = classify(iii8);
  CHECK(c.partition == make_partition(8, {{0}, {1, 3, 5, 7}, {2, 6}, {4}}));
  CHECK(c.q == 4);
}

TEST_CASE("decomposability witnesses") {
  BlaschkeProduct b = compose(make_blaschke({{Cplx(0.5, 0), 2}}), power_product(3));
  ClassificationReport rep = classify(b);
  CHECK(rep.decomposable);
  // the order-3 subgroup is a block union for the {{0},{1,3,5},{2},{4}} partition
  bool has_order3 = false;
  for (const auto& witness : rep.subgroup_witnesses)
    has_order3 = has_order3 || witness == std::vector<int>{0, 2, 4};
  CHECK(has_order3);

  std::mt19937_64 rng(89);
  ClassificationReport generic = classify(random_product(rng, 6));
  CHECK_FALSE(generic.decomposable);
  CHECK(generic.dirichlet_dim == 1);
}

TEST_CASE("classification is equivalence invariant") {
  std::mt19937_64 rng(91);
  BlaschkeProduct b = random_product(rng, 5, 0.7);
  ClassificationReport base = classify(b);

  // a * mobius(w) o b for unimodular a and a disk point w
  Cplx w(0.23, -0.31);
  Cplx a = std::polar(1.0, 1.1);
  BlaschkeProduct moved = rotate(compose(mobius_product(w), b), a);
  ClassificationReport rep = classify(moved);
  CHECK(rep.partition == base.partition);
  CHECK(rep.q == base.q);
  CHECK(rep.dirichlet_dim == base.dirichlet_dim);
}

TEST_CASE("dual partition block count matches q") {
  std::mt19937_64 rng(93);
  for (int order = 5; order <= 7; ++order) {
    ClassificationReport rep = classify(random_product(rng, order));
    CHECK(rep.dual.q() == rep.q);
  }
}
