// Acceptance suite: runs every contract criterion once and prints one
// PASS/FAIL line per criterion. Exit status is the number of failures.

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <vector>

#include "blaschke/classifier.hpp"
#include "blaschke/report.hpp"

using namespace blaschke;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& what) {
  std::printf("criterion %2d: %s  %s\n", criterion, pass ? "PASS" : "FAIL", what.c_str());
  if (!pass) ++failures;
}

Cplx random_disk_point(std::mt19937_64& rng, double rmax) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double r = rmax * std::sqrt(unit(rng));
  double th = 2.0 * std::numbers::pi * unit(rng);
  return Cplx(r * std::cos(th), r * std::sin(th));
}

BlaschkeProduct random_product(std::mt19937_64& rng, int order, double rmax = 0.85) {
  std::vector<std::pair<Cplx, int>> zeros;
  for (int k = 0; k < order; ++k) zeros.push_back({random_disk_point(rng, rmax), 1});
  return make_blaschke(zeros);
}

Cplx cyclotomic(int n, int k) {
  double t = 2.0 * std::numbers::pi * k / n;
  return Cplx(std::cos(t), std::sin(t));
}

// ---- criterion implementations -------------------------------------------

void criterion_1() {
  std::mt19937_64 rng(1001);
  int bad = 0;
  for (int trial = 0; trial < 200; ++trial) {
    int order = 2 + trial % 7;
    BlaschkeProduct b = random_product(rng, order);
    try {
      if (int(critical_points(b).size()) != order - 1) ++bad;
    } catch (const Error&) {
      ++bad;
    }
  }
  report(1, bad == 0,
         "Bochner count n-1 on 200 seeded random products of orders 2..8 (" +
             std::to_string(200 - bad) + "/200)");
}

void criterion_2() {
  bool ok = true;
  std::vector<Partition> n5 = enumerate_admissible(5, false);
  ok = ok && n5.size() == 3;
  ok = ok && n5[0] == make_partition(5, {{0}, {1}, {2}, {3}, {4}});
  ok = ok && n5[1] == make_partition(5, {{0}, {1, 4}, {2, 3}});
  ok = ok && n5[2] == make_partition(5, {{0}, {1, 2, 3, 4}});

  std::vector<Partition> n7 = enumerate_admissible(7, false);
  ok = ok && n7.size() == 4;
  ok = ok && n7[0] == make_partition(7, {{0}, {1}, {2}, {3}, {4}, {5}, {6}});
  ok = ok && n7[1] == make_partition(7, {{0}, {1, 6}, {2, 5}, {3, 4}});
  ok = ok && n7[2] == make_partition(7, {{0}, {1, 2, 4}, {3, 5, 6}});
  ok = ok && n7[3] == make_partition(7, {{0}, {1, 2, 3, 4, 5, 6}});

  std::vector<Partition> n6 = enumerate_admissible(6, true);
  ok = ok && n6.size() == 6;
  std::vector<Partition> expected6 = {
      make_partition(6, {{0}, {1}, {2}, {3}, {4}, {5}}),
      make_partition(6, {{0}, {1, 3, 5}, {2}, {4}}),
      make_partition(6, {{0}, {1, 4}, {2, 5}, {3}}),
      make_partition(6, {{0}, {1, 2, 4, 5}, {3}}),
      make_partition(6, {{0}, {1, 3, 5}, {2, 4}}),
      make_partition(6, {{0}, {1, 2, 3, 4, 5}}),
  };
  for (const Partition& want : expected6) {
    bool found = false;
    for (const Partition& got : n6) found = found || got == want;
    ok = ok && found;
  }
  report(2, ok, "admissible partitions: 3 for n=5, 4 for n=7, 6 for filtered n=6");
}

struct TrichotomyData {
  std::vector<ClassificationReport> reports;
  bool partitions_ok = true;
};

TrichotomyData criterion_3() {
  TrichotomyData out;

  ClassificationReport a = classify(power_product(5));
  out.reports.push_back(a);
  bool ok_a = a.partition == make_partition(5, {{0}, {1}, {2}, {3}, {4}});

  double t = 0.8;
  double beta = std::sqrt((t * t + t - 1.0) / (t * t * t));
  double alpha = t * beta;
  bool pair_ok = std::abs(mobius_eval(Cplx(beta, 0), Cplx(alpha, 0)) -
                          Cplx(alpha * alpha / beta, 0)) < 1e-8;
  BlaschkeProduct exc = power_product(2) * make_blaschke({{Cplx(alpha, 0), 2}}) *
                        mobius_product(Cplx(beta, 0));
  ClassificationReport bexc = classify(exc);
  out.reports.push_back(bexc);
  bool ok_b = pair_ok && bexc.partition == make_partition(5, {{0}, {1, 4}, {2, 3}}) &&
              bexc.q == 3;

  std::mt19937_64 rng(3003);
  bool ok_c = true;
  for (int trial = 0; trial < 50; ++trial) {
    BlaschkeProduct b = random_product(rng, 5);
    ClassificationReport rep = classify(b);
    out.reports.push_back(rep);
    ok_c = ok_c && rep.partition == make_partition(5, {{0}, {1, 2, 3, 4}}) && rep.q == 2;
  }
  out.partitions_ok = ok_a && ok_b && ok_c;
  report(3, out.partitions_ok,
         "order-5 trichotomy: z^5 singletons, exceptional pair {{0},{1,4},{2,3}}, 50 "
         "random generic");
  return out;
}

void criterion_4(const TrichotomyData& tri) {
  bool ok = true;
  for (const ClassificationReport& rep : tri.reports) {
    ok = ok && (rep.dirichlet_dim > 1) == rep.eq_power;
    ok = ok && rep.dirichlet.spectral_gap >= 1e3;
  }
  ok = ok && tri.reports[0].dirichlet_dim == 5;
  report(4, ok,
         "order-5 commutant verdict: dim>1 iff power-equivalent; z^5 has dim 5; "
         "spectral gaps >= 1e3");
}

std::vector<ClassificationReport> criterion_5() {
  std::vector<ClassificationReport> reports;
  std::vector<int> expected = {6, 3, 2, 2, 3, 2, 2, 1};
  bool ok = true;
  std::vector<CaseWitness> suite = order6_case_suite(0);
  ok = ok && suite.size() == 8;
  for (std::size_t i = 0; i < suite.size(); ++i) {
    ClassificationReport rep = classify(suite[i].product);
    reports.push_back(rep);
    ok = ok && rep.dirichlet_dim == expected[i];
  }
  report(5, ok, "order-6 witnesses give dims 6,3,2,2,3,2,2,1");
  return reports;
}

std::vector<ClassificationReport> criterion_6() {
  std::vector<ClassificationReport> reports;
  ClassificationReport power = classify(power_product(7));
  reports.push_back(power);
  bool ok = power.dirichlet_dim == 7 && power.eq_power;

  std::mt19937_64 rng(6006);
  for (int trial = 0; trial < 50; ++trial) {
    ClassificationReport rep = classify(random_product(rng, 7));
    reports.push_back(rep);
    ok = ok && rep.dirichlet_dim == 1;
    ok = ok && (rep.dirichlet_dim > 1) == rep.eq_power;
  }
  report(6, ok, "order-7: z^7 has dim 7, 50 random products have dim 1");
  return reports;
}

std::vector<ClassificationReport> criterion_7() {
  std::vector<ClassificationReport> reports;
  bool ok = true;

  BlaschkeProduct b1 = compose(make_blaschke({{Cplx(0.3, 0), 2}}), power_product(4));
  reports.push_back(classify(b1));
  ok = ok && reports.back().partition ==
                 make_partition(8, {{0}, {1, 3, 5, 7}, {2}, {4}, {6}}) &&
       reports.back().q == 5;

  BlaschkeProduct b2 = compose(make_blaschke({{Cplx(0.5, 0), 4}}), power_product(2));
  reports.push_back(classify(b2));
  ok = ok && reports.back().partition ==
                 make_partition(8, {{0}, {1, 5}, {2, 6}, {3, 7}, {4}}) &&
       reports.back().q == 5;

  BlaschkeProduct b3 =
      compose(make_blaschke({{Cplx(0.4, 0), 2}}),
              compose(make_blaschke({{Cplx(0.5, 0), 2}}), power_product(2)));
  reports.push_back(classify(b3));
  ok = ok && reports.back().partition ==
                 make_partition(8, {{0}, {1, 3, 5, 7}, {2, 6}, {4}}) &&
       reports.back().q == 4;

  report(7, ok, "order-8 compositions give the three expected partitions");
  return reports;
}

void criterion_8() {
  std::mt19937_64 rng(8008);
  bool ok = true;
  for (int trial = 0; trial < 20; ++trial) {
    Cplx alpha = random_disk_point(rng, 0.8);
    Cplx beta = random_disk_point(rng, 0.8);
    Cplx gamma = random_disk_point(rng, 0.8);
    Order5Oracle oracle = order5_d_coeffs(alpha, beta, gamma);
    BlaschkeProduct b = power_product(2) * make_blaschke({{alpha, 1}}) *
                        make_blaschke({{beta, 1}}) * make_blaschke({{gamma, 1}});
    for (int k = 0; k < 20; ++k) {
      Cplx w = random_disk_point(rng, 0.9);
      Cplx z = random_disk_point(rng, 0.9);
      Cplx direct = f_bivariate_eval(b, w, z);
      Cplx factored = oracle.d_factored_eval(w, z);
      ok = ok && std::abs(direct - factored) <= 1e-10 * std::max(1.0, std::abs(direct));
    }
  }

  double t = 0.8;
  double beta0 = std::sqrt((t * t + t - 1.0) / (t * t * t));
  double alpha0 = t * beta0;
  auto [holds, oracle] = order5_exceptional(Cplx(alpha0, 0), Cplx(beta0, 0));
  ok = ok && holds;
  BlaschkeProduct exc = power_product(2) * make_blaschke({{Cplx(alpha0, 0), 2}}) *
                        mobius_product(Cplx(beta0, 0));
  for (int k = 0; k < 20; ++k) {
    Cplx w = random_disk_point(rng, 0.9);
    Cplx z = random_disk_point(rng, 0.9);
    ok = ok && std::abs(f_bivariate_eval(exc, w, z) - oracle.p_factored_eval(w, z)) < 1e-9;
  }
  report(8, ok, "coefficient identities for f(w,z) on 20 triples and the exceptional pair");
}

void criterion_9() {
  std::mt19937_64 rng(9009);
  bool ok = true;
  double worst = 0.0;
  for (int order = 3; order <= 8; ++order) {
    BlaschkeProduct b = random_product(rng, order);
    LabeledFiber fiber = label_fiber(b);
    for (int j = 0; j < order; ++j) {
      LabeledFiber rebased = label_fiber_from(b, fiber.values[j]);
      for (int i = 0; i < order; ++i) {
        double err = std::abs(rebased.values[i] - fiber.values[(i + j) % order]);
        worst = std::max(worst, err);
      }
    }
  }
  ok = worst < 1e-6;
  char buf[64];
  std::snprintf(buf, sizeof buf, "max deviation %.2e", worst);
  report(9, ok, std::string("group law rho_i o rho_j = rho_{i+j mod n} (") + buf + ")");
}

void criterion_10(const TrichotomyData& tri, const std::vector<ClassificationReport>& six,
                  const std::vector<ClassificationReport>& seven,
                  const std::vector<ClassificationReport>& eight) {
  bool ok = true;
  auto check = [&](const ClassificationReport& rep) {
    ok = ok && dual_partition(rep.partition).q() == rep.q;
  };
  for (const auto& rep : tri.reports) check(rep);
  for (const auto& rep : six) check(rep);
  for (const auto& rep : seven) check(rep);
  for (const auto& rep : eight) check(rep);
  report(10, ok, "dual partition block count equals q on every computed partition");
}

void criterion_11() {
  BlaschkeProduct b = compose(make_blaschke({{Cplx(0.5, 0), 2}}), power_product(3));
  MonodromyReport mono = monodromy(b);
  DirichletReport dir = dirichlet_dim(b, mono, {});
  bool ok = dir.dim == 3;

  auto f = [](Cplx w) { return w * w * w - Cplx(0.2, 0.4) * w + Cplx(0.7, -0.3); };
  auto phif = [&](Cplx w) { return eval(b, w) * f(w); };
  std::vector<Cplx> a(dir.partition.q());
  for (int i = 0; i < dir.partition.q(); ++i) a[i] = dir.coefficient_basis(i, 0);

  std::mt19937_64 rng(1111);
  int tested = 0;
  while (tested < 16) {
    Cplx z = random_disk_point(rng, 0.7);
    bool clear = true;
    for (Cplx e : mono.branch_set.points) clear = clear && std::abs(z - e) > 5e-3;
    if (!clear) continue;
    ++tested;
    for (const auto& blk : mono.partition.blocks) {
      Cplx lhs = xi_apply(b, mono.fiber, blk, phif, z, {}, &mono.branch_set);
      Cplx rhs = eval(b, z) * xi_apply(b, mono.fiber, blk, f, z, {}, &mono.branch_set);
      ok = ok && std::abs(lhs - rhs) <= 1e-8 * std::max(1.0, std::abs(rhs));
    }
    Cplx lhs = t_apply(b, mono.fiber, mono.partition, a, phif, z, {}, &mono.branch_set);
    Cplx rhs =
        eval(b, z) * t_apply(b, mono.fiber, mono.partition, a, f, z, {}, &mono.branch_set);
    ok = ok && std::abs(lhs - rhs) <= 1e-8 * std::max(1.0, std::abs(rhs));
  }
  report(11, ok, "xi(phi f) = phi xi(f) and T(phi f) = phi T(f) at 16 points, order-6 case B");
}

void criterion_12() {
  ToolConfig cfg;
  cfg.seed = 0;
  auto run = [&]() {
    std::vector<CaseSuiteResult> results;
    for (const CaseWitness& witness : order6_case_suite(cfg.seed)) {
      DirichletReport rep = dirichlet_dim(witness.product, cfg);
      results.push_back({witness.label, witness.expected_dim, rep.dim,
                         rep.dim == witness.expected_dim});
    }
    return canonical_dump(build_case_suite_report(results, cfg));
  };
  std::string first = run();
  std::string second = run();
  report(12, first == second && !first.empty(),
         "two identically seeded case-suite runs serialize to identical bytes");
}

}  // namespace

int main() {
  try {
    criterion_1();
    criterion_2();
    TrichotomyData tri = criterion_3();
    criterion_4(tri);
    std::vector<ClassificationReport> six = criterion_5();
    std::vector<ClassificationReport> seven = criterion_6();
    std::vector<ClassificationReport> eight = criterion_7();
    criterion_8();
    criterion_9();
    criterion_10(tri, six, seven, eight);
    criterion_11();
    criterion_12();
  } catch (const std::exception& e) {
    std::printf("acceptance suite aborted: %s\n", e.what());
    return 99;
  }
  std::printf("%s\n", failures == 0 ? "all criteria passed" : "criteria FAILED");
  return failures;
}
