#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "blaschke/classifier.hpp"
#include "blaschke/report.hpp"

namespace {

using namespace blaschke;

// Optional cap on worker threads for the suite subcommand.
unsigned thread_cap() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("BLASCHKE_LAB_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 1) return std::min<unsigned>(hw, unsigned(v));
  }
  return hw;
}

struct CommonOpts {
  std::string zeros;
  std::string constant = "1";
  std::string config_path;
  std::string out_path;
};

void add_product_options(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--zeros", opts.zeros, "zeros as \"a+bi:mult,a+bi:mult,...\"")
      ->required();
  cmd->add_option("--const", opts.constant, "unimodular constant (default 1)");
  cmd->add_option("--config", opts.config_path, "configuration JSON file");
  cmd->add_option("--out", opts.out_path, "write the report to this path");
}

ToolConfig resolve_config(const std::string& path) {
  ToolConfig cfg;
  if (!path.empty()) cfg = load_config(path);
  cfg.validate();
  return cfg;
}

BlaschkeProduct product_from_opts(const CommonOpts& opts) {
  return make_blaschke(parse_zero_list(opts.zeros), parse_complex(opts.constant));
}

int emit(const Json& report, const std::string& out_path) {
  std::string text = canonical_dump(report);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return 1;
    }
    out << text;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite Blaschke product monodromy and commutant reports"};
  app.require_subcommand(1);

  CommonOpts classify_opts, mono_opts, crit_opts, dim_opts;
  int enum_n = 5;
  bool enum_no_filter = false;
  std::string enum_config, enum_out, suite_config, suite_out;
  std::uint64_t suite_seed = 0;

  CLI::App* cmd_classify = app.add_subcommand("classify", "full classification report");
  add_product_options(cmd_classify, classify_opts);

  CLI::App* cmd_mono = app.add_subcommand("monodromy", "branch points, loops, partition");
  add_product_options(cmd_mono, mono_opts);

  CLI::App* cmd_crit = app.add_subcommand("critical", "critical points and branch set");
  add_product_options(cmd_crit, crit_opts);

  CLI::App* cmd_dim = app.add_subcommand("dim", "commutant dimension report");
  add_product_options(cmd_dim, dim_opts);

  CLI::App* cmd_enum = app.add_subcommand("partition-enum", "admissible partitions of Z_n");
  cmd_enum->add_option("--n", enum_n, "order n (2..12)")->required();
  cmd_enum->add_flag("--no-filter", enum_no_filter, "skip the n=6 exclusion");
  cmd_enum->add_option("--config", enum_config, "configuration JSON file");
  cmd_enum->add_option("--out", enum_out, "write the report to this path");

  CLI::App* cmd_suite = app.add_subcommand("case-suite", "order-6 witness table");
  cmd_suite->add_option("--seed", suite_seed, "seed for the generic witness");
  cmd_suite->add_option("--config", suite_config, "configuration JSON file");
  cmd_suite->add_option("--out", suite_out, "write the report to this path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cmd_classify) {
      ToolConfig cfg = resolve_config(classify_opts.config_path);
      BlaschkeProduct b = product_from_opts(classify_opts);
      ClassificationReport rep = classify(b, cfg);
      int rc = emit(build_classify_report(b, rep, cfg), classify_opts.out_path);
      if (rc != 0) return rc;
      return rep.cross_check == "fail" ? 2 : 0;
    }
    if (*cmd_mono) {
      ToolConfig cfg = resolve_config(mono_opts.config_path);
      BlaschkeProduct b = product_from_opts(mono_opts);
      MonodromyReport rep = monodromy(b, cfg);
      return emit(build_monodromy_report(b, rep, cfg), mono_opts.out_path);
    }
    if (*cmd_crit) {
      ToolConfig cfg = resolve_config(crit_opts.config_path);
      BlaschkeProduct b = product_from_opts(crit_opts);
      std::vector<Cplx> crit = critical_points(b);
      BranchSet E = branch_points(b, cfg.cluster_eps);
      return emit(build_critical_report(b, crit, E, cfg), crit_opts.out_path);
    }
    if (*cmd_dim) {
      ToolConfig cfg = resolve_config(dim_opts.config_path);
      BlaschkeProduct b = product_from_opts(dim_opts);
      DirichletReport rep = dirichlet_dim(b, cfg);
      return emit(build_dim_report(b, rep, cfg), dim_opts.out_path);
    }
    if (*cmd_enum) {
      ToolConfig cfg = resolve_config(enum_config);
      std::vector<Partition> parts = enumerate_admissible(enum_n, !enum_no_filter);
      return emit(build_enum_report(enum_n, !enum_no_filter, parts, cfg), enum_out);
    }
    if (*cmd_suite) {
      ToolConfig cfg = resolve_config(suite_config);
      cfg.seed = suite_seed;
      std::vector<CaseWitness> suite = order6_case_suite(cfg.seed);
      // Witnesses are independent; run them across workers and assemble the
      // results by index so the report bytes never depend on scheduling.
      std::vector<CaseSuiteResult> results(suite.size());
      std::vector<std::string> errors(suite.size());
      unsigned workers = std::min<unsigned>(thread_cap(), unsigned(suite.size()));
      std::vector<std::thread> pool;
      std::atomic<std::size_t> cursor{0};
      for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&]() {
          for (std::size_t i = cursor.fetch_add(1); i < suite.size();
               i = cursor.fetch_add(1)) {
            try {
              DirichletReport rep = dirichlet_dim(suite[i].product, cfg);
              results[i] = {suite[i].label, suite[i].expected_dim, rep.dim,
                            rep.dim == suite[i].expected_dim};
            } catch (const std::exception& e) {
              errors[i] = e.what();
            }
          }
        });
      for (std::thread& t : pool) t.join();
      for (const std::string& err : errors)
        if (!err.empty()) throw Error("case-suite: " + err);

      int rc = emit(build_case_suite_report(results, cfg), suite_out);
      if (rc != 0) return rc;
      bool all = std::all_of(results.begin(), results.end(),
                             [](const CaseSuiteResult& r) { return r.pass; });
      return all ? 0 : 2;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
