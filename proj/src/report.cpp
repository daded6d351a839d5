#include "blaschke/report.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace blaschke {

namespace {

void dump_string(const std::string& s, std::string& out) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

void dump_value(const Json& j, std::string& out) {
  switch (j.type()) {
    case Json::value_t::null: out += "null"; break;
    case Json::value_t::boolean: out += j.get<bool>() ? "true" : "false"; break;
    case Json::value_t::number_integer:
      out += std::to_string(j.get<long long>());
      break;
    case Json::value_t::number_unsigned:
      out += std::to_string(j.get<unsigned long long>());
      break;
    case Json::value_t::number_float: {
      double v = j.get<double>();
      if (v == 0.0) v = 0.0;  // drop the sign of -0, which JSON cannot round trip
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
      break;
    }
    case Json::value_t::string: dump_string(j.get<std::string>(), out); break;
    case Json::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& item : j) {
        if (!first) out += ',';
        first = false;
        dump_value(item, out);
      }
      out += ']';
      break;
    }
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        dump_string(it.key(), out);
        out += ':';
        dump_value(it.value(), out);
      }
      out += '}';
      break;
    }
    default: throw Error("canonical_dump: unsupported value type");
  }
}

}  // namespace

std::string canonical_dump(const Json& j) {
  std::string out;
  dump_value(j, out);
  out += '\n';
  return out;
}

Json json_cplx(Cplx z) { return Json::array({z.real(), z.imag()}); }

Json json_partition(const Partition& p) {
  Json arr = Json::array();
  for (const auto& blk : p.blocks) arr.push_back(blk);
  return arr;
}

Json config_to_json(const ToolConfig& cfg) {
  Json j = Json::object();
  j["cluster_eps"] = cfg.cluster_eps;
  j["rank_tol"] = cfg.rank_tol;
  j["newton_tol"] = cfg.newton_tol;
  j["safety_eps"] = cfg.safety_eps;
  j["initial_step"] = cfg.initial_step;
  j["mean_circle_radius"] = cfg.mean_circle_radius;
  j["mean_samples"] = cfg.mean_samples;
  j["seed"] = cfg.seed;
  return j;
}

ToolConfig config_from_json(const Json& j) {
  ToolConfig cfg;
  if (j.contains("cluster_eps")) cfg.cluster_eps = j.at("cluster_eps").get<double>();
  if (j.contains("rank_tol")) cfg.rank_tol = j.at("rank_tol").get<double>();
  if (j.contains("newton_tol")) cfg.newton_tol = j.at("newton_tol").get<double>();
  if (j.contains("safety_eps")) cfg.safety_eps = j.at("safety_eps").get<double>();
  if (j.contains("initial_step")) cfg.initial_step = j.at("initial_step").get<double>();
  if (j.contains("mean_circle_radius"))
    cfg.mean_circle_radius = j.at("mean_circle_radius").get<double>();
  if (j.contains("mean_samples")) cfg.mean_samples = j.at("mean_samples").get<int>();
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  cfg.validate();
  return cfg;
}

ToolConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file: " + path);
  Json j = Json::parse(in);
  return config_from_json(j);
}

namespace {

double parse_float(const std::string& s, std::size_t& pos) {
  std::size_t start = pos;
  if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) ++pos;
  std::size_t digits = 0;
  while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '.'))
    ++pos, ++digits;
  if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
    ++pos;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  if (digits == 0) throw ParseError("expected a number", start);
  try {
    return std::stod(s.substr(start, pos - start));
  } catch (const std::exception&) {
    throw ParseError("malformed number", start);
  }
}

}  // namespace

Cplx parse_complex(const std::string& text) {
  std::size_t pos = 0;
  double first = parse_float(text, pos);
  if (pos == text.size()) return Cplx(first, 0.0);
  if (text[pos] == 'i') {
    if (pos + 1 != text.size()) throw ParseError("trailing characters after 'i'", pos + 1);
    return Cplx(0.0, first);
  }
  if (text[pos] != '+' && text[pos] != '-')
    throw ParseError("expected '+', '-' or 'i'", pos);
  double second = parse_float(text, pos);
  if (pos == text.size() || text[pos] != 'i')
    throw ParseError("imaginary part requires the 'i' suffix", pos);
  if (pos + 1 != text.size()) throw ParseError("trailing characters after 'i'", pos + 1);
  return Cplx(first, second);
}

std::vector<std::pair<Cplx, int>> parse_zero_list(const std::string& text) {
  std::vector<std::pair<Cplx, int>> zeros;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::string item = text.substr(start, comma == std::string::npos ? std::string::npos
                                                                     : comma - start);
    if (item.empty()) throw ParseError("empty zero entry", start);
    std::size_t colon = item.find(':');
    int mult = 1;
    std::string point_text = item;
    if (colon != std::string::npos) {
      point_text = item.substr(0, colon);
      std::string mult_text = item.substr(colon + 1);
      if (mult_text.empty() ||
          !std::all_of(mult_text.begin(), mult_text.end(),
                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw ParseError("multiplicity must be a positive integer", start + colon + 1);
      mult = std::stoi(mult_text);
    }
    try {
      zeros.emplace_back(parse_complex(point_text), mult);
    } catch (const ParseError& e) {
      throw ParseError(e.what() + std::string(" in zero entry"), start + e.position);
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return zeros;
}

Json build_input_json(const BlaschkeProduct& b) {
  Json j = Json::object();
  Json zeros = Json::array();
  for (const auto& mz : b.zeros()) {
    Json entry = Json::object();
    entry["point"] = json_cplx(mz.point);
    entry["multiplicity"] = mz.multiplicity;
    zeros.push_back(entry);
  }
  j["zeros"] = zeros;
  j["unimodular"] = json_cplx(b.unimodular());
  j["order"] = b.order();
  return j;
}

namespace {

Json header(const char* command, const ToolConfig& cfg) {
  Json j = Json::object();
  j["schema"] = "blaschke-lab/1";
  j["command"] = command;
  j["config"] = config_to_json(cfg);
  return j;
}

Json json_monodromy_body(const MonodromyReport& rep) {
  Json j = Json::object();
  Json branch = Json::array();
  for (Cplx e : rep.branch_set.points) branch.push_back(json_cplx(e));
  j["branch_points"] = branch;
  j["branch_cluster_eps"] = rep.branch_set.cluster_eps;
  j["tight_clustering"] = rep.branch_set.tight_clustering;
  j["base_point"] = json_cplx(rep.fiber.base);
  Json fiber = Json::array();
  for (Cplx v : rep.fiber.values) fiber.push_back(json_cplx(v));
  j["fiber"] = fiber;
  Json gens = Json::array();
  for (std::size_t i = 0; i < rep.generators.size(); ++i) {
    Json g = Json::object();
    g["about"] = json_cplx(rep.loops[i].about);
    g["radius"] = rep.loops[i].radius;
    g["merged"] = rep.loops[i].merged;
    g["permutation"] = rep.generators[i].images;
    gens.push_back(g);
  }
  j["generators"] = gens;
  j["overlapping_loops"] = rep.overlapping_loops;
  j["partition"] = json_partition(rep.partition);
  j["q"] = rep.q;
  j["boundary_label_perm"] = rep.boundary_label_perm.images;
  return j;
}

Json json_dirichlet_body(const DirichletReport& rep) {
  Json j = Json::object();
  j["partition"] = json_partition(rep.partition);
  Json multisets = Json::array();
  for (const auto& ms : rep.block_data.multisets) {
    Json entry = Json::array();
    for (Cplx v : ms) entry.push_back(json_cplx(v));
    multisets.push_back(entry);
  }
  j["block_multisets"] = multisets;
  j["inverse_block"] = rep.block_data.inverse_block;
  Json pts = Json::array();
  for (Cplx p : rep.distinct_points) pts.push_back(json_cplx(p));
  j["distinct_points"] = pts;
  auto matrix_json = [](const Eigen::MatrixXcd& m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      Json row = Json::array();
      for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(json_cplx(m(r, c)));
      rows.push_back(row);
    }
    return rows;
  };
  j["matrix_m"] = matrix_json(rep.matrix_m);
  j["matrix_n"] = matrix_json(rep.matrix_n);
  j["rank"] = rep.rank;
  j["dim"] = rep.dim;
  j["reducible"] = rep.reducible;
  j["coefficient_basis"] = matrix_json(rep.coefficient_basis);
  j["spectral_gap"] = std::isinf(rep.spectral_gap) ? Json("inf") : Json(rep.spectral_gap);
  j["ill_conditioned"] = rep.ill_conditioned;
  return j;
}

}  // namespace

Json build_classify_report(const BlaschkeProduct& b, const ClassificationReport& rep,
                           const ToolConfig& cfg) {
  Json j = header("classify", cfg);
  j["input"] = build_input_json(b);
  j["order"] = rep.order;
  j["partition"] = json_partition(rep.partition);
  j["q"] = rep.q;
  j["dual_partition"] = json_partition(rep.dual);
  j["dual_q"] = rep.dual.q();
  j["dirichlet_dim"] = rep.dirichlet_dim;
  j["reducible_dirichlet"] = rep.reducible_dirichlet;
  j["equivalent_to_power"] = rep.eq_power;
  j["decomposable"] = rep.decomposable;
  j["subgroup_witnesses"] = rep.subgroup_witnesses;
  j["theorem_cases"] = rep.theorem_cases;
  j["cross_check"] = rep.cross_check;
  j["cross_check_detail"] = rep.cross_check_detail;
  j["monodromy"] = json_monodromy_body(rep.mono);
  j["dirichlet"] = json_dirichlet_body(rep.dirichlet);
  return j;
}

Json build_monodromy_report(const BlaschkeProduct& b, const MonodromyReport& rep,
                            const ToolConfig& cfg) {
  Json j = header("monodromy", cfg);
  j["input"] = build_input_json(b);
  j["monodromy"] = json_monodromy_body(rep);
  return j;
}

Json build_dim_report(const BlaschkeProduct& b, const DirichletReport& rep,
                      const ToolConfig& cfg) {
  Json j = header("dim", cfg);
  j["input"] = build_input_json(b);
  j["dirichlet"] = json_dirichlet_body(rep);
  return j;
}

Json build_critical_report(const BlaschkeProduct& b, const std::vector<Cplx>& critical,
                           const BranchSet& E, const ToolConfig& cfg) {
  Json j = header("critical", cfg);
  j["input"] = build_input_json(b);
  Json crit = Json::array();
  for (Cplx c : critical) crit.push_back(json_cplx(c));
  j["critical_points"] = crit;
  Json values = Json::array();
  for (Cplx c : critical) values.push_back(json_cplx(eval(b, c)));
  j["critical_values"] = values;
  Json branch = Json::array();
  for (Cplx e : E.points) branch.push_back(json_cplx(e));
  j["branch_points"] = branch;
  j["tight_clustering"] = E.tight_clustering;
  return j;
}

Json build_enum_report(int n, bool filtered, const std::vector<Partition>& partitions,
                       const ToolConfig& cfg) {
  Json j = header("partition-enum", cfg);
  j["n"] = n;
  j["filtered"] = filtered;
  Json arr = Json::array();
  for (const Partition& p : partitions) {
    Json entry = Json::object();
    entry["partition"] = json_partition(p);
    entry["q"] = p.q();
    entry["dual_partition"] = json_partition(dual_partition(p));
    entry["subgroup_unions"] = subgroup_unions(p);
    arr.push_back(entry);
  }
  j["admissible"] = arr;
  j["count"] = int(partitions.size());
  return j;
}

Json build_case_suite_report(const std::vector<CaseSuiteResult>& results,
                             const ToolConfig& cfg) {
  Json j = header("case-suite", cfg);
  Json arr = Json::array();
  bool all_pass = true;
  for (const auto& r : results) {
    Json entry = Json::object();
    entry["label"] = r.label;
    entry["expected_dim"] = r.expected_dim;
    entry["computed_dim"] = r.computed_dim;
    entry["pass"] = r.pass;
    all_pass = all_pass && r.pass;
    arr.push_back(entry);
  }
  j["cases"] = arr;
  j["all_pass"] = all_pass;
  return j;
}

}  // namespace blaschke
