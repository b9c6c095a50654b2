#include "treefree/cli_app.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "treefree/embedding.hpp"
#include "treefree/errors.hpp"
#include "treefree/faces.hpp"
#include "treefree/gluing.hpp"
#include "treefree/io.hpp"
#include "treefree/metric.hpp"
#include "treefree/molecule.hpp"
#include "treefree/norms.hpp"
#include "treefree/tree.hpp"

namespace treefree {

using nlohmann::json;

namespace {

int exit_code_for(Errc c) {
  switch (c) {
    case Errc::MalformedInput:
    case Errc::UnknownLabel:
    case Errc::NotSquare:
    case Errc::MissingBasePoint:
    case Errc::UnsortedInput:
      return 2;
    default:
      return 1;
  }
}

json scalar_json(const Scalar& s) {
  if (s.is_exact()) return json(s.str());
  return json(s.to_double());
}

struct Command {
  const RunConfig& cfg;
  std::ostream& out;
  std::string name;
  json j;  // assembled when cfg.json

  Command(const RunConfig& cfg, std::ostream& out, std::string name)
      : cfg(cfg), out(out), name(std::move(name)) {
    j["schema"] = "treefree/1";
    j["command"] = this->name;
  }

  void flush_json() {
    if (cfg.json) out << j.dump(2) << "\n";
  }
};

LoadOptions load_options(const RunConfig& cfg) {
  return LoadOptions{cfg.exact, cfg.merge_duplicates, cfg.base_label};
}

// ---- validate ----------------------------------------------------------

int cmd_validate(const RunConfig& cfg, std::ostream& out, const std::string& path) {
  Command c(cfg, out, "validate");
  MetricFile f = load_metric_file(path, load_options(cfg));
  if (cfg.json) {
    c.j["valid"] = true;
    c.j["points"] = f.metric.size();
    c.j["base"] = f.metric.label(f.metric.base());
    json merged = json::object();
    for (auto [from, to] : f.relabeling)
      if (from != to || f.relabeling.size() != f.metric.size()) merged[std::to_string(from)] = to;
    if (!merged.empty()) c.j["relabeling"] = merged;
    c.flush_json();
  } else {
    out << "valid metric: " << f.metric.size() << " points, base " << f.metric.label(f.metric.base())
        << "\n";
    if (f.relabeling.size() != f.metric.size())
      for (auto [from, to] : f.relabeling)
        out << "merged: index " << from << " -> " << f.metric.label(to) << "\n";
  }
  return 0;
}

// ---- check4pt ----------------------------------------------------------

int cmd_check4pt(const RunConfig& cfg, std::ostream& out, const std::string& path) {
  Command c(cfg, out, "check4pt");
  MetricFile f = load_metric_file(path, load_options(cfg));
  FourPointVerdict v = four_point_check(f.metric, cfg.threads);
  if (cfg.json) {
    c.j["holds"] = v.holds;
    if (v.witness) {
      json w;
      json pts = json::array();
      for (std::size_t p : v.witness->points) pts.push_back(f.metric.label(p));
      w["points"] = pts;
      w["pair_sums"] = {scalar_json(v.witness->s1), scalar_json(v.witness->s2), scalar_json(v.witness->s3)};
      c.j["witness"] = w;
    }
    c.flush_json();
  } else if (v.holds) {
    out << "four-point condition holds\n";
  } else {
    const auto& w = *v.witness;
    out << "four-point condition fails at {"
        << f.metric.label(w.points[0]) << "," << f.metric.label(w.points[1]) << ","
        << f.metric.label(w.points[2]) << "," << f.metric.label(w.points[3]) << "}\n"
        << "pair sums: " << w.s1.str() << " > max(" << w.s2.str() << ", " << w.s3.str() << ")\n";
  }
  return v.holds ? 0 : 1;
}

// ---- embed -------------------------------------------------------------

int cmd_embed(const RunConfig& cfg, std::ostream& out, const std::string& path,
              const std::string& tree_format, const std::string& out_path) {
  Command c(cfg, out, "embed");
  MetricFile f = load_metric_file(path, load_options(cfg));
  TreeRealization r = build_tree(f.metric);

  std::string payload;
  if (tree_format == "dot")
    payload = tree_to_dot(r.tree);
  else if (tree_format == "newick")
    payload = tree_to_newick(r.tree);
  else
    payload = tree_to_json(r.tree);

  if (!out_path.empty()) {
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw Error(Errc::MalformedInput, "cannot write " + out_path);
    file << payload;
    if (!cfg.json)
      out << "realization: " << r.tree.vertex_count() << " vertices -> " << out_path << "\n";
    else {
      c.j["vertices"] = r.tree.vertex_count();
      c.j["output"] = out_path;
      c.flush_json();
    }
  } else {
    out << payload;
  }
  return 0;
}

// ---- norm --------------------------------------------------------------

void describe_result(Command& c, std::ostream& out, const FiniteMetric& m, const NormResult& r,
                     bool json_mode) {
  if (json_mode) {
    c.j["value"] = scalar_json(r.value);
    c.j["method"] = norm_method_name(r.method);
    if (r.dual_function) {
      json f = json::object();
      for (std::size_t i = 0; i < m.size(); ++i) f[m.label(i)] = scalar_json((*r.dual_function)[i]);
      c.j["certificate"] = {{"type", "lipschitz-function"}, {"f", f}};
    } else if (r.flow) {
      json arcs = json::array();
      for (const FlowArc& a : *r.flow)
        arcs.push_back({{"from", m.label(a.from)}, {"to", m.label(a.to)}, {"amount", scalar_json(a.amount)}});
      c.j["certificate"] = {{"type", "transport-plan"}, {"arcs", arcs}};
    } else if (r.cut_vector) {
      json cuts = json::array();
      for (const auto& [child, mass] : *r.cut_vector)
        cuts.push_back({{"edge_child", child}, {"mass", scalar_json(mass)}});
      c.j["certificate"] = {{"type", "cut-vector"}, {"cuts", cuts}};
    }
  } else {
    out << "norm = " << r.value.str() << " (" << norm_method_name(r.method) << ")\n";
    if (r.dual_function) {
      out << "optimal Lipschitz function:\n";
      for (std::size_t i = 0; i < m.size(); ++i)
        out << "  f(" << m.label(i) << ") = " << (*r.dual_function)[i].str() << "\n";
    } else if (r.flow) {
      out << "optimal transport plan:\n";
      for (const FlowArc& a : *r.flow)
        out << "  " << m.label(a.from) << " -> " << m.label(a.to) << " : " << a.amount.str() << "\n";
    } else if (r.cut_vector) {
      out << "cut vector (per edge):\n";
      for (const auto& [child, mass] : *r.cut_vector) out << "  edge " << child << " : " << mass.str() << "\n";
    }
  }
}

int cmd_norm(const RunConfig& cfg, std::ostream& out, const std::string& metric_path,
             const std::string& molecule_path, std::string method) {
  Command c(cfg, out, "norm");
  MetricFile f = load_metric_file(metric_path, load_options(cfg));
  Molecule mu = load_molecule_file(molecule_path, f.metric, cfg.exact);

  bool tree_applicable = false;
  if (method == "auto") {
    tree_applicable = four_point_check(f.metric, cfg.threads).holds;
    method = tree_applicable ? "tree" : "lp";
  }

  NormResult result;
  if (method == "lp") {
    result = lp_norm(f.metric, mu);
  } else if (method == "flow") {
    result = flow_norm(f.metric, mu);
  } else if (method == "tree") {
    result = cut_norm(build_tree(f.metric), mu);
  } else if (method == "line") {
    if (!f.positions)
      throw Error(Errc::MalformedInput, "line method needs a \"positions\" field in the metric file");
    result.value = line_norm(*f.positions, mu);
    result.method = NormMethod::line;
  } else {
    throw Error(Errc::MalformedInput, "unknown method " + method);
  }

  int code = 0;
  std::vector<std::pair<std::string, Scalar>> verified;
  if (cfg.verify) {
    verified.emplace_back("lp", lp_norm(f.metric, mu).value);
    verified.emplace_back("flow", flow_norm(f.metric, mu).value);
    bool tree_ok = method == "tree" || tree_applicable || four_point_check(f.metric, cfg.threads).holds;
    if (tree_ok) verified.emplace_back("tree-cut", cut_norm(build_tree(f.metric), mu).value);
    if (f.positions) verified.emplace_back("line", line_norm(*f.positions, mu));

    for (const auto& [name, value] : verified) {
      bool agree;
      if (result.value.is_exact() && value.is_exact()) {
        agree = value == result.value;
      } else {
        agree = std::abs(value.to_double() - result.value.to_double()) <= 10 * Scalar::epsilon();
      }
      if (!agree) code = 1;
    }
  }

  describe_result(c, out, f.metric, result, cfg.json);
  if (cfg.json) {
    if (cfg.verify) {
      json v = json::object();
      for (const auto& [name, value] : verified) v[name] = scalar_json(value);
      c.j["verified"] = v;
      c.j["agreement"] = code == 0;
    }
    c.flush_json();
  } else if (cfg.verify) {
    for (const auto& [name, value] : verified) out << "verify " << name << " = " << value.str() << "\n";
    out << (code == 0 ? "methods agree\n" : "METHODS DISAGREE\n");
  }
  return code;
}

// ---- classify4 ---------------------------------------------------------

int cmd_classify4(const RunConfig& cfg, std::ostream& out, const std::string& path,
                  const std::vector<std::string>& quad_labels) {
  Command c(cfg, out, "classify4");
  MetricFile f = load_metric_file(path, load_options(cfg));
  if (quad_labels.size() != 4) throw Error(Errc::MalformedInput, "classify4 needs four point labels");
  std::array<std::size_t, 4> quad{};
  for (std::size_t i = 0; i < 4; ++i) {
    auto idx = f.metric.index_of(quad_labels[i]);
    if (!idx) throw Error(Errc::UnknownLabel, "unknown point " + quad_labels[i]);
    quad[i] = *idx;
  }

  QuadrupleReport report = quadruple_faces(f.metric, quad);

  static const char* nine_names[9] = {"b<=a",      "d<=c",      "f<=e",
                                      "d<=a+e",    "b+f<=c",    "a+b+e+f=c+d",
                                      "d<=a+f,b+e<=c", "b+f<=d,c<=a+e", "a+f<=c,d<=b+e"};

  if (cfg.json) {
    json labelings = json::array();
    for (const auto& lr : report.labelings) {
      json l;
      json pts = json::array();
      for (std::size_t p : lr.labeling) pts.push_back(f.metric.label(p));
      l["labeling"] = pts;
      l["region"] = {{"a", scalar_json(lr.region.a)}, {"b", scalar_json(lr.region.b)},
                     {"c", scalar_json(lr.region.c)}, {"d", scalar_json(lr.region.d)},
                     {"e", scalar_json(lr.region.e)}, {"f", scalar_json(lr.region.f)}};
      json fired = json::array();
      for (std::size_t i = 0; i < 9; ++i)
        if (lr.report.fired[i]) fired.push_back(nine_names[i]);
      l["fired"] = fired;
      json cds = json::array();
      for (std::size_t i = 0; i < 6; ++i)
        if (lr.cd[i]) cds.push_back("cd" + std::to_string(i + 1));
      l["distance_conditions"] = cds;
      l["shape"] = face_shape_name(lr.report.shape);
      l["symmetric_or_empty"] = lr.report.symmetric_or_empty;
      l["brute_symmetry"] = lr.brute;
      labelings.push_back(l);
    }
    c.j["labelings"] = labelings;
    c.j["four_point_holds"] = report.all_symmetric;
    c.flush_json();
  } else {
    for (const auto& lr : report.labelings) {
      out << "labeling (" << f.metric.label(lr.labeling[0]) << "," << f.metric.label(lr.labeling[1])
          << "," << f.metric.label(lr.labeling[2]) << "," << f.metric.label(lr.labeling[3]) << ")\n";
      out << "  region: a=" << lr.region.a.str() << " b=" << lr.region.b.str() << " c=" << lr.region.c.str()
          << " d=" << lr.region.d.str() << " e=" << lr.region.e.str() << " f=" << lr.region.f.str() << "\n";
      out << "  fired:";
      bool any = false;
      for (std::size_t i = 0; i < 9; ++i)
        if (lr.report.fired[i]) {
          out << " [" << nine_names[i] << "]";
          any = true;
        }
      if (!any) out << " none";
      out << "\n  conditions:";
      any = false;
      for (std::size_t i = 0; i < 6; ++i)
        if (lr.cd[i]) {
          out << " cd" << (i + 1);
          any = true;
        }
      if (!any) out << " none";
      out << "\n  shape: " << face_shape_name(lr.report.shape)
          << (lr.report.symmetric_or_empty ? " (symmetric-or-empty)" : " (not symmetric)") << "\n";
    }
    out << (report.all_symmetric ? "four-point condition holds on the quadruple\n"
                                 : "four-point condition fails on the quadruple\n");
  }
  return report.all_symmetric ? 0 : 1;
}

// ---- glue-check --------------------------------------------------------

int cmd_glue_check(const RunConfig& cfg, std::ostream& out, const std::string& glued_path,
                   const std::string& molecule_path) {
  Command c(cfg, out, "glue-check");
  MetricFile f = load_metric_file(glued_path, load_options(cfg));
  if (f.partition.empty())
    throw Error(Errc::MalformedInput, "glued metric file needs a \"partition\" field");
  GluedSpace g = validate_glued(f.metric, f.partition, f.part_bases);
  Molecule mu = load_molecule_file(molecule_path, f.metric, cfg.exact);

  GluingReport report = check_gluing_bounds(g, mu);

  if (cfg.json) {
    c.j["parts"] = g.part_names.size();
    if (g.alpha) c.j["alpha"] = scalar_json(*g.alpha);
    if (g.beta) c.j["beta"] = scalar_json(*g.beta);
    c.j["norm"] = scalar_json(report.whole);
    c.j["decomposed_norm"] = scalar_json(report.decomposed);
    if (report.phi_bound) c.j["decomposition_bound"] = scalar_json(*report.phi_bound);
    if (report.psi_bound) c.j["reconstruction_bound"] = scalar_json(*report.psi_bound);
    c.j["bounds_hold"] = true;
    if (report.whole.sign() > 0) c.j["decomposed_over_norm"] = report.decomposed.to_double() / report.whole.to_double();
    if (report.decomposed.sign() > 0) c.j["norm_over_decomposed"] = report.whole.to_double() / report.decomposed.to_double();
    c.flush_json();
  } else {
    out << "parts: " << g.part_names.size();
    if (g.alpha) out << ", alpha = " << g.alpha->str() << ", beta = " << g.beta->str();
    out << "\n";
    out << "norm = " << report.whole.str() << "\n";
    out << "decomposed norm = " << report.decomposed.str() << "\n";
    if (report.phi_bound)
      out << "decomposed <= " << report.phi_bound->str() << " * norm : ok\n"
          << "norm <= " << report.psi_bound->str() << " * decomposed : ok\n";
    if (report.whole.sign() > 0)
      out << "observed ratio decomposed/norm = " << format_double(report.decomposed.to_double() / report.whole.to_double())
          << "\n";
  }
  return 0;
}

// ---- gen ---------------------------------------------------------------

int cmd_gen(const RunConfig& cfg, std::ostream& out, const std::string& kind, unsigned n,
            unsigned den) {
  if (n < 1) throw Error(Errc::MalformedInput, "--n must be at least 1");
  std::mt19937_64 rng(cfg.seed);

  if (kind == "tree") {
    std::vector<std::string> vertices;
    for (unsigned i = 0; i < n; ++i) vertices.push_back("v" + std::to_string(i));
    std::vector<WeightedTree::Edge> edges;
    for (unsigned i = 1; i < n; ++i) {
      unsigned parent = static_cast<unsigned>(rng() % i);
      long num = static_cast<long>(rng() % (3 * den) + 1);
      edges.push_back({vertices[parent], vertices[i], Scalar::rational(num, den)});
    }
    WeightedTree t = WeightedTree::build(vertices[0], vertices, edges);
    out << metric_to_json(t.induced_metric());
    return 0;
  }
  if (kind == "discrete") {
    std::vector<std::string> labels;
    std::vector<std::vector<Scalar>> d(n, std::vector<Scalar>(n));
    for (unsigned i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = 0; j < n; ++j)
        if (i != j) d[i][j] = Scalar(1);
    out << metric_to_json(FiniteMetric::trusted(labels, d, 0));
    return 0;
  }
  if (kind == "euclidean") {
    std::vector<std::pair<double, double>> pts;
    for (unsigned i = 0; i < n; ++i)
      pts.emplace_back(static_cast<double>(rng() % 10000) / 10000.0,
                       static_cast<double>(rng() % 10000) / 10000.0);
    std::vector<std::string> labels;
    for (unsigned i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
    std::vector<std::vector<Scalar>> d(n, std::vector<Scalar>(n));
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = 0; j < n; ++j) {
        double dx = pts[i].first - pts[j].first, dy = pts[i].second - pts[j].second;
        d[i][j] = Scalar::floating(std::sqrt(dx * dx + dy * dy));
      }
    auto v = FiniteMetric::validate(labels, d, 0, ValidationOptions{.merge_duplicates = true});
    out << metric_to_json(v.metric);
    return 0;
  }
  throw Error(Errc::MalformedInput, "unknown kind " + kind);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"tree metrics, their weighted-tree realizations and free-space norms"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string mode = "exact", format = "text";
  std::string metric_path, molecule_path, tree_format = "json", out_path, method = "auto";
  std::string gen_kind = "tree";
  unsigned gen_n = 8, gen_den = 4;
  std::vector<std::string> quad_labels;
  std::string base_label;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--mode", mode, "arithmetic mode")->check(CLI::IsMember({"exact", "float"}));
    cmd->add_option("--eps", cfg.epsilon, "comparison tolerance in float mode");
    cmd->add_option("--threads", cfg.threads, "worker threads for quadruple scans");
    cmd->add_option("--format", format, "report format")->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--seed", cfg.seed, "seed for sampling commands");
    cmd->add_flag("--verify", cfg.verify, "cross-validate with all applicable methods");
    cmd->add_flag("--merge-duplicates", cfg.merge_duplicates, "merge points at distance zero");
    cmd->add_option("--base", base_label, "base point label (overrides the file)");
  };

  CLI::App* validate = app.add_subcommand("validate", "validate a metric file");
  validate->add_option("metric", metric_path, "metric file (CSV or JSON)")->required();
  add_common(validate);

  CLI::App* check4pt = app.add_subcommand("check4pt", "decide the four-point condition");
  check4pt->add_option("metric", metric_path)->required();
  add_common(check4pt);

  CLI::App* embed = app.add_subcommand("embed", "realize a tree metric as a weighted tree");
  embed->add_option("metric", metric_path)->required();
  embed->add_option("--tree-format", tree_format, "output format")
      ->check(CLI::IsMember({"json", "dot", "newick"}));
  embed->add_option("-o,--out", out_path, "write the tree to a file");
  add_common(embed);

  CLI::App* norm = app.add_subcommand("norm", "free-space norm of a molecule");
  norm->add_option("metric", metric_path)->required();
  norm->add_option("molecule", molecule_path)->required();
  norm->add_option("--method", method)->check(CLI::IsMember({"auto", "lp", "flow", "tree", "line"}));
  add_common(norm);

  CLI::App* classify4 = app.add_subcommand("classify4", "face symmetry analysis of a quadruple");
  classify4->add_option("metric", metric_path)->required();
  classify4->add_option("--quadruple", quad_labels, "four point labels")->required()->delimiter(',');
  add_common(classify4);

  CLI::App* glue = app.add_subcommand("glue-check", "decomposition bounds of a glued space");
  glue->add_option("glued", metric_path, "metric file with a partition")->required();
  glue->add_option("molecule", molecule_path)->required();
  add_common(glue);

  CLI::App* gen = app.add_subcommand("gen", "generate a sample metric file");
  gen->add_option("--kind", gen_kind)->check(CLI::IsMember({"tree", "discrete", "euclidean"}));
  gen->add_option("--n", gen_n, "number of points");
  gen->add_option("--den", gen_den, "weight denominator for tree kind");
  add_common(gen);

  std::vector<const char*> argv;
  argv.push_back("treefree");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  cfg.exact = mode == "exact";
  cfg.json = format == "json";
  if (!base_label.empty()) cfg.base_label = base_label;
  if (cfg.epsilon <= 0) {
    err << "error: --eps must be positive\n";
    return 2;
  }
  Scalar::set_epsilon(cfg.exact ? 1e-9 : cfg.epsilon);

  try {
    if (validate->parsed()) return cmd_validate(cfg, out, metric_path);
    if (check4pt->parsed()) return cmd_check4pt(cfg, out, metric_path);
    if (embed->parsed()) return cmd_embed(cfg, out, metric_path, tree_format, out_path);
    if (norm->parsed()) return cmd_norm(cfg, out, metric_path, molecule_path, method);
    if (classify4->parsed()) return cmd_classify4(cfg, out, metric_path, quad_labels);
    if (glue->parsed()) return cmd_glue_check(cfg, out, metric_path, molecule_path);
    if (gen->parsed()) return cmd_gen(cfg, out, gen_kind, gen_n, gen_den);
  } catch (const Error& e) {
    if (cfg.json) {
      json j;
      j["schema"] = "treefree/1";
      j["error"] = {{"code", errc_name(e.code())}, {"message", e.what()}};
      if (!e.witness().empty()) j["error"]["witness"] = e.witness();
      out << j.dump(2) << "\n";
    } else {
      err << "error [" << errc_name(e.code()) << "]: " << e.what() << "\n";
    }
    return exit_code_for(e.code());
  }
  err << "error: no command\n";
  return 2;
}

}  // namespace treefree
