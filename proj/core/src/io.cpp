#include "treefree/io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "treefree/errors.hpp"

namespace treefree {

using nlohmann::json;

namespace {

Scalar scalar_from_json(const json& v, bool exact) {
  if (v.is_string()) {
    auto s = Scalar::parse(v.get<std::string>(), exact);
    if (!s) throw Error(Errc::MalformedInput, "cannot parse number \"" + v.get<std::string>() + "\"");
    return *s;
  }
  if (v.is_number_integer()) {
    Scalar s = Scalar::rational(Rational(static_cast<long>(v.get<long long>())));
    return exact ? s : Scalar::floating(s.to_double());
  }
  if (v.is_number_float()) {
    double d = v.get<double>();
    return exact ? Scalar::exact_from_double(d) : Scalar::floating(d);
  }
  throw Error(Errc::MalformedInput, "expected a number or \"p/q\" string");
}

json scalar_to_json(const Scalar& s) {
  if (!s.is_exact()) return json(s.to_double());
  const Rational& q = s.rat();
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) return json(q.get_num().get_si());
  return json(q.get_str());
}

json parse_stream(std::istream& in) {
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(Errc::MalformedInput, std::string("invalid JSON: ") + e.what());
  }
}

MetricFile finish_metric(std::vector<std::string> labels, std::vector<std::vector<Scalar>> matrix,
                         std::size_t base, const LoadOptions& opts) {
  auto validated = FiniteMetric::validate(
      std::move(labels), std::move(matrix), base,
      ValidationOptions{.merge_duplicates = opts.merge_duplicates});
  MetricFile f;
  f.metric = std::move(validated.metric);
  f.relabeling = std::move(validated.relabeling);
  return f;
}

}  // namespace

MetricFile load_metric_json(std::istream& in, const LoadOptions& opts) {
  json j = parse_stream(in);
  if (!j.is_object() || !j.contains("points") || !j.contains("d"))
    throw Error(Errc::MalformedInput, "metric JSON needs \"points\" and \"d\"");

  std::vector<std::string> labels;
  for (const auto& p : j["points"]) {
    if (!p.is_string()) throw Error(Errc::MalformedInput, "point labels must be strings");
    labels.push_back(p.get<std::string>());
  }

  const auto& rows = j["d"];
  if (!rows.is_array() || rows.size() != labels.size())
    throw Error(Errc::NotSquare, "\"d\" must be a square matrix matching \"points\"");
  std::vector<std::vector<Scalar>> matrix;
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != labels.size())
      throw Error(Errc::NotSquare, "\"d\" must be a square matrix matching \"points\"");
    std::vector<Scalar> r;
    for (const auto& v : row) r.push_back(scalar_from_json(v, opts.exact));
    matrix.push_back(std::move(r));
  }

  std::string base_label = labels.empty() ? "" : labels[0];
  if (opts.base_label) base_label = *opts.base_label;
  if (j.contains("base")) {
    if (!j["base"].is_string()) throw Error(Errc::MalformedInput, "\"base\" must be a label");
    base_label = j["base"].get<std::string>();
  }
  std::size_t base = labels.size();
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == base_label) base = i;
  if (base == labels.size()) throw Error(Errc::UnknownLabel, "base label " + base_label + " is not a point");

  MetricFile f = finish_metric(std::move(labels), std::move(matrix), base, opts);

  if (j.contains("positions")) {
    const auto& pos = j["positions"];
    if (!pos.is_array() || pos.size() != f.metric.size())
      throw Error(Errc::MalformedInput, "\"positions\" must list one value per point");
    std::vector<Scalar> positions;
    for (const auto& v : pos) positions.push_back(scalar_from_json(v, opts.exact));
    f.positions = std::move(positions);
  }
  if (j.contains("partition")) {
    for (const auto& [label, part] : j["partition"].items()) {
      if (!part.is_string()) throw Error(Errc::MalformedInput, "partition values must be part names");
      f.partition[label] = part.get<std::string>();
    }
  }
  if (j.contains("part_bases")) {
    for (const auto& [part, label] : j["part_bases"].items()) {
      if (!label.is_string()) throw Error(Errc::MalformedInput, "part base values must be labels");
      f.part_bases[part] = label.get<std::string>();
    }
  }
  return f;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    // trim
    std::size_t b = cell.find_first_not_of(" \t\r");
    std::size_t e = cell.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

}  // namespace

MetricFile load_metric_csv(std::istream& in, const LoadOptions& opts) {
  std::string line;
  if (!std::getline(in, line)) throw Error(Errc::MalformedInput, "empty CSV file");
  std::vector<std::string> labels = split_csv_line(line);
  if (labels.empty()) throw Error(Errc::MalformedInput, "CSV header has no labels");

  std::vector<std::vector<Scalar>> matrix;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto cells = split_csv_line(line);
    if (cells.size() != labels.size())
      throw Error(Errc::NotSquare, "CSV row " + std::to_string(matrix.size() + 1) + " has " +
                                       std::to_string(cells.size()) + " cells, expected " +
                                       std::to_string(labels.size()));
    std::vector<Scalar> row;
    for (const auto& c : cells) {
      auto s = Scalar::parse(c, opts.exact);
      if (!s) throw Error(Errc::MalformedInput, "cannot parse number \"" + c + "\"");
      row.push_back(*s);
    }
    matrix.push_back(std::move(row));
  }
  if (matrix.size() != labels.size())
    throw Error(Errc::NotSquare, "CSV has " + std::to_string(matrix.size()) + " rows, expected " +
                                     std::to_string(labels.size()));

  std::string base_label = opts.base_label.value_or(labels[0]);
  std::size_t base = labels.size();
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == base_label) base = i;
  if (base == labels.size()) throw Error(Errc::UnknownLabel, "base label " + base_label + " is not a point");

  return finish_metric(std::move(labels), std::move(matrix), base, opts);
}

MetricFile load_metric_file(const std::string& path, const LoadOptions& opts) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::MalformedInput, "cannot open " + path);
  if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0)
    return load_metric_csv(in, opts);
  return load_metric_json(in, opts);
}

Molecule load_molecule_json(std::istream& in, const FiniteMetric& m, bool exact) {
  json j = parse_stream(in);
  if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_object())
    throw Error(Errc::MalformedInput, "molecule JSON needs a \"coeffs\" object");
  std::map<std::string, Scalar> coeffs;
  for (const auto& [label, v] : j["coeffs"].items()) coeffs[label] = scalar_from_json(v, exact);
  return Molecule::from_labels(m, coeffs);
}

Molecule load_molecule_file(const std::string& path, const FiniteMetric& m, bool exact) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::MalformedInput, "cannot open " + path);
  return load_molecule_json(in, m, exact);
}

WeightedTree load_tree_json(std::istream& in, bool exact) {
  json j = parse_stream(in);
  if (!j.is_object() || !j.contains("root") || !j.contains("vertices") || !j.contains("edges"))
    throw Error(Errc::MalformedInput, "tree JSON needs \"root\", \"vertices\" and \"edges\"");

  std::vector<std::string> vertices;
  for (const auto& v : j["vertices"]) vertices.push_back(v.get<std::string>());
  std::vector<WeightedTree::Edge> edges;
  for (const auto& e : j["edges"]) {
    if (!e.contains("u") || !e.contains("v") || !e.contains("w"))
      throw Error(Errc::MalformedInput, "tree edge needs \"u\", \"v\" and \"w\"");
    edges.push_back({e["u"].get<std::string>(), e["v"].get<std::string>(), scalar_from_json(e["w"], exact)});
  }
  std::optional<std::vector<std::string>> marked;
  if (j.contains("marked")) {
    marked.emplace();
    for (const auto& v : j["marked"]) marked->push_back(v.get<std::string>());
  }
  return WeightedTree::build(j["root"].get<std::string>(), vertices, edges, marked);
}

std::string tree_to_json(const WeightedTree& t) {
  json j;
  j["schema"] = "treefree/1";
  j["root"] = t.label(t.root());
  json vertices = json::array(), edges = json::array(), marked = json::array();
  for (std::size_t v = 0; v < t.vertex_count(); ++v) {
    vertices.push_back(t.label(v));
    if (t.marked(v)) marked.push_back(t.label(v));
    if (v != t.root()) {
      json e;
      e["u"] = t.label(t.parent(v));
      e["v"] = t.label(v);
      e["w"] = scalar_to_json(t.parent_weight(v));
      edges.push_back(e);
    }
  }
  j["vertices"] = vertices;
  j["edges"] = edges;
  j["marked"] = marked;
  return j.dump(2) + "\n";
}

std::string tree_to_dot(const WeightedTree& t) {
  std::ostringstream out;
  out << "graph tree {\n";
  for (std::size_t v = 0; v < t.vertex_count(); ++v) {
    out << "  \"" << t.label(v) << "\"";
    if (v == t.root())
      out << " [shape=doublecircle]";
    else if (!t.marked(v))
      out << " [shape=point]";
    out << ";\n";
  }
  for (std::size_t v = 0; v < t.vertex_count(); ++v)
    if (v != t.root())
      out << "  \"" << t.label(t.parent(v)) << "\" -- \"" << t.label(v) << "\" [label=\""
          << t.parent_weight(v).str() << "\"];\n";
  out << "}\n";
  return out.str();
}

namespace {

void newick_visit(const WeightedTree& t, std::size_t v, std::ostringstream& out) {
  const auto& kids = t.children(v);
  if (!kids.empty()) {
    out << "(";
    for (std::size_t i = 0; i < kids.size(); ++i) {
      if (i) out << ",";
      newick_visit(t, kids[i], out);
    }
    out << ")";
  }
  out << t.label(v);
  if (v != t.root()) out << ":" << format_double(t.parent_weight(v).to_double());
}

}  // namespace

std::string tree_to_newick(const WeightedTree& t) {
  std::ostringstream out;
  newick_visit(t, t.root(), out);
  out << ";\n";
  return out.str();
}

std::string metric_to_json(const FiniteMetric& m) {
  json j;
  j["schema"] = "treefree/1";
  json points = json::array();
  for (const auto& l : m.labels()) points.push_back(l);
  j["points"] = points;
  j["base"] = m.label(m.base());
  json rows = json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.size(); ++k) row.push_back(scalar_to_json(m.d(i, k)));
    rows.push_back(row);
  }
  j["d"] = rows;
  return j.dump(2) + "\n";
}

}  // namespace treefree
