#include "girp/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace girp {

using nlohmann::json;

namespace {

std::string label_of(const json& id) {
  if (id.is_number_integer()) return std::to_string(id.get<long long>());
  if (id.is_string()) return id.get<std::string>();
  throw ParseError("point id must be an integer or a string");
}

bool is_integer_text(const std::string& s) {
  long long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  return ec == std::errc() && p == s.data() + s.size() && !s.empty();
}

double parse_double(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ParseError("cannot parse " + what + " '" + s + "'");
  }
  if (used != s.size() || !std::isfinite(v)) throw ParseError("cannot parse " + what + " '" + s + "'");
  return v;
}

std::string trim(std::string s) {
  const auto ws = " \t\r\n";
  s.erase(0, s.find_first_not_of(ws));
  s.erase(s.find_last_not_of(ws) + 1);
  return s;
}

PartialOrderDag dominance_or_parse_error(const Eigen::MatrixXd& x, const DataSet& data) {
  try {
    return dominance_order(x);
  } catch (const DuplicatePoint& e) {
    throw ParseError("points " + data.labels[static_cast<std::size_t>(e.first)] + " and " +
                     data.labels[static_cast<std::size_t>(e.second)] + " have identical coordinates");
  }
}

}  // namespace

Problem parse_problem_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("points") || !doc["points"].is_array())
    throw ParseError("document must be an object with a 'points' array");
  const auto& points = doc["points"];
  if (points.empty()) throw ParseError("'points' is empty");

  Problem p;
  auto& data = p.data;
  std::map<std::string, int> index;
  const std::size_t n = points.size();
  data.y.resize(static_cast<Eigen::Index>(n));
  std::size_t with_x = 0, dim = 0;
  Eigen::MatrixXd coords;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& pt = points[i];
    if (!pt.is_object() || !pt.contains("id") || !pt.contains("y")) throw ParseError("each point needs 'id' and 'y'");
    auto label = label_of(pt["id"]);
    if (!pt["id"].is_number_integer()) data.numeric_labels = false;
    if (!index.emplace(label, static_cast<int>(i)).second) throw ParseError("duplicate point id " + label);
    data.labels.push_back(label);
    if (!pt["y"].is_number()) throw ParseError("'y' of point " + label + " is not a number");
    data.y[static_cast<Eigen::Index>(i)] = pt["y"].get<double>();
    if (pt.contains("x")) {
      const auto& x = pt["x"];
      if (!x.is_array() || x.empty()) throw ParseError("'x' of point " + label + " must be a nonempty array");
      if (with_x == 0) {
        dim = x.size();
        coords.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(dim));
      } else if (x.size() != dim) {
        throw ParseError("coordinate dimension mismatch at point " + label);
      }
      for (std::size_t j = 0; j < dim; ++j) {
        if (!x[j].is_number()) throw ParseError("coordinate of point " + label + " is not a number");
        coords(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = x[j].get<double>();
      }
      ++with_x;
    }
  }

  const bool has_edges = doc.contains("edges");
  if (has_edges && with_x > 0) throw ParseError("give either 'edges' or coordinates, not both");
  if (with_x > 0 && with_x != n) throw ParseError("coordinates must be given on all points");

  if (with_x > 0) {
    p.dag = dominance_or_parse_error(coords, data);
    return p;
  }
  std::vector<Edge> edges;
  if (has_edges) {
    if (!doc["edges"].is_array()) throw ParseError("'edges' must be an array");
    for (const auto& e : doc["edges"]) {
      if (!e.is_object() || !e.contains("from") || !e.contains("to")) throw ParseError("each edge needs 'from' and 'to'");
      auto lookup = [&](const json& id) {
        auto it = index.find(label_of(id));
        if (it == index.end()) throw ParseError("edge refers to unknown id " + label_of(id));
        return it->second;
      };
      edges.push_back({lookup(e["from"]), lookup(e["to"])});
    }
  }
  p.dag = PartialOrderDag(static_cast<int>(n), std::move(edges));
  return p;
}

Problem parse_problem_csv(std::istream& in) {
  Problem p;
  auto& data = p.data;
  std::vector<double> ys;
  std::vector<std::vector<double>> xs;
  std::map<std::string, int> index;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    for (std::string f; std::getline(ss, f, ',');) fields.push_back(trim(f));
    if (fields.size() < 3) throw ParseError("line " + std::to_string(line_no) + ": expected id,y,x1[,x2...]");
    if (ys.empty() && xs.empty() && data.labels.empty() && fields[1] == "y") continue;  // header
    std::vector<double> x;
    for (std::size_t j = 2; j < fields.size(); ++j) x.push_back(parse_double(fields[j], "coordinate"));
    if (!xs.empty() && x.size() != xs.front().size())
      throw ParseError("line " + std::to_string(line_no) + ": coordinate dimension mismatch");
    if (!index.emplace(fields[0], static_cast<int>(data.labels.size())).second)
      throw ParseError("duplicate point id " + fields[0]);
    if (!is_integer_text(fields[0])) data.numeric_labels = false;
    data.labels.push_back(fields[0]);
    ys.push_back(parse_double(fields[1], "response"));
    xs.push_back(std::move(x));
  }
  if (ys.empty()) throw ParseError("no data rows");
  const auto n = static_cast<Eigen::Index>(ys.size()), d = static_cast<Eigen::Index>(xs.front().size());
  data.y = Eigen::Map<Eigen::VectorXd>(ys.data(), n);
  Eigen::MatrixXd coords(n, d);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < d; ++j) coords(i, j) = xs[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  p.dag = dominance_or_parse_error(coords, data);
  return p;
}

Problem load_problem(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  if (path.extension() == ".csv") return parse_problem_csv(in);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return parse_problem_json(doc);
}

json label_json(const DataSet& data, int node) {
  const auto& l = data.labels[static_cast<std::size_t>(node)];
  if (data.numeric_labels) return std::stoll(l);
  return l;
}

json problem_to_json(const DataSet& data, const PartialOrderDag& dag) {
  json doc;
  doc["points"] = json::array();
  for (int i = 0; i < dag.size(); ++i) doc["points"].push_back({{"id", label_json(data, i)}, {"y", data.y[i]}});
  doc["edges"] = json::array();
  for (const auto& e : dag.edges()) doc["edges"].push_back({{"from", label_json(data, e.from)}, {"to", label_json(data, e.to)}});
  return doc;
}

namespace {

json endpoint(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double endpoint_from(const json& v, double infinity) { return v.is_null() ? infinity : v.get<double>(); }

json node_json(const PartitionTree& tree, int index, const DataSet& data) {
  const auto& node = tree.nodes[static_cast<std::size_t>(index)];
  json j;
  j["subset"] = json::array();
  for (int x : node.subset) j["subset"].push_back(label_json(data, x));
  j["fit"] = node.fit;
  j["cf"] = {endpoint(node.cf.lo()), endpoint(node.cf.hi())};
  j["depth"] = node.depth;
  j["objective"] = node.objective;
  j["children"] = json::array();
  if (!node.leaf()) {
    j["children"].push_back(node_json(tree, node.lower, data));
    j["children"].push_back(node_json(tree, node.upper, data));
  }
  return j;
}

}  // namespace

json tree_to_json(const PartitionTree& tree, const DataSet& data) {
  if (tree.nodes.empty()) return json(nullptr);
  return node_json(tree, 0, data);
}

PartitionTree tree_from_json(const json& doc, const DataSet& data) {
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < data.labels.size(); ++i) index[data.labels[i]] = static_cast<int>(i);
  PartitionTree tree;
  std::vector<std::pair<const json*, int>> stack{{&doc, -1}};
  try {
    while (!stack.empty()) {
      auto [j, parent] = stack.back();
      stack.pop_back();
      TreeNode node;
      for (const auto& id : j->at("subset")) {
        auto it = index.find(label_of(id));
        if (it == index.end()) throw ParseError("tree refers to unknown id " + label_of(id));
        node.subset.push_back(it->second);
      }
      node.fit = j->at("fit").get<double>();
      const auto& cf = j->at("cf");
      const double inf = std::numeric_limits<double>::infinity();
      node.cf = IntervalD(endpoint_from(cf.at(0), -inf), endpoint_from(cf.at(1), inf));
      node.depth = j->at("depth").get<int>();
      node.objective = j->value("objective", 0.0);
      const int self = static_cast<int>(tree.nodes.size());
      tree.nodes.push_back(std::move(node));
      if (parent >= 0) {
        auto& p = tree.nodes[static_cast<std::size_t>(parent)];
        (p.lower < 0 ? p.lower : p.upper) = self;
      }
      const auto& children = j->at("children");
      if (children.size() == 2) {
        stack.push_back({&children[1], self});
        stack.push_back({&children[0], self});
      } else if (!children.empty()) {
        throw ParseError("tree nodes have zero or two children");
      }
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed tree: ") + e.what());
  }
  return tree;
}

std::string tree_to_dot(const PartitionTree& tree, const DataSet& data) {
  std::ostringstream out;
  out.precision(10);
  out << "digraph partition {\n  node [shape=box];\n";
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    const auto& node = tree.nodes[i];
    out << "  n" << i << " [label=\"{";
    for (std::size_t k = 0; k < node.subset.size(); ++k)
      out << (k ? "," : "") << data.labels[static_cast<std::size_t>(node.subset[k])];
    out << "}\\nb = " << node.fit << "\"];\n";
    if (!node.leaf()) {
      out << "  n" << i << " -> n" << node.lower << " [label=\"L\"];\n";
      out << "  n" << i << " -> n" << node.upper << " [label=\"U\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace girp
