#pragma once

#include <Eigen/Core>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "girp/order.hpp"
#include "girp/solver.hpp"

namespace girp {

// External point labels in input order; node id i is labels[i].
struct DataSet {
  std::vector<std::string> labels;
  bool numeric_labels = true;
  Eigen::VectorXd y;
};

struct Problem {
  DataSet data;
  PartialOrderDag dag;
};

// {"points": [{"id": 1 | "a", "y": 2.5, "x": [..]?}, ...], "edges": [{"from": .., "to": ..}]?}
// Edges and coordinates are mutually exclusive; coordinates imply the dominance order.
Problem parse_problem_json(const nlohmann::json& doc);
// Rows id,y,x1..xd with an optional header; dominance order implied.
Problem parse_problem_csv(std::istream& in);
// Dispatches on the extension (.csv, otherwise JSON). Throws ParseError.
Problem load_problem(const std::filesystem::path& path);

nlohmann::json problem_to_json(const DataSet& data, const PartialOrderDag& dag);

// Hierarchical tree record: {subset (labels), fit, cf, depth, objective, children}.
nlohmann::json tree_to_json(const PartitionTree& tree, const DataSet& data);
PartitionTree tree_from_json(const nlohmann::json& doc, const DataSet& data);
std::string tree_to_dot(const PartitionTree& tree, const DataSet& data);

// Label as it appeared in the input: a number for numeric ids, else a string.
nlohmann::json label_json(const DataSet& data, int node);

}  // namespace girp
