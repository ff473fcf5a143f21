#pragma once

#include "json.hpp"
#include "prelie/trees.hpp"

namespace prelie {

// {"dec": "a", "children": [{"type": "<w>", "tree": {...}}]}
inline nlohmann::json tree_to_json(const TypedTree& t) {
  nlohmann::json node;
  node["dec"] = t.dec();
  nlohmann::json children = nlohmann::json::array();
  for (std::size_t i = 0; i < t.arity(); ++i) {
    nlohmann::json edge;
    edge["type"] = t.branch_type(i).str();
    edge["tree"] = tree_to_json(t.branch(i));
    children.push_back(std::move(edge));
  }
  node["children"] = std::move(children);
  return node;
}

// Canonicalizes on the way in, like the text parser.
inline TypedTree tree_from_json(const nlohmann::json& node, const Semigroup& sg) {
  if (!node.is_object() || !node.contains("dec"))
    throw parse_error("tree object needs a 'dec' field", 0);
  std::vector<TypedTree::Branch> branches;
  if (node.contains("children")) {
    for (const auto& edge : node.at("children")) {
      branches.emplace_back(sg.parse(edge.at("type").get<std::string>()),
                            tree_from_json(edge.at("tree"), sg));
    }
  }
  return TypedTree(node.at("dec").get<std::string>(), std::move(branches));
}

}  // namespace prelie
