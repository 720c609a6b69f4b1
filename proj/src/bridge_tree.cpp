#include "bridgenet/bridge_tree.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>

#include "bridgenet/error.hpp"

namespace bridgenet {

namespace {

BridgeTreeTopology build_layered(TopologyKind kind, int branching, int depth) {
  BridgeTreeTopology t;
  t.kind = kind;
  t.branching = branching;
  t.depth = depth;
  t.layers.assign(static_cast<std::size_t>(depth) + 1, {});
  t.layers[0] = {0};
  t.node_layers = {0};
  t.parent_sets.emplace_back();
  t.child_sets.emplace_back();

  NodeId next_id = 1;
  for (int k = 0; k < depth; ++k) {
    const auto& current = t.layers[static_cast<std::size_t>(k)];
    auto& next = t.layers[static_cast<std::size_t>(k) + 1];
    for (std::size_t i = 0; i < current.size(); ++i) {
      NodeId parent = current[i];
      for (int slot = 0; slot < branching; ++slot) {
        NodeId child;
        bool merged = kind == TopologyKind::bridge && slot == 0 && i > 0;
        if (merged) {
          child = next.back();  // rightmost child of the left neighbor
        } else {
          child = next_id++;
          next.push_back(child);
          t.node_layers.push_back(k + 1);
          t.parent_sets.emplace_back();
          t.child_sets.emplace_back();
        }
        // decision ids are dense from 0, so the group index is the parent id
        t.edges.push_back(Edge{parent, child, parent, slot});
        t.child_sets[static_cast<std::size_t>(parent)].push_back(child);
        t.parent_sets[static_cast<std::size_t>(child)].push_back(parent);
      }
    }
  }
  return t;
}

std::int64_t ipow(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

// closed-form layer size: ((B-1)^(k+1) - 1) / (B-2) for B > 2, k+1 for B = 2
std::int64_t expected_layer_size(TopologyKind kind, int branching, int layer) {
  if (kind == TopologyKind::tree) return ipow(branching, layer);
  if (kind == TopologyKind::softmax) return layer == 0 ? 1 : branching;
  if (branching == 2) return layer + 1;
  return (ipow(branching - 1, layer + 1) - 1) / (branching - 2);
}

}  // namespace

const char* topology_kind_name(TopologyKind kind) {
  switch (kind) {
    case TopologyKind::bridge: return "bridge";
    case TopologyKind::tree: return "tree";
    case TopologyKind::softmax: return "softmax";
  }
  return "unknown";
}

TopologyKind topology_kind_from_name(const std::string& name) {
  if (name == "bridge") return TopologyKind::bridge;
  if (name == "tree") return TopologyKind::tree;
  if (name == "softmax") return TopologyKind::softmax;
  fail(ErrorCode::invalid_argument, "unknown topology kind '" + name + "'");
}

std::uint64_t BridgeTreeTopology::signature() const {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a over the defining tuple
  auto mix = [&h](std::uint64_t v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  mix(static_cast<std::uint64_t>(kind));
  mix(static_cast<std::uint64_t>(branching));
  mix(static_cast<std::uint64_t>(depth));
  return h;
}

BridgeTreeTopology build(int branching, int depth) {
  if (branching < 2)
    fail(ErrorCode::invalid_argument,
         "build: branching must be >= 2, got " + std::to_string(branching));
  if (depth < 1)
    fail(ErrorCode::invalid_argument,
         "build: depth must be >= 1, got " + std::to_string(depth));
  return build_layered(TopologyKind::bridge, branching, depth);
}

BridgeTreeTopology build_plain_tree(int branching, int depth) {
  if (branching < 2)
    fail(ErrorCode::invalid_argument,
         "build_plain_tree: branching must be >= 2, got " + std::to_string(branching));
  if (depth < 1)
    fail(ErrorCode::invalid_argument,
         "build_plain_tree: depth must be >= 1, got " + std::to_string(depth));
  return build_layered(TopologyKind::tree, branching, depth);
}

BridgeTreeTopology build_flat(int leaf_total) {
  if (leaf_total < 2)
    fail(ErrorCode::invalid_argument,
         "build_flat: need at least 2 leaves, got " + std::to_string(leaf_total));
  return build_layered(TopologyKind::softmax, leaf_total, 1);
}

std::vector<EdgePath> enumerate_paths(const BridgeTreeTopology& topology, NodeId leaf) {
  if (leaf < 0 || leaf >= topology.node_count())
    fail(ErrorCode::not_found, "enumerate_paths: unknown node id " + std::to_string(leaf));
  if (topology.node_layers[static_cast<std::size_t>(leaf)] != topology.depth)
    fail(ErrorCode::invalid_argument,
         "enumerate_paths: node " + std::to_string(leaf) + " is not a leaf");

  // mark ancestors of the leaf, walking parent sets upward
  std::vector<char> on_path(static_cast<std::size_t>(topology.node_count()), 0);
  on_path[static_cast<std::size_t>(leaf)] = 1;
  std::vector<NodeId> frontier{leaf};
  while (!frontier.empty()) {
    NodeId n = frontier.back();
    frontier.pop_back();
    for (NodeId p : topology.parent_sets[static_cast<std::size_t>(n)]) {
      if (!on_path[static_cast<std::size_t>(p)]) {
        on_path[static_cast<std::size_t>(p)] = 1;
        frontier.push_back(p);
      }
    }
  }

  // descend from the root in slot order; child ids increase with slot, so the
  // emission order is lexicographic in node ids
  std::vector<EdgePath> paths;
  EdgePath current;
  std::function<void(NodeId)> walk = [&](NodeId node) {
    if (node == leaf) {
      paths.push_back(current);
      return;
    }
    const auto& children = topology.child_sets[static_cast<std::size_t>(node)];
    for (int slot = 0; slot < static_cast<int>(children.size()); ++slot) {
      NodeId child = children[static_cast<std::size_t>(slot)];
      if (!on_path[static_cast<std::size_t>(child)]) continue;
      current.push_back(node * topology.branching + slot);
      walk(child);
      current.pop_back();
    }
  };
  walk(0);
  return paths;
}

std::vector<NodeId> path_nodes(const BridgeTreeTopology& topology, const EdgePath& path) {
  std::vector<NodeId> nodes{0};
  for (int edge_id : path) {
    if (edge_id < 0 || edge_id >= topology.edge_count())
      fail(ErrorCode::not_found, "path_nodes: unknown edge id " + std::to_string(edge_id));
    const Edge& e = topology.edges[static_cast<std::size_t>(edge_id)];
    if (e.parent != nodes.back())
      fail(ErrorCode::invalid_argument, "path_nodes: edge sequence is not connected");
    nodes.push_back(e.child);
  }
  return nodes;
}

std::optional<std::string> validate(const BridgeTreeTopology& t) {
  using std::to_string;
  if (t.branching < 2) return "branching " + to_string(t.branching) + " is below 2";
  if (t.depth < 1) return "depth " + to_string(t.depth) + " is below 1";
  if (t.kind == TopologyKind::softmax && t.depth != 1)
    return "softmax topology must have depth 1, got " + to_string(t.depth);
  if (t.layers.size() != static_cast<std::size_t>(t.depth) + 1)
    return "expected " + to_string(t.depth + 1) + " node layers, got " + to_string(t.layers.size());
  if (t.layers[0].size() != 1) return "root layer must hold exactly one node";

  // layer-size recurrence n_{k+1} = (B-1) n_k + 1 (merged), B n_k (plain)
  for (int k = 0; k < t.depth; ++k) {
    std::size_t got = t.layers[static_cast<std::size_t>(k) + 1].size();
    std::size_t prev = t.layers[static_cast<std::size_t>(k)].size();
    std::size_t want = t.kind == TopologyKind::bridge
                           ? (static_cast<std::size_t>(t.branching) - 1) * prev + 1
                           : static_cast<std::size_t>(t.branching) * prev;
    if (got != want)
      return "layer " + to_string(k + 1) + " has " + to_string(got) + " nodes, recurrence expects " +
             to_string(want);
  }

  // closed-form leaf count
  std::int64_t leaf_want = expected_layer_size(t.kind, t.branching, t.depth);
  if (static_cast<std::int64_t>(t.layers.back().size()) != leaf_want)
    return "leaf layer has " + to_string(t.layers.back().size()) + " nodes, closed form expects " +
           to_string(leaf_want);

  // dense ids in (layer, left-to-right) order
  std::size_t total = 0;
  for (const auto& layer : t.layers) total += layer.size();
  if (t.node_layers.size() != total || t.parent_sets.size() != total || t.child_sets.size() != total)
    return "node table sizes disagree with layer contents";
  NodeId expect = 0;
  for (std::size_t k = 0; k < t.layers.size(); ++k) {
    for (NodeId n : t.layers[k]) {
      if (n != expect)
        return "node id " + to_string(n) + " out of dense (layer, position) order at layer " +
               to_string(k);
      if (t.node_layers[static_cast<std::size_t>(n)] != static_cast<int>(k))
        return "node " + to_string(n) + " has wrong layer index";
      ++expect;
    }
  }

  // every decision node carries exactly B outgoing edges with unique slots
  int decision_total = t.decision_count();
  if (t.edge_count() != decision_total * t.branching)
    return "edge count " + to_string(t.edge_count()) + " differs from branching * decision nodes";
  std::vector<int> out_degree(total, 0);
  for (std::size_t i = 0; i < t.edges.size(); ++i) {
    const Edge& e = t.edges[i];
    if (e.parent < 0 || e.parent >= decision_total)
      return "edge " + to_string(i) + " has non-decision parent " + to_string(e.parent);
    if (e.child < 0 || e.child >= static_cast<NodeId>(total))
      return "edge " + to_string(i) + " has unknown child " + to_string(e.child);
    if (e.group != e.parent)
      return "edge " + to_string(i) + " group index disagrees with parent id";
    if (static_cast<int>(i) != e.parent * t.branching + e.slot)
      return "edge " + to_string(i) + " is out of (group, slot) order";
    if (t.node_layers[static_cast<std::size_t>(e.child)] !=
        t.node_layers[static_cast<std::size_t>(e.parent)] + 1)
      return "edge " + to_string(i) + " does not connect adjacent layers";
    ++out_degree[static_cast<std::size_t>(e.parent)];
  }
  for (NodeId n = 0; n < static_cast<NodeId>(total); ++n) {
    bool is_leaf = t.node_layers[static_cast<std::size_t>(n)] == t.depth;
    int want = is_leaf ? 0 : t.branching;
    if (out_degree[static_cast<std::size_t>(n)] != want)
      return "node " + to_string(n) + " has " + to_string(out_degree[static_cast<std::size_t>(n)]) +
             " outgoing edges (expected " + to_string(want) + ")";
    if (static_cast<int>(t.child_sets[static_cast<std::size_t>(n)].size()) != want)
      return "node " + to_string(n) + " has " +
             to_string(t.child_sets[static_cast<std::size_t>(n)].size()) + " children (expected " +
             to_string(want) + ")";
  }

  // parent multiplicity: children shared by adjacent parents have two parents,
  // boundary and middle children one; the root has none
  for (std::size_t k = 1; k < t.layers.size(); ++k) {
    const auto& layer = t.layers[k];
    for (std::size_t j = 0; j < layer.size(); ++j) {
      NodeId n = layer[j];
      std::size_t got = t.parent_sets[static_cast<std::size_t>(n)].size();
      bool shared = t.kind == TopologyKind::bridge && j > 0 && j + 1 < layer.size() &&
                    j % static_cast<std::size_t>(t.branching - 1) == 0;
      std::size_t want = shared ? 2 : 1;
      if (got != want)
        return "node " + to_string(n) + " has " + to_string(got) + " parents (expected " +
               to_string(want) + ")";
    }
  }
  if (!t.parent_sets[0].empty()) return "root node has a parent";

  return std::nullopt;
}

}  // namespace bridgenet
