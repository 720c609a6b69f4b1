#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bridgenet {

using NodeId = int;

// A decision node routes a sample to its branching-many children via one
// softmax group; group is the parent's dense decision index and slot the
// position inside the group. Edge ids are dense in (group, slot) order, so
// edge id == group * branching + slot.
struct Edge {
  NodeId parent = 0;
  NodeId child = 0;
  int group = 0;
  int slot = 0;
};

enum class TopologyKind {
  bridge,   // adjacent siblings share a merged child per layer
  tree,     // plain B-ary tree, no merging
  softmax,  // single decision node over all leaves
};

const char* topology_kind_name(TopologyKind kind);
TopologyKind topology_kind_from_name(const std::string& name);

// Layered routing DAG. Node ids are dense integers assigned in
// (layer, left-to-right) order, so decision nodes occupy ids
// [0, decision_count) and the id order of a layer is its spatial order.
// Values are immutable after construction and safe to share across threads.
struct BridgeTreeTopology {
  TopologyKind kind = TopologyKind::bridge;
  int branching = 0;  // children per decision node (softmax group size)
  int depth = 0;      // edge layers; root at node-layer 0, leaves at layer depth

  std::vector<std::vector<NodeId>> layers;       // node ids per layer, left to right
  std::vector<Edge> edges;                       // sorted by (group, slot)
  std::vector<std::vector<NodeId>> parent_sets;  // F_n, ordered
  std::vector<std::vector<NodeId>> child_sets;   // C_n in slot order; empty for leaves
  std::vector<int> node_layers;                  // node id -> layer index

  int node_count() const { return static_cast<int>(node_layers.size()); }
  int leaf_count() const { return static_cast<int>(layers.back().size()); }
  int decision_count() const { return node_count() - leaf_count(); }
  int edge_count() const { return static_cast<int>(edges.size()); }
  const std::vector<NodeId>& leaves() const { return layers.back(); }

  // identity token binding derived per-edge values to this topology
  std::uint64_t signature() const;
};

// Builds the merged topology: each node of the current layer gets `branching`
// children left to right, then the rightmost child of node i and the leftmost
// child of node i+1 are the same node. Grandchildren of a merged node are
// generated once, which is what truncates the corresponding plain-tree nodes.
BridgeTreeTopology build(int branching, int depth);

// Ablation baselines sharing the same topology interface.
BridgeTreeTopology build_plain_tree(int branching, int depth);
BridgeTreeTopology build_flat(int leaf_total);  // one softmax over all leaves

// Every distinct root-to-leaf path, as edge-id sequences, ordered
// lexicographically by the visited node ids.
using EdgePath = std::vector<int>;
std::vector<EdgePath> enumerate_paths(const BridgeTreeTopology& topology, NodeId leaf);

// Node sequence (root first) visited by an edge path.
std::vector<NodeId> path_nodes(const BridgeTreeTopology& topology, const EdgePath& path);

// Checks every structural invariant; returns the first violation found
// (naming the offending node or layer) or nullopt when the topology is valid.
std::optional<std::string> validate(const BridgeTreeTopology& topology);

}  // namespace bridgenet
