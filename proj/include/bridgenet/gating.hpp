#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bridgenet/bridge_tree.hpp"

namespace bridgenet {

// Per-sample probability on every edge, indexed by edge id. Within each
// softmax group the branching-many values are positive and sum to one.
struct EdgeProbabilities {
  std::uint64_t topology_signature = 0;
  std::vector<double> values;
};

// Normalizes each consecutive group of `branching` logits with a numerically
// stable softmax (group max subtracted before exponentiation). Logits are
// ordered by (decision node id, slot).
EdgeProbabilities grouped_softmax(std::span<const double> logits,
                                  const BridgeTreeTopology& topology);

// Convenience: every edge worth 1/branching.
EdgeProbabilities uniform_probabilities(const BridgeTreeTopology& topology);

// Probability mass reaching every node, in node-id order; root mass is 1 and
// each node accumulates parent mass times the connecting edge value.
std::vector<double> propagate_all_nodes(const BridgeTreeTopology& topology,
                                        const EdgeProbabilities& probs);

// Leaf slice of the same sweep, in leaf order.
std::vector<double> propagate(const BridgeTreeTopology& topology,
                              const EdgeProbabilities& probs);

// Brute-force reference: sums the product of edge values over every
// enumerated root-to-leaf path. Exponential in depth; guarded at depth 8.
std::vector<double> propagate_oracle(const BridgeTreeTopology& topology,
                                     const EdgeProbabilities& probs);

// Reverse-mode sweep for d(loss)/d(logit): node adjoints accumulate child
// adjoints weighted by edge values, edge adjoints are parent mass times child
// adjoint, and each group is finished with its softmax Jacobian.
std::vector<double> propagate_backward(const BridgeTreeTopology& topology,
                                       const EdgeProbabilities& probs,
                                       std::span<const double> grad_leaf);

}  // namespace bridgenet
