#include "bridgenet/gating.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bridgenet/error.hpp"

namespace bridgenet {

namespace {

void check_probs(const BridgeTreeTopology& topology, const EdgeProbabilities& probs) {
  if (probs.topology_signature != topology.signature())
    fail(ErrorCode::shape, "edge probabilities belong to a different topology");
  if (probs.values.size() != static_cast<std::size_t>(topology.edge_count()))
    fail(ErrorCode::shape, "expected " + std::to_string(topology.edge_count()) +
                               " edge values, got " + std::to_string(probs.values.size()));
}

}  // namespace

EdgeProbabilities grouped_softmax(std::span<const double> logits,
                                  const BridgeTreeTopology& topology) {
  const int edge_total = topology.edge_count();
  if (logits.size() != static_cast<std::size_t>(edge_total))
    fail(ErrorCode::shape, "grouped_softmax: expected " + std::to_string(edge_total) +
                               " logits, got " + std::to_string(logits.size()));

  EdgeProbabilities probs;
  probs.topology_signature = topology.signature();
  probs.values.resize(static_cast<std::size_t>(edge_total));

  const int group_size = topology.branching;
  for (int base = 0; base < edge_total; base += group_size) {
    double peak = logits[static_cast<std::size_t>(base)];
    for (int i = 1; i < group_size; ++i)
      peak = std::max(peak, logits[static_cast<std::size_t>(base + i)]);
    double sum = 0.0;
    for (int i = 0; i < group_size; ++i) {
      double e = std::exp(logits[static_cast<std::size_t>(base + i)] - peak);
      probs.values[static_cast<std::size_t>(base + i)] = e;
      sum += e;
    }
    for (int i = 0; i < group_size; ++i)
      probs.values[static_cast<std::size_t>(base + i)] /= sum;
  }
  return probs;
}

EdgeProbabilities uniform_probabilities(const BridgeTreeTopology& topology) {
  EdgeProbabilities probs;
  probs.topology_signature = topology.signature();
  probs.values.assign(static_cast<std::size_t>(topology.edge_count()),
                      1.0 / topology.branching);
  return probs;
}

std::vector<double> propagate_all_nodes(const BridgeTreeTopology& topology,
                                        const EdgeProbabilities& probs) {
  check_probs(topology, probs);
  std::vector<double> mass(static_cast<std::size_t>(topology.node_count()), 0.0);
  mass[0] = 1.0;
  // edges are sorted by parent id, and every parent precedes its children, so
  // one forward pass visits each edge after its parent's mass is final
  for (std::size_t e = 0; e < topology.edges.size(); ++e) {
    const Edge& edge = topology.edges[e];
    mass[static_cast<std::size_t>(edge.child)] +=
        mass[static_cast<std::size_t>(edge.parent)] * probs.values[e];
  }
  return mass;
}

std::vector<double> propagate(const BridgeTreeTopology& topology,
                              const EdgeProbabilities& probs) {
  std::vector<double> mass = propagate_all_nodes(topology, probs);
  const auto& leaves = topology.leaves();
  std::vector<double> gating(leaves.size());
  for (std::size_t i = 0; i < leaves.size(); ++i)
    gating[i] = mass[static_cast<std::size_t>(leaves[i])];
  return gating;
}

std::vector<double> propagate_oracle(const BridgeTreeTopology& topology,
                                     const EdgeProbabilities& probs) {
  if (topology.depth > 8)
    fail(ErrorCode::resource,
         "propagate_oracle: depth " + std::to_string(topology.depth) +
             " exceeds the exhaustive-enumeration guard (8)");
  check_probs(topology, probs);

  const auto& leaves = topology.leaves();
  std::vector<double> gating(leaves.size(), 0.0);
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    for (const EdgePath& path : enumerate_paths(topology, leaves[i])) {
      double product = 1.0;
      for (int edge_id : path) product *= probs.values[static_cast<std::size_t>(edge_id)];
      gating[i] += product;
    }
  }
  return gating;
}

std::vector<double> propagate_backward(const BridgeTreeTopology& topology,
                                       const EdgeProbabilities& probs,
                                       std::span<const double> grad_leaf) {
  check_probs(topology, probs);
  const auto& leaves = topology.leaves();
  if (grad_leaf.size() != leaves.size())
    fail(ErrorCode::shape, "propagate_backward: expected " + std::to_string(leaves.size()) +
                               " leaf gradients, got " + std::to_string(grad_leaf.size()));

  std::vector<double> mass = propagate_all_nodes(topology, probs);
  std::vector<double> adjoint(static_cast<std::size_t>(topology.node_count()), 0.0);
  for (std::size_t i = 0; i < leaves.size(); ++i)
    adjoint[static_cast<std::size_t>(leaves[i])] = grad_leaf[i];

  // reverse edge order finishes a child's adjoint before any of its parents
  // consume it; bridge nodes feed both parents symmetrically
  std::vector<double> edge_adjoint(probs.values.size(), 0.0);
  for (std::size_t e = probs.values.size(); e-- > 0;) {
    const Edge& edge = topology.edges[e];
    edge_adjoint[e] =
        mass[static_cast<std::size_t>(edge.parent)] * adjoint[static_cast<std::size_t>(edge.child)];
    adjoint[static_cast<std::size_t>(edge.parent)] +=
        probs.values[e] * adjoint[static_cast<std::size_t>(edge.child)];
  }

  // softmax Jacobian per group: d logit_i = p_i (a_i - sum_j p_j a_j)
  std::vector<double> grad_logits(probs.values.size());
  const int group_size = topology.branching;
  for (int base = 0; base < topology.edge_count(); base += group_size) {
    double weighted = 0.0;
    for (int i = 0; i < group_size; ++i) {
      std::size_t e = static_cast<std::size_t>(base + i);
      weighted += probs.values[e] * edge_adjoint[e];
    }
    for (int i = 0; i < group_size; ++i) {
      std::size_t e = static_cast<std::size_t>(base + i);
      grad_logits[e] = probs.values[e] * (edge_adjoint[e] - weighted);
    }
  }
  return grad_logits;
}

}  // namespace bridgenet
