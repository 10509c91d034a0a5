#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "sockscope/corpus.hpp"

namespace sockscope {

// Directed reply network: edge A -> B with weight w when A replied to B's
// posts w times. Self-replies never create edges. Nodes are all corpus
// accounts, so accounts that never reply appear as isolated nodes.
class ReplyNetwork {
public:
    static ReplyNetwork build(const Corpus& corpus);

    std::size_t node_count() const { return ids_.size(); }
    const std::vector<std::string>& node_ids() const { return ids_; }  // sorted
    bool has_node(const std::string& id) const { return index_.contains(id); }
    std::size_t node_index(const std::string& id) const;

    // Neighbor index lists are sorted; weights align with out_neighbors.
    const std::vector<std::size_t>& out_neighbors(std::size_t node) const;
    const std::vector<std::int64_t>& out_weights(std::size_t node) const;
    const std::vector<std::size_t>& in_neighbors(std::size_t node) const;
    bool has_edge(std::size_t from, std::size_t to) const;

    std::size_t edge_count() const { return n_edges_; }

    struct Edge {
        std::string from, to;
        std::int64_t weight;
    };
    std::vector<Edge> edges() const;  // sorted by (from, to)

private:
    std::vector<std::string> ids_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<std::vector<std::size_t>> out_;
    std::vector<std::vector<std::int64_t>> out_weight_;
    std::vector<std::vector<std::size_t>> in_;
    std::size_t n_edges_ = 0;
};

// Power iteration with uniform teleportation on the unweighted directed
// graph; dangling mass is redistributed uniformly. Stops when the L1 change
// drops below `tolerance` or after `max_iter` sweeps.
std::unordered_map<std::string, double> pagerank(const ReplyNetwork& network,
                                                 double damping = 0.85,
                                                 double tolerance = 1e-8, int max_iter = 200);

struct EgoNetwork {
    std::string ego;
    std::vector<std::string> members;                          // ego + in/out neighbors, sorted
    std::vector<std::pair<std::string, std::string>> edges;    // induced directed edges, sorted
};

EgoNetwork ego_network(const ReplyNetwork& network, const std::string& node);

// Clustering on the undirected projection: 2*links_among_neighbors/(k*(k-1));
// nodes with fewer than two neighbors score 0.
double local_clustering(const ReplyNetwork& network, const std::string& node);

// Fraction of directed ego-network edges whose reverse edge also exists.
// Requires at least one edge.
double reciprocity(const EgoNetwork& ego_net);

// out-degree / (out-degree + in-degree) over distinct neighbors; requires the
// node to have at least one neighbor.
double initiation_ratio(const ReplyNetwork& network, const std::string& node);

// Directed density: edges / (n*(n-1)); 0 for single-member ego networks.
double ego_density(const EgoNetwork& ego_net);

}  // namespace sockscope
