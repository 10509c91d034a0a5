#include "sockscope/graph.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace sockscope {

ReplyNetwork ReplyNetwork::build(const Corpus& corpus) {
    ReplyNetwork net;
    net.ids_.reserve(corpus.accounts().size());
    for (const Account& a : corpus.accounts()) net.ids_.push_back(a.account_id);
    std::sort(net.ids_.begin(), net.ids_.end());
    for (std::size_t i = 0; i < net.ids_.size(); ++i) net.index_[net.ids_[i]] = i;

    std::map<std::pair<std::size_t, std::size_t>, std::int64_t> weights;
    for (const Post& p : corpus.posts()) {
        if (!p.parent_id) continue;
        const Post* parent = corpus.find_post(*p.parent_id);
        if (parent == nullptr || parent->author_id == p.author_id) continue;
        weights[{net.index_.at(p.author_id), net.index_.at(parent->author_id)}] += 1;
    }

    net.out_.resize(net.ids_.size());
    net.out_weight_.resize(net.ids_.size());
    net.in_.resize(net.ids_.size());
    for (const auto& [edge, w] : weights) {
        net.out_[edge.first].push_back(edge.second);
        net.out_weight_[edge.first].push_back(w);
        net.in_[edge.second].push_back(edge.first);
    }
    for (auto& v : net.in_) std::sort(v.begin(), v.end());
    net.n_edges_ = weights.size();
    return net;
}

std::size_t ReplyNetwork::node_index(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw std::invalid_argument("unknown node: " + id);
    return it->second;
}

const std::vector<std::size_t>& ReplyNetwork::out_neighbors(std::size_t node) const {
    return out_.at(node);
}
const std::vector<std::int64_t>& ReplyNetwork::out_weights(std::size_t node) const {
    return out_weight_.at(node);
}
const std::vector<std::size_t>& ReplyNetwork::in_neighbors(std::size_t node) const {
    return in_.at(node);
}

bool ReplyNetwork::has_edge(std::size_t from, std::size_t to) const {
    const auto& nbrs = out_.at(from);
    return std::binary_search(nbrs.begin(), nbrs.end(), to);
}

std::vector<ReplyNetwork::Edge> ReplyNetwork::edges() const {
    std::vector<Edge> out;
    out.reserve(n_edges_);
    for (std::size_t from = 0; from < ids_.size(); ++from)
        for (std::size_t j = 0; j < out_[from].size(); ++j)
            out.push_back({ids_[from], ids_[out_[from][j]], out_weight_[from][j]});
    return out;  // ids_ and adjacency are sorted, so this is (from, to) sorted
}

std::unordered_map<std::string, double> pagerank(const ReplyNetwork& network, double damping,
                                                 double tolerance, int max_iter) {
    const std::size_t n = network.node_count();
    if (n == 0) throw std::invalid_argument("pagerank: empty network");
    if (damping <= 0.0 || damping >= 1.0)
        throw std::invalid_argument("pagerank: damping must be in (0,1)");

    std::vector<double> rank(n, 1.0 / static_cast<double>(n));
    std::vector<double> next(n, 0.0);

    for (int iter = 0; iter < max_iter; ++iter) {
        double dangling = 0.0;
        for (std::size_t v = 0; v < n; ++v)
            if (network.out_neighbors(v).empty()) dangling += rank[v];

        const double base = (1.0 - damping) / static_cast<double>(n) +
                            damping * dangling / static_cast<double>(n);
        std::fill(next.begin(), next.end(), base);
        for (std::size_t v = 0; v < n; ++v) {
            const auto& nbrs = network.out_neighbors(v);
            if (nbrs.empty()) continue;
            const double share = damping * rank[v] / static_cast<double>(nbrs.size());
            for (std::size_t u : nbrs) next[u] += share;
        }

        double delta = 0.0;
        for (std::size_t v = 0; v < n; ++v) delta += std::abs(next[v] - rank[v]);
        rank.swap(next);
        if (delta < tolerance) break;
    }

    std::unordered_map<std::string, double> out;
    out.reserve(n);
    for (std::size_t v = 0; v < n; ++v) out[network.node_ids()[v]] = rank[v];
    return out;
}

namespace {

std::vector<std::size_t> distinct_neighbors(const ReplyNetwork& network, std::size_t node) {
    std::vector<std::size_t> nbrs;
    nbrs.insert(nbrs.end(), network.out_neighbors(node).begin(),
                network.out_neighbors(node).end());
    nbrs.insert(nbrs.end(), network.in_neighbors(node).begin(),
                network.in_neighbors(node).end());
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    return nbrs;
}

}  // namespace

EgoNetwork ego_network(const ReplyNetwork& network, const std::string& node) {
    const std::size_t ego = network.node_index(node);
    std::vector<std::size_t> members = distinct_neighbors(network, ego);
    members.push_back(ego);
    std::sort(members.begin(), members.end());

    EgoNetwork out;
    out.ego = node;
    out.members.reserve(members.size());
    for (std::size_t m : members) out.members.push_back(network.node_ids()[m]);

    for (std::size_t from : members) {
        for (std::size_t to : network.out_neighbors(from)) {
            if (std::binary_search(members.begin(), members.end(), to))
                out.edges.emplace_back(network.node_ids()[from], network.node_ids()[to]);
        }
    }
    std::sort(out.edges.begin(), out.edges.end());
    return out;
}

double local_clustering(const ReplyNetwork& network, const std::string& node) {
    const std::size_t v = network.node_index(node);
    const std::vector<std::size_t> nbrs = distinct_neighbors(network, v);
    const std::size_t k = nbrs.size();
    if (k < 2) return 0.0;

    std::size_t links = 0;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            if (network.has_edge(nbrs[i], nbrs[j]) || network.has_edge(nbrs[j], nbrs[i]))
                ++links;
        }
    }
    return 2.0 * static_cast<double>(links) / (static_cast<double>(k) * static_cast<double>(k - 1));
}

double reciprocity(const EgoNetwork& ego_net) {
    if (ego_net.edges.empty()) throw std::invalid_argument("reciprocity: ego network has no edge");
    std::set<std::pair<std::string, std::string>> edges(ego_net.edges.begin(),
                                                        ego_net.edges.end());
    std::size_t reciprocated = 0;
    for (const auto& [from, to] : ego_net.edges)
        if (edges.contains({to, from})) ++reciprocated;
    return static_cast<double>(reciprocated) / static_cast<double>(ego_net.edges.size());
}

double initiation_ratio(const ReplyNetwork& network, const std::string& node) {
    const std::size_t v = network.node_index(node);
    std::vector<std::size_t> out_nbrs = network.out_neighbors(v);
    std::vector<std::size_t> in_nbrs = network.in_neighbors(v);
    std::sort(out_nbrs.begin(), out_nbrs.end());
    out_nbrs.erase(std::unique(out_nbrs.begin(), out_nbrs.end()), out_nbrs.end());
    in_nbrs.erase(std::unique(in_nbrs.begin(), in_nbrs.end()), in_nbrs.end());
    const double out_deg = static_cast<double>(out_nbrs.size());
    const double in_deg = static_cast<double>(in_nbrs.size());
    if (out_deg + in_deg == 0.0)
        throw std::invalid_argument("initiation_ratio: isolated node " + node);
    return out_deg / (out_deg + in_deg);
}

double ego_density(const EgoNetwork& ego_net) {
    const double n = static_cast<double>(ego_net.members.size());
    if (n < 2) return 0.0;
    return static_cast<double>(ego_net.edges.size()) / (n * (n - 1.0));
}

}  // namespace sockscope
