#include "binet/binet.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <unordered_set>

#include "binet/text.hpp"

namespace binet {

namespace {

std::uint64_t edge_key(NodeId a, NodeId b) {
  const NodeId lo = std::min(a, b);
  const NodeId hi = std::max(a, b);
  return (static_cast<std::uint64_t>(lo) << 32) | hi;
}

}  // namespace

std::optional<NodeId> BINet::find(const BurstElement& element) const {
  const auto it = word_index_.find(element.word);
  if (it == word_index_.end()) return std::nullopt;
  for (NodeId id : it->second) {
    if (nodes_[id].period == element.period) return id;
  }
  return std::nullopt;
}

NodeId BINet::id_of(const BurstElement& element) const {
  const auto id = find(element);
  if (!id) {
    throw DomainError("unknown node: " + element.word + " [" +
                      std::to_string(element.period.start) + "," +
                      std::to_string(element.period.end) + "]");
  }
  return *id;
}

std::span<const std::pair<NodeId, std::int64_t>> BINet::neighbors(
    NodeId id) const {
  if (id >= nodes_.size()) throw DomainError("unknown node id");
  return adjacency_[id];
}

bool BINet::has_edge(NodeId a, NodeId b) const {
  return edge_weights_.contains(edge_key(a, b));
}

std::int64_t BINet::weight(NodeId a, NodeId b) const {
  const auto it = edge_weights_.find(edge_key(a, b));
  if (it == edge_weights_.end()) throw DomainError("missing edge");
  return it->second;
}

double BINet::normalized_weight(NodeId c, NodeId c_prime,
                                NeighborNorm norm) const {
  const std::int64_t w = weight(c, c_prime);
  const std::int64_t total =
      norm == NeighborNorm::source ? weight_sums_.at(c)
                                   : weight_sums_.at(c_prime);
  return static_cast<double>(w) / static_cast<double>(total);
}

std::span<const NodeId> BINet::nodes_of_word(const std::string& word) const {
  const auto it = word_index_.find(word);
  if (it == word_index_.end()) return {};
  return it->second;
}

NodeId BINetBuilder::add_node(BurstElement element) {
  const auto it = ids_.find(element);
  if (it != ids_.end()) return it->second;
  const NodeId id = static_cast<NodeId>(nodes_.size());
  ids_.emplace(element, id);
  nodes_.push_back(std::move(element));
  return id;
}

void BINetBuilder::add_edge(NodeId a, NodeId b, std::int64_t weight) {
  if (a == b) throw DomainError("self-loop edges are not allowed");
  if (a >= nodes_.size() || b >= nodes_.size()) {
    throw DomainError("edge endpoint does not exist");
  }
  if (weight < 1) throw DomainError("edge weight must be positive");
  weights_[edge_key(a, b)] += weight;
}

BINet BINetBuilder::build(std::int64_t min_edge_weight) && {
  BINet net;

  // Canonical ids: sorted by (word, start, end). ids_ is already that order.
  std::vector<NodeId> remap(nodes_.size());
  net.nodes_.reserve(nodes_.size());
  {
    NodeId next = 0;
    for (const auto& [element, provisional] : ids_) {
      remap[provisional] = next++;
      net.nodes_.push_back(element);
    }
  }

  net.adjacency_.assign(net.nodes_.size(), {});
  net.weight_sums_.assign(net.nodes_.size(), 0);
  for (const auto& [key, w] : weights_) {
    if (w < min_edge_weight) continue;
    const NodeId a = remap[static_cast<NodeId>(key >> 32)];
    const NodeId b = remap[static_cast<NodeId>(key & 0xFFFFFFFFu)];
    net.edge_weights_.emplace(edge_key(a, b), w);
    net.adjacency_[a].emplace_back(b, w);
    net.adjacency_[b].emplace_back(a, w);
    net.weight_sums_[a] += w;
    net.weight_sums_[b] += w;
    ++net.edge_count_;
  }

  for (std::size_t id = 0; id < net.nodes_.size(); ++id) {
    auto& adj = net.adjacency_[id];
    std::sort(adj.begin(), adj.end(),
              [&](const auto& x, const auto& y) {
                if (x.second != y.second) return x.second > y.second;
                const BurstElement& ex = net.nodes_[x.first];
                const BurstElement& ey = net.nodes_[y.first];
                if (ex.word != ey.word) return ex.word < ey.word;
                return ex.period.start < ey.period.start;
              });
    net.max_period_end_ =
        std::max(net.max_period_end_, net.nodes_[id].period.end);
    net.word_index_[net.nodes_[id].word].push_back(static_cast<NodeId>(id));
  }
  // nodes_of_word ascending by period start; ids are word-major sorted, so
  // per-word id order already is period order.
  return net;
}

BINet build_binet(const Stream& stream, const PeriodMap& periods,
                  std::int64_t min_edge_weight) {
  BINetBuilder builder;

  // word -> its elements' (period, builder id), periods disjoint and sorted.
  std::unordered_map<std::string, std::vector<std::pair<BurstPeriod, NodeId>>>
      elements;
  for (const auto& [word, word_periods] : periods) {
    auto& list = elements[word];
    for (const BurstPeriod& period : word_periods) {
      list.emplace_back(period, builder.add_node(BurstElement{word, period}));
    }
    std::sort(list.begin(), list.end());
  }

  std::vector<NodeId> active;
  std::unordered_set<std::string> seen;
  for (int tau = 0; tau < stream.epochs; ++tau) {
    for (const Document& doc : stream.docs_by_epoch[tau]) {
      active.clear();
      seen.clear();
      for (const std::string& token : doc.tokens) {
        if (!seen.insert(token).second) continue;
        const auto it = elements.find(token);
        if (it == elements.end()) continue;
        // A word's periods are disjoint, so at most one contains tau.
        for (const auto& [period, id] : it->second) {
          if (period.start > tau) break;
          if (period.contains(tau)) {
            active.push_back(id);
            break;
          }
        }
      }
      // One count per document for every co-occurring active pair.
      for (std::size_t i = 0; i < active.size(); ++i) {
        for (std::size_t j = i + 1; j < active.size(); ++j) {
          builder.add_edge(active[i], active[j], 1);
        }
      }
    }
  }
  return std::move(builder).build(min_edge_weight);
}

CandidateIndex::CandidateIndex(const BINet& net) : net_(&net) {
  const int size = net.max_period_end() + 1;
  active_by_epoch_.assign(std::max(size, 0), {});
  for (NodeId id = 0; id < net.node_count(); ++id) {
    const BurstPeriod& period = net.node(id).period;
    for (int tau = std::max(period.start, 0); tau <= period.end; ++tau) {
      active_by_epoch_[tau].push_back(id);
    }
  }
}

std::vector<NodeId> CandidateIndex::query(const BurstPeriod& period) const {
  std::vector<NodeId> out;
  std::vector<std::uint8_t> taken(net_->node_count(), 0);
  const int lo = std::max(period.start, 0);
  const int hi = std::min<int>(period.end,
                               static_cast<int>(active_by_epoch_.size()) - 1);
  for (int tau = lo; tau <= hi; ++tau) {
    for (NodeId id : active_by_epoch_[tau]) {
      if (!taken[id]) {
        taken[id] = 1;
        out.push_back(id);
      }
    }
  }
  std::sort(out.begin(), out.end(), [&](NodeId a, NodeId b) {
    const BurstElement& ea = net_->node(a);
    const BurstElement& eb = net_->node(b);
    if (ea.period.start != eb.period.start) {
      return ea.period.start < eb.period.start;
    }
    if (ea.word != eb.word) return ea.word < eb.word;
    return ea.period.end < eb.period.end;
  });
  return out;
}

void dump_binet(const BINet& net, const std::string& nodes_path,
                const std::string& edges_path) {
  std::ofstream nodes(nodes_path);
  if (!nodes) throw Error("cannot write node file: " + nodes_path);
  for (NodeId id = 0; id < net.node_count(); ++id) {
    const BurstElement& e = net.node(id);
    nodes << e.word << '\t' << e.period.start << '\t' << e.period.end << '\t'
          << id << '\n';
  }

  std::ofstream edges(edges_path);
  if (!edges) throw Error("cannot write edge file: " + edges_path);
  for (NodeId a = 0; a < net.node_count(); ++a) {
    // neighbors() is weight-ordered; dump wants id order.
    std::vector<std::pair<NodeId, std::int64_t>> out(net.neighbors(a).begin(),
                                                     net.neighbors(a).end());
    std::sort(out.begin(), out.end());
    for (const auto& [b, w] : out) {
      if (b > a) edges << a << '\t' << b << '\t' << w << '\n';
    }
  }
}

namespace {

template <typename T>
T parse_int_field(std::string_view field, const std::string& path,
                  std::size_t line_no, const char* what) {
  T value{};
  const char* first = field.data();
  auto [ptr, ec] = std::from_chars(first, first + field.size(), value);
  if (ec != std::errc() || ptr != first + field.size()) {
    throw ParseError(path, line_no,
                     std::string("bad ") + what + ": " + std::string(field));
  }
  return value;
}

}  // namespace

BINet load_binet(const std::string& nodes_path, const std::string& edges_path) {
  std::ifstream nodes(nodes_path);
  if (!nodes) throw Error("cannot open node file: " + nodes_path);

  BINetBuilder builder;
  std::unordered_map<NodeId, std::pair<NodeId, BurstPeriod>> file_to_builder;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(nodes, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_tabs(line);
    if (fields.size() != 4) {
      throw ParseError(nodes_path, line_no,
                       "expected word<TAB>start<TAB>end<TAB>node_id");
    }
    BurstPeriod period{
        parse_int_field<int>(fields[1], nodes_path, line_no, "start"),
        parse_int_field<int>(fields[2], nodes_path, line_no, "end")};
    if (period.start > period.end || period.start < 0) {
      throw ParseError(nodes_path, line_no, "invalid period");
    }
    const NodeId file_id =
        parse_int_field<NodeId>(fields[3], nodes_path, line_no, "node_id");
    const NodeId id =
        builder.add_node(BurstElement{std::string(fields[0]), period});
    if (!file_to_builder.emplace(file_id, std::pair{id, period}).second) {
      throw ParseError(nodes_path, line_no, "duplicate node_id");
    }
  }

  std::ifstream edges(edges_path);
  if (!edges) throw Error("cannot open edge file: " + edges_path);
  line_no = 0;
  while (std::getline(edges, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_tabs(line);
    if (fields.size() != 3) {
      throw ParseError(edges_path, line_no,
                       "expected node_id<TAB>node_id<TAB>weight");
    }
    const NodeId a =
        parse_int_field<NodeId>(fields[0], edges_path, line_no, "node_id");
    const NodeId b =
        parse_int_field<NodeId>(fields[1], edges_path, line_no, "node_id");
    const std::int64_t w =
        parse_int_field<std::int64_t>(fields[2], edges_path, line_no, "weight");
    const auto ia = file_to_builder.find(a);
    const auto ib = file_to_builder.find(b);
    if (ia == file_to_builder.end() || ib == file_to_builder.end()) {
      throw ParseError(edges_path, line_no, "edge references unknown node_id");
    }
    if (!ia->second.second.overlaps(ib->second.second)) {
      throw ParseError(edges_path, line_no,
                       "edge endpoints have disjoint burst periods");
    }
    try {
      builder.add_edge(ia->second.first, ib->second.first, w);
    } catch (const DomainError& e) {
      throw ParseError(edges_path, line_no, e.what());
    }
  }

  return std::move(builder).build(1);
}

}  // namespace binet
