#include "scalefree/ball_tree.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>

#include "scalefree/error.hpp"

namespace scalefree {

namespace {

using DigitString = std::vector<std::uint32_t>;

struct Builder {
  const std::vector<DigitString>& strings;
  long origin;
  std::vector<BallNode>& nodes;
  std::vector<std::size_t>& leaf_of;

  std::size_t common_prefix(const std::vector<std::size_t>& group, std::size_t from) const {
    const DigitString& first = strings[group.front()];
    std::size_t length = first.size();
    for (std::size_t idx : group) {
      const DigitString& s = strings[idx];
      std::size_t k = from;
      while (k < length && s[k] == first[k]) ++k;
      length = k;
    }
    return length;
  }

  std::size_t build(const std::vector<std::size_t>& group, std::size_t from, std::size_t parent,
                    std::size_t depth) {
    const std::size_t split = common_prefix(group, from);
    const DigitString& first = strings[group.front()];
    const std::size_t index = nodes.size();
    BallNode node;
    node.prefix.assign(first.begin(), first.begin() + static_cast<long>(split));
    node.radius_exp = origin + static_cast<long>(split);
    node.parent = parent == std::numeric_limits<std::size_t>::max() ? index : parent;
    node.depth = depth;
    nodes.push_back(std::move(node));

    if (split == first.size()) {
      nodes[index].members = group;
      for (std::size_t idx : group) leaf_of[idx] = index;
      return index;
    }
    std::map<std::uint32_t, std::vector<std::size_t>> branches;
    for (std::size_t idx : group) branches[strings[idx][split]].push_back(idx);
    for (const auto& [digit, members] : branches) {
      const std::size_t child = build(members, split + 1, index, depth + 1);
      nodes[index].children.push_back(child);
    }
    return index;
  }
};

}  // namespace

UltrametricTree build_ball_tree(std::span<const PAdicNumber> points) {
  if (points.empty()) throw DomainError("cannot build a ball tree over an empty point set");
  const std::uint32_t p = points.front().prime();
  long origin = std::numeric_limits<long>::max();
  long resolution = std::numeric_limits<long>::max();
  for (const PAdicNumber& point : points) {
    if (point.prime() != p) throw DomainError("prime mismatch in ball tree input");
    if (point.is_zero()) continue;
    origin = std::min<long>(origin, point.valuation());
    resolution = std::min(resolution, point.absolute_precision());
  }
  if (origin == std::numeric_limits<long>::max()) {
    // Only zeros.
    origin = 0;
    resolution = static_cast<long>(points.front().precision());
  }
  if (resolution <= origin) {
    // A point known to fewer digits than another's valuation: nothing resolvable.
    resolution = origin;
  }

  std::vector<DigitString> strings;
  strings.reserve(points.size());
  for (const PAdicNumber& point : points) {
    DigitString s(static_cast<std::size_t>(resolution - origin));
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = point.digit_at(origin + static_cast<long>(i));
    strings.push_back(std::move(s));
  }

  UltrametricTree tree;
  tree.prime_ = p;
  tree.origin_ = origin;
  tree.resolution_ = resolution;
  tree.leaf_of_.assign(points.size(), 0);
  std::vector<std::size_t> all(points.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  Builder builder{strings, origin, tree.nodes_, tree.leaf_of_};
  builder.build(all, 0, std::numeric_limits<std::size_t>::max(), 0);
  return tree;
}

std::size_t UltrametricTree::leaf_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const BallNode& n) { return n.is_leaf(); }));
}

Rational UltrametricTree::radius(std::size_t node_index) const {
  return prime_power(prime_, -node(node_index).radius_exp);
}

std::size_t UltrametricTree::lowest_common_ancestor(std::size_t a, std::size_t b) const {
  while (nodes_.at(a).depth > nodes_.at(b).depth) a = nodes_[a].parent;
  while (nodes_.at(b).depth > nodes_.at(a).depth) b = nodes_[b].parent;
  while (a != b) {
    a = nodes_[a].parent;
    b = nodes_[b].parent;
  }
  return a;
}

Rational UltrametricTree::distance(std::size_t point_a, std::size_t point_b) const {
  const std::size_t leaf_a = leaf_of(point_a);
  const std::size_t leaf_b = leaf_of(point_b);
  if (leaf_a == leaf_b) return Rational(0);
  return radius(lowest_common_ancestor(leaf_a, leaf_b));
}

std::string UltrametricTree::to_dot() const {
  std::ostringstream out;
  out << "digraph ultrametric {\n";
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const BallNode& n = nodes_[i];
    out << "  n" << i << " [label=\"";
    for (std::size_t k = 0; k < n.prefix.size(); ++k) out << (k ? "," : "") << n.prefix[k];
    out << "\"";
    if (n.is_leaf()) out << ", shape=box";
    if (n.multiplicity() > 1) out << ", xlabel=\"x" << n.multiplicity() << "\"";
    out << "];\n";
  }
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    for (std::size_t child : nodes_[i].children) {
      out << "  n" << i << " -> n" << child << " [label=\"" << prime_ << "^-"
          << nodes_[child].radius_exp << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

nlohmann::ordered_json UltrametricTree::node_json(std::size_t index) const {
  const BallNode& n = nodes_[index];
  nlohmann::ordered_json children = nlohmann::ordered_json::array();
  for (std::size_t child : n.children) children.push_back(node_json(child));
  nlohmann::ordered_json j = {{"prefix", n.prefix}, {"radius_exp", n.radius_exp}, {"children", children}};
  if (n.is_leaf()) j["multiplicity"] = n.multiplicity();
  return j;
}

nlohmann::ordered_json UltrametricTree::to_json() const { return node_json(root()); }

}  // namespace scalefree
