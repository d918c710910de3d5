#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "scalefree/padic.hpp"
#include "scalefree/rational.hpp"

namespace scalefree {

/// A clopen ball of the ultrametric: all points sharing `prefix` as the
/// low-order digits of their expansion, starting at the tree's origin.
struct BallNode {
  std::vector<std::uint32_t> prefix;
  long radius_exp = 0;  // radius = p^(-radius_exp)
  std::vector<std::size_t> children;
  std::vector<std::size_t> members;  // input point indices; non-empty only on leaves
  std::size_t parent = 0;            // root is its own parent
  std::size_t depth = 0;

  bool is_leaf() const { return children.empty(); }
  std::size_t multiplicity() const { return members.size(); }
};

/// Rooted weighted tree of p-adic balls over a finite point set.
///
/// The tree is a compressed digit trie: internal nodes exist only where the
/// point set branches, so the root is the smallest ball containing every
/// point. Leaves are balls at the common resolution p^(-resolution); equal
/// points (to that resolution) share a leaf.
class UltrametricTree {
 public:
  std::uint32_t prime() const { return prime_; }
  /// Absolute position of prefix[0] (the lowest valuation among the points).
  long origin() const { return origin_; }
  /// Absolute precision common to all points.
  long resolution() const { return resolution_; }
  std::size_t root() const { return 0; }
  std::span<const BallNode> nodes() const { return nodes_; }
  const BallNode& node(std::size_t index) const { return nodes_.at(index); }
  std::size_t leaf_count() const;

  Rational radius(std::size_t node_index) const;
  /// Leaf holding input point `point_index`.
  std::size_t leaf_of(std::size_t point_index) const { return leaf_of_.at(point_index); }
  std::size_t lowest_common_ancestor(std::size_t a, std::size_t b) const;
  /// Ultrametric distance between two input points: radius at their LCA,
  /// or 0 if they fall in the same leaf.
  Rational distance(std::size_t point_a, std::size_t point_b) const;

  /// DOT digraph; node labels are prefix digits low-to-high, edge labels the
  /// child's radius written "p^-k".
  std::string to_dot() const;
  /// {"prefix":[...],"radius_exp":k,"children":[...]} (leaves also carry
  /// "multiplicity").
  nlohmann::ordered_json to_json() const;

 private:
  friend UltrametricTree build_ball_tree(std::span<const PAdicNumber> points);
  nlohmann::ordered_json node_json(std::size_t index) const;

  std::uint32_t prime_ = 2;
  long origin_ = 0;
  long resolution_ = 0;
  std::vector<BallNode> nodes_;
  std::vector<std::size_t> leaf_of_;
};

/// Throws DomainError for an empty point set or mixed primes.
UltrametricTree build_ball_tree(std::span<const PAdicNumber> points);

}  // namespace scalefree
