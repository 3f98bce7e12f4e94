#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "pud/core_model.hpp"

namespace pud {

// Random binary decomposition of [1, T]. Divider d sits between days d and
// d+1 and carries a uniform rank; every window is split at its lowest-ranked
// divider, so the tree is the Cartesian tree of the ranks.
class PartitionTree {
 public:
  using NodeId = std::int32_t;
  static constexpr NodeId kNone = -1;

  struct Node {
    Day start = 1;
    Day end = 1;
    NodeId parent = kNone;
    NodeId left = kNone;
    NodeId right = kNone;
    std::int32_t depth = 0;

    bool leaf() const { return left == kNone; }
    Day length() const { return end - start + 1; }
  };

  static PartitionTree build(Day T, std::uint64_t seed);
  // ranks[d - 1] is the rank of divider d; ties go to the smaller divider.
  static PartitionTree from_ranks(std::vector<double> ranks);

  Day horizon() const { return T_; }
  NodeId root() const { return root_; }
  std::size_t size() const { return nodes_.size(); }
  const Node& node(NodeId id) const { return nodes_[static_cast<std::size_t>(id)]; }
  NodeId leaf(Day t) const;
  const std::vector<double>& ranks() const { return ranks_; }

  // Lowest common ancestor of the two leaves.
  NodeId smallest_window(Day t1, Day t2) const;
  bool is_window(Day start, Day end) const;

  // Longest root-to-leaf path, in edges.
  std::int32_t depth() const { return depth_; }
  Day subtree_leaves(NodeId id) const { return node(id).length(); }

  // Preorder, one line per window, indented by depth.
  void dump(std::ostream& out) const;

 private:
  Day T_ = 1;
  NodeId root_ = 0;
  std::int32_t depth_ = 0;
  std::vector<double> ranks_;
  std::vector<Node> nodes_;  // leaves 0..T-1, then divider d at T + d - 1
};

}  // namespace pud
