#include "pud/partition_tree.hpp"

#include <ostream>
#include <random>
#include <stdexcept>
#include <string>

namespace pud {

PartitionTree PartitionTree::build(Day T, std::uint64_t seed) {
  if (T < 1) throw std::invalid_argument("horizon must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> ranks(static_cast<std::size_t>(T - 1));
  for (auto& r : ranks) r = u(rng);
  return from_ranks(std::move(ranks));
}

PartitionTree PartitionTree::from_ranks(std::vector<double> ranks) {
  PartitionTree t;
  t.T_ = static_cast<Day>(ranks.size()) + 1;
  t.ranks_ = std::move(ranks);
  const Day T = t.T_;
  t.nodes_.resize(static_cast<std::size_t>(2 * T - 1));
  auto div = [T](Day d) { return static_cast<NodeId>(T + d - 1); };
  auto lower = [&](Day a, Day b) {
    return t.ranks_[a - 1] < t.ranks_[b - 1] || (t.ranks_[a - 1] == t.ranks_[b - 1] && a < b);
  };

  // Monotone stack over dividers; children hold divider numbers, 0 = none.
  std::vector<Day> lc(static_cast<std::size_t>(T), 0), rc(static_cast<std::size_t>(T), 0);
  std::vector<Day> stack;
  for (Day d = 1; d < T; ++d) {
    Day last = 0;
    while (!stack.empty() && lower(d, stack.back())) {
      last = stack.back();
      stack.pop_back();
    }
    lc[d] = last;
    if (!stack.empty()) rc[stack.back()] = d;
    stack.push_back(d);
  }

  if (T == 1) {
    t.root_ = 0;
    t.nodes_[0] = Node{1, 1, kNone, kNone, kNone, 0};
    return t;
  }
  t.root_ = div(stack.front());
  t.nodes_[t.root_] = Node{1, T, kNone, kNone, kNone, 0};
  std::vector<Day> pending{stack.front()};
  while (!pending.empty()) {
    Day d = pending.back();
    pending.pop_back();
    Node& n = t.nodes_[div(d)];
    const NodeId self = div(d);
    NodeId l = lc[d] ? div(lc[d]) : static_cast<NodeId>(d - 1);
    NodeId r = rc[d] ? div(rc[d]) : static_cast<NodeId>(d);
    n.left = l;
    n.right = r;
    t.nodes_[l] = Node{n.start, d, self, kNone, kNone, n.depth + 1};
    t.nodes_[r] = Node{d + 1, n.end, self, kNone, kNone, n.depth + 1};
    if (lc[d]) pending.push_back(lc[d]);
    if (rc[d]) pending.push_back(rc[d]);
  }
  for (Day day = 1; day <= T; ++day) t.depth_ = std::max(t.depth_, t.nodes_[day - 1].depth);
  return t;
}

PartitionTree::NodeId PartitionTree::leaf(Day t) const {
  if (t < 1 || t > T_) throw std::out_of_range("day " + std::to_string(t) + " outside [1, T]");
  return static_cast<NodeId>(t - 1);
}

PartitionTree::NodeId PartitionTree::smallest_window(Day t1, Day t2) const {
  NodeId a = leaf(t1), b = leaf(t2);
  while (a != b) {
    if (node(a).depth >= node(b).depth) a = node(a).parent;
    else b = node(b).parent;
  }
  return a;
}

bool PartitionTree::is_window(Day start, Day end) const {
  if (start < 1 || end > T_ || start > end) return false;
  const Node& w = node(smallest_window(start, end));
  return w.start == start && w.end == end;
}

void PartitionTree::dump(std::ostream& out) const {
  std::vector<NodeId> pending{root_};
  while (!pending.empty()) {
    NodeId id = pending.back();
    pending.pop_back();
    const Node& n = node(id);
    out << std::string(static_cast<std::size_t>(2 * n.depth), ' ') << '[' << n.start << ',' << n.end << ']';
    if (!n.leaf()) {
      Day d = node(n.left).end;
      out << " split=" << d << " rank=" << ranks_[d - 1];
      pending.push_back(n.right);
      pending.push_back(n.left);
    }
    out << '\n';
  }
}

}  // namespace pud
