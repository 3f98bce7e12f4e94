#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "pud/partition_tree.hpp"

using namespace pud;

TEST_CASE("tiny horizons") {
  auto one = PartitionTree::build(1, 3);
  CHECK(one.size() == 1);
  CHECK(one.depth() == 0);
  CHECK(one.node(one.root()).leaf());

  auto two = PartitionTree::build(2, 3);
  CHECK(two.depth() == 1);
  const auto& root = two.node(two.root());
  CHECK(root.start == 1);
  CHECK(root.end == 2);
  CHECK(two.node(root.left).end == 1);
  CHECK(two.node(root.right).start == 2);
}

TEST_CASE("windows follow divider ranks") {
  auto t = PartitionTree::from_ranks({0.40, 0.61, 0.55, 0.33, 0.48});
  CHECK(t.is_window(2, 4));
  CHECK_FALSE(t.is_window(2, 5));
  CHECK(t.is_window(1, 4));
  CHECK(t.is_window(5, 6));
  CHECK(t.node(t.root()).end == 6);
}

TEST_CASE("smallest window") {
  auto t = PartitionTree::build(64, 9);
  CHECK(t.smallest_window(5, 5) == t.leaf(5));
  CHECK(t.smallest_window(1, 64) == t.root());
  CHECK_THROWS_AS(t.leaf(0), std::out_of_range);
  CHECK_THROWS_AS(t.leaf(65), std::out_of_range);
}

TEST_CASE("cartesian and nesting properties") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const Day T = 5 + static_cast<Day>(seed * 7);
    auto t = PartitionTree::build(T, seed);
    const auto& r = t.ranks();
    for (std::size_t id = 0; id < t.size(); ++id) {
      const auto& n = t.node(static_cast<PartitionTree::NodeId>(id));
      CHECK((n.leaf() == (n.start == n.end)));
      if (n.leaf()) continue;
      const auto& l = t.node(n.left);
      const auto& rr = t.node(n.right);
      CHECK(l.start == n.start);
      CHECK(l.end + 1 == rr.start);
      CHECK(rr.end == n.end);
      for (Day d = n.start; d < n.end; ++d)
        if (d != l.end) CHECK(r[l.end - 1] < r[d - 1]);
    }
    for (Day day = 1; day <= T; ++day) {
      auto w = t.leaf(day);
      while (w != PartitionTree::kNone) {
        CHECK(t.node(w).start <= day);
        CHECK(day <= t.node(w).end);
        w = t.node(w).parent;
      }
    }
  }
}

TEST_CASE("first split of four days is uniform") {
  int counts[4] = {0, 0, 0, 0};
  const int runs = 100000;
  for (int s = 0; s < runs; ++s) {
    auto t = PartitionTree::build(4, static_cast<std::uint64_t>(s) + 1);
    ++counts[t.node(t.node(t.root()).left).end];
  }
  for (int d = 1; d <= 3; ++d) CHECK(std::abs(counts[d] / double(runs) - 1.0 / 3) <= 0.01);
}

TEST_CASE("dump lists every window") {
  auto t = PartitionTree::build(8, 2);
  std::ostringstream out;
  t.dump(out);
  int lines = 0;
  for (char c : out.str()) lines += c == '\n';
  CHECK(lines == 15);
  CHECK(out.str().rfind("[1,8] split=", 0) == 0);
}
