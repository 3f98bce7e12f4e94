#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "pud/core_model.hpp"
#include "pud/io.hpp"

using namespace pud;

namespace {

Prediction pred(Element e, Kind k, Day d) {
  Prediction p;
  p.event = Event{e, k, {}};
  p.day = d;
  return p;
}

RealEvent real(Day d, Element e, Kind k) { return RealEvent{d, Event{e, k, {}}}; }

// Minimum over all pairings of the shorter list into the longer one.
std::int64_t brute_matching(std::vector<Day> a, std::vector<Day> b, Day T) {
  if (a.size() > b.size()) std::swap(a, b);
  std::sort(b.begin(), b.end());
  std::int64_t best = INT64_MAX;
  do {
    std::int64_t cost = static_cast<std::int64_t>(b.size() - a.size()) * T;
    for (std::size_t i = 0; i < a.size(); ++i) cost += std::abs(a[i] - b[i]);
    best = std::min(best, cost);
  } while (std::next_permutation(b.begin(), b.end()));
  return best;
}

}  // namespace

TEST_CASE("l1 error of exact predictions is zero") {
  std::vector<Prediction> p{pred(1, Kind::Insert, 2), pred(1, Kind::Delete, 5)};
  std::vector<RealEvent> r{real(2, 1, Kind::Insert), real(5, 1, Kind::Delete)};
  CHECK(l1_error(p, r, 10) == 0);
}

TEST_CASE("an unrealized prediction costs T") {
  std::vector<Prediction> p{pred(7, Kind::Insert, 40)};
  CHECK(l1_error(p, {}, 100) == 100);
  CHECK(l1_error({}, {real(3, 7, Kind::Insert)}, 100) == 100);
}

TEST_CASE("duplicate events pair in sorted order") {
  std::vector<Prediction> p{pred(4, Kind::Delete, 5), pred(4, Kind::Delete, 5)};
  std::vector<RealEvent> r{real(3, 4, Kind::Delete), real(9, 4, Kind::Delete)};
  CHECK(l1_error(p, r, 20) == 6);
  CHECK(l1_error_single_key({5, 5}, {3, 9}, 20) == brute_matching({5, 5}, {3, 9}, 20));
}

TEST_CASE("padding entries are ignored") {
  std::vector<Prediction> p{pred(1, Kind::Insert, 3), pred(-1, Kind::Insert, kEndOfHorizon)};
  CHECK(l1_error(p, {real(3, 1, Kind::Insert)}, 10) == 0);
}

TEST_CASE("sorted pairing matches exhaustive search and is symmetric") {
  std::mt19937_64 rng(11);
  const Day T = 30;
  std::uniform_int_distribution<Day> day(1, T);
  std::uniform_int_distribution<int> count(0, 6);
  for (int it = 0; it < 400; ++it) {
    std::vector<Day> a(count(rng)), b(count(rng));
    for (auto& d : a) d = day(rng);
    for (auto& d : b) d = day(rng);
    const auto got = l1_error_single_key(a, b, T);
    CHECK(got == brute_matching(a, b, T));
    CHECK(got == l1_error_single_key(b, a, T));
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    CHECK((got == 0) == (a == b));
  }
}

TEST_CASE("bundle validation") {
  PredictionBundle b1{1, 1, {pred(1, Kind::Insert, 1), pred(2, Kind::Insert, 3)}};
  CHECK(validate_bundle_sequence({b1}).ok);

  PredictionBundle b2{2, 2, {pred(1, Kind::Insert, 1), pred(3, Kind::Insert, 4), pred(4, Kind::Insert, 5),
                             pred(5, Kind::Insert, 6)}};
  auto missing = validate_bundle_sequence({b1, b2});
  CHECK_FALSE(missing.ok);
  CHECK(missing.bundle == 2);

  PredictionBundle b3{2, 10, {pred(1, Kind::Insert, 1), pred(2, Kind::Insert, 3), pred(3, Kind::Insert, 7),
                              pred(4, Kind::Insert, 12)}};
  auto backdated = validate_bundle_sequence({b1, b3});
  CHECK_FALSE(backdated.ok);
  CHECK(backdated.bundle == 2);

  PredictionBundle b4{2, 2, {pred(1, Kind::Insert, 1), pred(2, Kind::Insert, 3), pred(3, Kind::Insert, 4)}};
  CHECK_FALSE(validate_bundle_sequence({b1, b4}).ok);

  PredictionBundle padded{2, 2, {pred(1, Kind::Insert, 1), pred(2, Kind::Insert, 3), pred(3, Kind::Insert, 4),
                                 pred(-1, Kind::Insert, kEndOfHorizon)}};
  CHECK(validate_bundle_sequence({b1, padded}).ok);
}

TEST_CASE("prediction and stream files round trip") {
  std::vector<Prediction> ps{pred(3, Kind::Insert, 4), pred(3, Kind::Delete, kEndOfHorizon)};
  ps[0].event.payload = {1, 2, 9};
  std::stringstream s;
  write_predictions(s, ps);
  auto back = read_predictions(s);
  REQUIRE(back.size() == 2);
  CHECK(back[0].event.payload == Payload{1, 2, 9});
  CHECK(back[1].padding());

  std::stringstream st("# T=4\n1 5 I 1 2 3\n2 5 D\n");
  auto rs = read_stream(st);
  REQUIRE(rs.size() == 2);
  CHECK(rs[0].event.payload == Payload{1, 2, 3});
  CHECK(rs[1].event.kind == Kind::Delete);
}

TEST_CASE("format errors carry line numbers") {
  std::stringstream bad("1 5 I\n1 6 I\n");
  CHECK_THROWS_WITH_AS(read_stream(bad), doctest::Contains("line 2"), InputError);
  std::stringstream kind("1 5 X\n");
  CHECK_THROWS_AS(read_stream(kind), InputError);
  std::stringstream day("1 I zero\n");
  CHECK_THROWS_AS(read_predictions(day), InputError);
}
