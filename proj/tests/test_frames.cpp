#include <doctest.h>

#include <algorithm>
#include <set>

#include "kripke/catalog.hpp"
#include "kripke/error.hpp"
#include "kripke/frame.hpp"
#include "oracles.hpp"

using namespace kripke;

namespace {

// Canonical form by brute force over all permutations; an independent
// isomorphism oracle for posets of at most 5 points.
std::vector<PointSet> brute_canonical(const Frame& f) {
  std::vector<Point> perm(f.size());
  for (Point i = 0; i < f.size(); ++i) perm[i] = i;
  std::vector<PointSet> best;
  do {
    std::vector<PointSet> up(f.size(), 0);
    for (Point a = 0; a < f.size(); ++a)
      for (Point b = 0; b < f.size(); ++b)
        if (f.leq(a, b)) up[perm[a]] |= bit(perm[b]);
    if (best.empty() || up < best) best = up;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// All partial orders on n labelled points, up to isomorphism, by closing
// every relation that is a subset of the strict upper triangle... not enough
// on its own, so closure is taken over every relation on n points.
std::size_t brute_poset_count(std::size_t n, bool rooted) {
  std::set<std::vector<PointSet>> seen;
  const std::size_t pairs = n * n;
  for (std::uint64_t rel = 0; rel < (std::uint64_t{1} << pairs); ++rel) {
    std::vector<PointSet> up(n);
    for (Point a = 0; a < n; ++a) {
      up[a] = bit(a);
      for (Point b = 0; b < n; ++b)
        if (rel >> (a * n + b) & 1) up[a] |= bit(b);
    }
    // Transitive closure, then reject cycles.
    for (std::size_t round = 0; round < n; ++round)
      for (Point a = 0; a < n; ++a)
        for (Point b : members(up[a])) up[a] |= up[b];
    bool antisym = true;
    for (Point a = 0; a < n; ++a)
      for (Point b = 0; b < n; ++b)
        if (a != b && contains(up[a], b) && contains(up[b], a)) antisym = false;
    if (!antisym) continue;
    const Frame f = Frame::from_up_sets(up);
    if (rooted && !root(f)) continue;
    seen.insert(brute_canonical(f));
  }
  return seen.size();
}

}  // namespace

TEST_CASE("from_covers") {
  const Frame one = Frame::from_covers(1, {});
  CHECK(one.size() == 1);
  const Frame two = Frame::from_covers(2, {{0, 1}});
  CHECK(two == Frame::chain(2));
  CHECK_THROWS_AS(Frame::from_covers(2, {{0, 1}, {1, 0}}), FrameError);
  CHECK_THROWS_AS(Frame::from_covers(0, {}), FrameError);
  CHECK_THROWS_AS(Frame::from_covers(2, {{0, 2}}), FrameError);
  CHECK_THROWS_AS(Frame::from_covers(65, {}), FrameError);
  CHECK_NOTHROW(Frame::antichain(64));
  // Transitive edges given as covers are dropped from the Hasse diagram.
  const Frame t = Frame::from_covers(3, {{0, 1}, {1, 2}, {0, 2}});
  CHECK(t.covers().size() == 2);
  CHECK(t.leq(0, 2));
  CHECK_THROWS_AS(Frame::from_up_sets({0b11, 0b01}), FrameError);
}

TEST_CASE("labels default to indices") {
  const Frame f = Frame::chain(3);
  CHECK(f.label(2) == "2");
  const Frame g = Frame::from_covers(2, {{0, 1}}, {"a", "b"});
  CHECK(g.label(1) == "b");
}

TEST_CASE("upsets agree with brute-force enumeration") {
  CHECK(upsets(Frame::chain(2)) == std::vector<Upset>{0b00, 0b10, 0b11});
  CHECK(upsets(Frame::antichain(2)).size() == 4);
  CHECK(upsets(Frame::fork(3)).size() == 9);
  for (std::size_t n = 1; n <= 5; ++n)
    for (const Frame& f : enumerate_posets(n, false)) CHECK(upsets(f) == oracle::upsets(f));
  for (const auto& e : Catalog::shipped().entries())
    if (e.frame.size() <= 12) CHECK(upsets(e.frame) == oracle::upsets(e.frame));
  CHECK_THROWS_AS(upsets(Frame::antichain(30), 1000), ResourceError);
}

TEST_CASE("up and down closures") {
  const Frame f = Frame::fork(2);
  CHECK(f.up_closure(bit(0)) == f.all());
  CHECK(f.down_closure(bit(1)) == (bit(0) | bit(1)));
  CHECK(f.is_upset(bit(1) | bit(2)));
  CHECK(!f.is_upset(bit(0)));
}

TEST_CASE("generated subframes") {
  CHECK(generated_subframe(Frame::chain(2), 1).frame.size() == 1);
  CHECK(generated_subframe(Frame::fork(3), 2).frame.size() == 1);
  const Generated g = generated_subframe(comb(3), comb_trunk(2));
  CHECK(g.frame.size() == 4);
  CHECK(g.origin.front() == comb_trunk(2));
  CHECK(root(g.frame) == Point{0});
  for (Point i = 0; i < g.frame.size(); ++i)
    for (Point j = 0; j < g.frame.size(); ++j) CHECK(g.frame.leq(i, j) == comb(3).leq(g.origin[i], g.origin[j]));
}

TEST_CASE("shape statistics") {
  CHECK(!root(Frame::antichain(2)));
  CHECK(width(Frame::antichain(2)) == 2);
  for (std::size_t k = 1; k <= 5; ++k) {
    CHECK(height(Frame::chain(k)) == k);
    CHECK(width(Frame::chain(k)) == 1);
    CHECK(branching(Frame::chain(k)) == (k == 1 ? 0 : 1));
  }
  CHECK(branching(comb(4)) == 2);
  CHECK(width(comb(4)) == 4);  // the four teeth
  CHECK(branching(Frame::fork(3)) == 3);
}

TEST_CASE("comb") {
  CHECK(comb(1) == Frame::chain(2));
  const Frame c3 = comb(3);
  CHECK(c3.size() == 6);
  CHECK(root(c3) == comb_trunk(1));
  CHECK(c3.maximal() == (bit(comb_tooth(1)) | bit(comb_tooth(2)) | bit(comb_tooth(3))));
  CHECK(c3.covers_of(comb_trunk(3)) == bit(comb_tooth(3)));
  for (std::size_t k = 1; k <= 6; ++k) {
    CHECK(comb(k).size() == 2 * k);
    CHECK(height(comb(k)) == k + 1);
  }
  CHECK(comb(5).label(comb_tooth(2)) == "u2");
}

TEST_CASE("fine ladder") {
  for (std::size_t k = 1; k <= 9; ++k) {
    const Frame f = fine_ladder(k);
    CHECK(f.maximal() == (bit(kFineP) | bit(kFineQ)));
    CHECK(f.label(kFineP) == "m1");
    CHECK(f.label(kFineQ) == "m2");
    CHECK(f.size() == 2 + 3 * (k + 2) + (k + 1));
  }
  CHECK_THROWS_AS(fine_ladder(20), FrameError);
  const auto& cat = Catalog::shipped();
  for (int k : cat.indices("fine")) CHECK(isomorphic(cat.member("fine", k).frame, fine_ladder(k)));
}

TEST_CASE("isomorphism") {
  CHECK(isomorphic(Frame::fork(2), Frame::from_covers(3, {{2, 0}, {2, 1}})));
  CHECK(!isomorphic(Frame::fork(2), Frame::chain(3)));
  CHECK(!isomorphic(Frame::chain(2), Frame::chain(3)));
}

TEST_CASE("DOT export round-trips") {
  const std::string dot = dot_export(Frame::chain(2));
  CHECK(std::count(dot.begin(), dot.end(), '>') == 1);
  const std::string d2 = dot_export(comb(2));
  CHECK(std::count(d2.begin(), d2.end(), '>') == 3);
  for (const auto& e : Catalog::shipped().entries()) CHECK(frame_from_dot(dot_export(e.frame)) == e.frame);
  const std::string ann = dot_export(Frame::chain(2), {{1, "p0"}});
  CHECK(ann.find("p0") != std::string::npos);
}

TEST_CASE("poset enumeration matches known counts and a brute-force oracle") {
  const std::size_t all[] = {1, 2, 5, 16, 63, 318};
  const std::size_t rooted[] = {1, 1, 2, 5, 16, 63};
  for (std::size_t n = 1; n <= 6; ++n) {
    CHECK(enumerate_posets(n, false).size() == all[n - 1]);
    CHECK(enumerate_posets(n, true).size() == rooted[n - 1]);
  }
  for (std::size_t n = 1; n <= 4; ++n) {
    CHECK(enumerate_posets(n, false).size() == brute_poset_count(n, false));
    CHECK(enumerate_posets(n, true).size() == brute_poset_count(n, true));
  }
  // Pairwise non-isomorphic, naturally labelled.
  const auto five = enumerate_posets(5, false);
  std::set<std::vector<PointSet>> forms;
  for (const Frame& f : five) {
    forms.insert(brute_canonical(f));
    for (Point a = 0; a < f.size(); ++a)
      for (Point b = 0; b < f.size(); ++b)
        if (f.leq(a, b)) CHECK(a <= b);
  }
  CHECK(forms.size() == five.size());
  CHECK_THROWS_AS(enumerate_posets(7, false), ResourceError);
}

TEST_CASE("shipped catalog") {
  const auto& cat = Catalog::shipped();
  CHECK(cat.indices("F") == std::vector<int>{0, 1, 2, 3});
  const Frame f0 = family_frame(0);
  const Frame expected = Frame::from_covers(6, {{0, 1}, {1, 2}, {2, 3}, {1, 4}, {4, 5}});
  CHECK(f0 == expected);
  for (int n : cat.indices("F")) {
    const Frame f = family_frame(n);
    CHECK(root(f));
    CHECK(branching(f) <= 2);
  }
  for (int k : cat.indices("fine")) {
    const auto& e = cat.member("fine", k);
    CHECK(popcount(e.frame.maximal()) == 2);
    CHECK(e.designated.size() == 2);
    for (Point d : e.designated) CHECK(e.frame.is_upset(bit(d)));
    CHECK(fine_truncation(k) == e.frame);
  }
  CHECK_THROWS_AS(cat.get("nope"), CatalogError);
  CHECK_THROWS_AS(family_frame(99), CatalogError);
  // JSON round trip.
  const Catalog again = Catalog::from_json(cat.to_json());
  REQUIRE(again.entries().size() == cat.entries().size());
  for (std::size_t i = 0; i < cat.entries().size(); ++i) CHECK(again.entries()[i].frame == cat.entries()[i].frame);
}

TEST_CASE("catalog validation errors") {
  using nlohmann::json;
  CHECK_THROWS_AS(Catalog::from_json(json::object()), CatalogError);
  const json dup = json::array({{{"name", "a"}, {"points", 1}, {"covers", json::array()}},
                                {{"name", "a"}, {"points", 1}, {"covers", json::array()}}});
  CHECK_THROWS_AS(Catalog::from_json(dup), CatalogError);
  const json bad_designated =
      json::array({{{"name", "a"}, {"points", 2}, {"covers", {{0, 1}}}, {"meta", {{"designated", {0}}}}}});
  CHECK_THROWS_AS(Catalog::from_json(bad_designated), CatalogError);
  const json cyclic = json::array({{{"name", "a"}, {"points", 2}, {"covers", {{0, 1}, {1, 0}}}}});
  CHECK_THROWS_AS(Catalog::from_json(cyclic), Error);
}
