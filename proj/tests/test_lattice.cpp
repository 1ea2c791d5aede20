#include <doctest.h>

#include <algorithm>
#include <random>

#include "corpus.hpp"
#include "lfpkit/lattice.hpp"
#include "lfpkit/presentation.hpp"

using namespace lfpkit;
using namespace lfpkit::testing;

TEST_CASE("singleton lattice") {
  auto L = Lattice::from_hasse({"a"}, {});
  CHECK(L.size() == 1);
  CHECK(L.bottom() == L.top());
  CHECK(L.name(L.bottom()) == "a");
}

TEST_CASE("diamond joins") {
  auto L = diamond();
  auto b = *L.find("b"), c = *L.find("c");
  CHECK(L.join2(b, c) == *L.find("d"));
  CHECK(L.bottom() == *L.find("a"));
  CHECK(L.top() == *L.find("d"));
}

TEST_CASE("pentagon accepted, two-top poset rejected") {
  CHECK_NOTHROW(pentagon());
  // two maximal elements with no common join
  CHECK_THROWS_AS(Lattice::from_hasse({"a", "b", "c", "d", "e"},
                                      {{"a", "b"},
                                       {"a", "c"},
                                       {"b", "d"},
                                       {"c", "d"},
                                       {"a", "e"}}),
                  NotALattice);
}

TEST_CASE("cycle and missing bottom are rejected") {
  CHECK_THROWS_AS(
      Lattice::from_hasse({"a", "b"}, {{"a", "b"}, {"b", "a"}}), CycleDetected);
  // two incomparable minimal elements
  CHECK_THROWS_AS(
      Lattice::from_hasse({"a", "b", "c"}, {{"a", "c"}, {"b", "c"}}), NoBottom);
}

TEST_CASE("standard families") {
  auto P2 = Lattice::powerset(2);
  CHECK(P2.size() == 4);
  CHECK(P2.down(*P2.find("{p,q}")).count() == 2);
  CHECK(P2.down(P2.bottom()).none());

  auto C1 = Lattice::chain(1);
  CHECK(C1.bottom() == C1.top());

  auto D12 = Lattice::divisors(12);
  CHECK(D12.size() == 6);
  CHECK(D12.name(D12.join2(*D12.find("4"), *D12.find("6"))) == "12");
  CHECK_THROWS_AS(Lattice::powerset(17), SizeLimitExceeded);
}

TEST_CASE("divisors joins against an lcm oracle") {
  auto L = Lattice::divisors(60);
  auto value = [&](ElemId x) { return std::stoull(L.name(x)); };
  for (ElemId x = 0; x < L.size(); ++x)
    for (ElemId y = 0; y < L.size(); ++y) {
      auto a = value(x), b = value(y);
      CHECK(value(L.join2(x, y)) == a / std::gcd(a, b) * b);
    }
  CHECK(L.name(L.join({*L.find("2"), *L.find("3")})) == "6");
}

TEST_CASE("empty join is bottom") {
  for (const auto& [label, L] : corpus()) {
    CAPTURE(label);
    CHECK(L->join({}) == L->bottom());
  }
}

TEST_CASE("order laws hold exhaustively on the corpus") {
  for (const auto& [label, Lp] : corpus()) {
    CAPTURE(label);
    const auto& L = *Lp;
    for (ElemId x = 0; x < L.size(); ++x) {
      CHECK(L.leq(x, x));
      for (ElemId y = 0; y < L.size(); ++y) {
        if (L.leq(x, y) && L.leq(y, x)) CHECK(x == y);
        for (ElemId z = 0; z < L.size(); ++z)
          if (L.leq(x, y) && L.leq(y, z)) CHECK(L.leq(x, z));
      }
    }
  }
}

TEST_CASE("join2 matches the leq-only brute oracle") {
  for (const auto& [label, Lp] : corpus()) {
    CAPTURE(label);
    const auto& L = *Lp;
    for (ElemId x = 0; x < L.size(); ++x)
      for (ElemId y = 0; y < L.size(); ++y)
        CHECK(L.join2(x, y) == brute_join(L, {x, y}));
  }
}

TEST_CASE("join universal property on random subsets") {
  std::mt19937 rng(7);
  for (const auto& [label, Lp] : corpus()) {
    CAPTURE(label);
    const auto& L = *Lp;
    std::uniform_int_distribution<ElemId> elem(0, static_cast<ElemId>(L.size() - 1));
    for (int iter = 0; iter < 50; ++iter) {
      std::vector<ElemId> xs;
      for (int k = 0; k < iter % 5; ++k) xs.push_back(elem(rng));
      const ElemId j = L.join(xs);
      for (ElemId x : xs) CHECK(L.leq(x, j));
      for (ElemId u = 0; u < L.size(); ++u) {
        bool upper = true;
        for (ElemId x : xs) upper = upper && L.leq(x, u);
        if (upper) CHECK(L.leq(j, u));
      }
    }
  }
}

TEST_CASE("down-sets and set-generation") {
  auto P2 = Lattice::powerset(2);
  CHECK(P2.down(P2.bottom()).none());
  auto top_down = P2.down(P2.top());
  CHECK(top_down.count() == 2);

  auto C3 = Lattice::chain(3);
  auto d1 = C3.down(1);
  CHECK(d1.test(0));
  CHECK(d1.test(1));
  CHECK(!d1.test(2));

  for (const auto& [label, Lp] : corpus()) {
    CAPTURE(label);
    for (ElemId x = 0; x < Lp->size(); ++x)
      CHECK(Lp->join_of(Lp->down(x)) == x);
    CHECK(validate_generators(*Lp).ok);
  }
}

TEST_CASE("bad generating set is reported") {
  // chain 0 < 1 < 2 with only the top as generator: 1 != join(empty)
  CHECK_THROWS_AS(
      Lattice::from_hasse({"0", "1", "2"}, {{"0", "1"}, {"1", "2"}}, {"2"}),
      BadGenerators);
  auto probe = Lattice::from_hasse({"0", "1"}, {{"0", "1"}});
  CHECK(validate_generators(probe).ok);
}

TEST_CASE("product structure") {
  auto L = Lattice::product(std::make_shared<const Lattice>(Lattice::chain(3)),
                            std::make_shared<const Lattice>(Lattice::powerset(2)));
  CHECK(L.size() == 12);
  CHECK(L.name(L.bottom()) == "(0,{})");
  CHECK(L.name(L.top()) == "(2,{p,q})");
  CHECK(validate_generators(L).ok);
  CHECK_THROWS_AS(
      Lattice::product(std::make_shared<const Lattice>(Lattice::chain(512)),
                       std::make_shared<const Lattice>(Lattice::chain(512))),
      SizeLimitExceeded);
}

TEST_CASE("set presentation examples") {
  auto C2 = Lattice::chain(2);
  auto P = set_presentation(C2);
  REQUIRE(P.covers.size() == 2);
  // bottom is covered by the empty set
  REQUIRE(P.covers[0].size() == 1);
  CHECK(P.covers[0][0].none());
  REQUIRE(P.covers[1].size() == 1);
  CHECK(P.covers[1][0] == GenSubset::from_mask(2, 0b10));

  auto P2 = Lattice::powerset(2);
  auto PP = set_presentation(P2);
  auto p_pos = *P2.generator_pos(*P2.find("p"));
  REQUIRE(PP.covers[p_pos].size() == 1);
  CHECK(PP.covers[p_pos][0].count() == 1);
  CHECK(PP.covers[p_pos][0].test(p_pos));

  auto S = Lattice::from_hasse({"a"}, {});
  auto PS = set_presentation(S);
  REQUIRE(PS.covers[0].size() == 1);
  CHECK(PS.covers[0][0].none());
}

TEST_CASE("presentation soundness and completeness, exhaustive") {
  for (const auto& [label, Lp] : corpus()) {
    const auto& L = *Lp;
    if (L.generator_count() > 10) continue;
    CAPTURE(label);
    auto P = set_presentation(L);
    const std::uint64_t subsets = std::uint64_t{1} << L.generator_count();
    for (std::size_t pos = 0; pos < L.generator_count(); ++pos) {
      const ElemId b = L.generator(pos);
      for (std::uint64_t m = 0; m < subsets; ++m) {
        auto U = GenSubset::from_mask(L.generator_count(), m);
        const bool below = L.leq(b, L.join_of(U));
        const bool covered =
            std::any_of(P.covers[pos].begin(), P.covers[pos].end(),
                        [&](const GenSubset& W) { return W.subset_of(U); });
        CHECK(below == covered);
      }
    }
  }
}

TEST_CASE("presentation size guard") {
  auto L = Lattice::chain(20);
  CHECK_THROWS_AS(set_presentation(L), SizeLimitExceeded);
}
