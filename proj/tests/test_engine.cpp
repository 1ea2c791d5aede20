#include <doctest.h>

#include <algorithm>
#include <random>

#include "corpus.hpp"
#include "lfpkit/engine.hpp"

using namespace lfpkit;
using namespace lfpkit::testing;

namespace {

InductiveDefinition two_rule_phi(const Lattice& P2) {
  return InductiveDefinition(
      P2, {{*P2.find("p"), P2.bottom()}, {*P2.find("q"), *P2.find("p")}});
}

// subset-minimum of an enumeration, if one exists
const GenSubset* minimum_of(const std::vector<GenSubset>& sets) {
  for (const auto& Y : sets) {
    bool below_all = std::all_of(sets.begin(), sets.end(), [&](const auto& Z) {
      return Y.subset_of(Z);
    });
    if (below_all) return &Y;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("lfp_stages on the running examples") {
  auto P2 = Lattice::powerset(2);
  InductiveDefinition empty(P2, {});
  auto r0 = lfp_stages(empty);
  CHECK(r0.least.none());
  CHECK(r0.trace.stages.size() == 1);

  auto phi = two_rule_phi(P2);
  auto r = lfp_stages(phi);
  REQUIRE(r.trace.stages.size() == 3);
  CHECK(r.trace.stages[0].none());
  CHECK(r.trace.stages[1].count() == 1);
  CHECK(r.trace.stages[2].count() == 2);
  CHECK(r.least.count() == 2);
  CHECK(P2.join_of(r.least) == P2.top());

  auto C3 = Lattice::chain(3);
  InductiveDefinition never(C3, {{2, 1}});
  auto rc = lfp_stages(never);
  CHECK(rc.least == C3.down(0));  // rule never fires
}

TEST_CASE("stage discipline") {
  std::mt19937 rng(29);
  for (const auto& [label, Lp] : corpus()) {
    CAPTURE(label);
    for (int iter = 0; iter < 40; ++iter) {
      auto phi = random_phi(*Lp, rng, 16);
      auto r = lfp_stages(phi);
      CHECK(r.trace.stages.size() <= Lp->generator_count() + 1);
      CHECK(r.trace.converged_at == r.trace.stages.size() - 1);
      CHECK(r.trace.stages.front() == Lp->down(Lp->bottom()));
      for (std::size_t i = 0; i < r.trace.stages.size(); ++i) {
        CHECK(is_c_closed(*Lp, r.trace.stages[i]));
        if (i + 1 < r.trace.stages.size()) {
          CHECK(r.trace.stages[i].subset_of(r.trace.stages[i + 1]));
          CHECK(r.trace.stages[i] != r.trace.stages[i + 1]);
        }
      }
      CHECK(is_phi_closed(phi, r.least));
    }
  }
}

TEST_CASE("enumeration of phi-closed subsets") {
  auto C2 = Lattice::chain(2);
  InductiveDefinition emptyc(C2, {});
  auto listc = enumerate_phi_closed(emptyc);
  REQUIRE(listc.size() == 2);  // {0} and {0,1}; bottom generator forces 0
  CHECK(listc[0] == GenSubset::from_mask(2, 0b01));
  CHECK(listc[1] == GenSubset::from_mask(2, 0b11));

  auto P2 = Lattice::powerset(2);
  InductiveDefinition emptyp(P2, {});
  CHECK(enumerate_phi_closed(emptyp).size() == 4);  // all down-sets

  // full B is always listed
  std::mt19937 rng(31);
  for (const auto& [label, Lp] : corpus()) {
    CAPTURE(label);
    auto phi = random_phi(*Lp, rng, 8);
    auto list = enumerate_phi_closed(phi);
    GenSubset full(Lp->generator_count());
    for (std::size_t i = 0; i < full.width(); ++i) full.set(i);
    CHECK(std::find(list.begin(), list.end(), full) != list.end());
  }
}

TEST_CASE("minimality against the brute-force enumeration") {
  std::mt19937 rng(37);
  for (const auto& [label, Lp] : corpus()) {
    CAPTURE(label);
    for (int iter = 0; iter < 30; ++iter) {
      auto phi = random_phi(*Lp, rng, 16);
      auto list = enumerate_phi_closed(phi);
      auto* least = minimum_of(list);
      REQUIRE(least != nullptr);
      CHECK(lfp_stages(phi).least == *least);
    }
  }
}

TEST_CASE("lfp_aid fixed point laws and oracle agreement") {
  std::mt19937 rng(41);
  for (const auto& [label, Lp] : corpus()) {
    CAPTURE(label);
    for (int iter = 0; iter < 25; ++iter) {
      auto G = random_monotone_map(*Lp, rng);
      const ElemId p = lfp_aid(G);
      CHECK(G(p) == p);
      for (ElemId x = 0; x < Lp->size(); ++x)
        if (G(x) == x) CHECK(Lp->leq(p, x));
      CHECK(p == oracle_tarski(G));
      CHECK(p == oracle_kleene(G));
    }
  }
}

TEST_CASE("oracle examples") {
  auto P2 = Lattice::powerset(2);
  std::vector<ElemId> ident(P2.size());
  for (ElemId x = 0; x < P2.size(); ++x) ident[x] = x;
  auto G = MonotoneMap::certify(P2, ident);
  CHECK(lfp_aid(G) == P2.bottom());
  CHECK(oracle_tarski(G) == P2.bottom());
  CHECK(oracle_kleene(G) == P2.bottom());

  auto to_top = MonotoneMap::certify(P2, std::vector<ElemId>(P2.size(), P2.top()));
  CHECK(oracle_tarski(to_top) == P2.top());
  CHECK(oracle_kleene(to_top) == P2.top());

  const ElemId c = *P2.find("p");
  auto to_c = MonotoneMap::certify(P2, std::vector<ElemId>(P2.size(), c));
  CHECK(lfp_aid(to_c) == c);

  // divisors(12): x -> lcm(x, 2)
  auto D = Lattice::divisors(12);
  std::vector<ElemId> lcm2(D.size());
  for (ElemId x = 0; x < D.size(); ++x) lcm2[x] = D.join2(x, *D.find("2"));
  auto G2 = MonotoneMap::certify(D, lcm2);
  CHECK(D.name(oracle_tarski(G2)) == "2");
  CHECK(D.name(lfp_aid(G2)) == "2");

  // the two-rule phi seen through its gamma
  auto phi = two_rule_phi(P2);
  std::vector<ElemId> table(P2.size());
  for (ElemId a = 0; a < P2.size(); ++a) table[a] = gamma(phi, a);
  auto Gphi = MonotoneMap::certify(P2, table);
  CHECK(lfp_aid(Gphi) == P2.top());
  CHECK(oracle_tarski(Gphi) == P2.top());
  CHECK(oracle_kleene(Gphi) == P2.top());
}

TEST_CASE("oracle size guard and certification guard") {
  auto big = Lattice::chain((std::size_t{1} << 16) + 1);
  std::vector<ElemId> ident(big.size());
  for (ElemId x = 0; x < big.size(); ++x) ident[x] = x;
  auto Gbig = MonotoneMap::unchecked(big, std::move(ident));
  // refused by size before certification even enters the picture
  CHECK_THROWS_AS(oracle_tarski(Gbig), SizeLimitExceeded);

  auto C2 = Lattice::chain(2);
  auto uncert = MonotoneMap::unchecked(C2, {0, 1});
  CHECK_THROWS_AS(oracle_kleene(uncert), NotCertified);
  CHECK_THROWS_AS(lfp_aid(uncert), NotCertified);
}

TEST_CASE("correspondence report") {
  auto P2 = Lattice::powerset(2);
  InductiveDefinition empty(P2, {});
  auto rep = correspondence(empty);
  CHECK(rep.closed_count == 4);
  CHECK(rep.prefix_count == 4);
  CHECK(rep.bijection());
  CHECK(rep.pairs.size() == 4);
  for (const auto& [Y, a] : rep.pairs) {
    CHECK(P2.down(a) == Y);
    CHECK(P2.join_of(Y) == a);
  }

  std::mt19937 rng(43);
  for (const auto& [label, Lp] : corpus()) {
    CAPTURE(label);
    for (int iter = 0; iter < 20; ++iter) {
      auto phi = random_phi(*Lp, rng, 12);
      auto r = correspondence(phi);
      CHECK(r.bijection());
      CHECK(r.closed_count == r.prefix_count);
    }
  }
}
