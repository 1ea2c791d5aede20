#ifndef LFPKIT_ENGINE_HPP
#define LFPKIT_ENGINE_HPP

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "lfpkit/aid.hpp"
#include "lfpkit/errors.hpp"
#include "lfpkit/gen_subset.hpp"
#include "lfpkit/lattice.hpp"

namespace lfpkit {

/// Ascending stage sequence T_0 subset T_1 subset ... up to convergence.
/// Every stage is c_L-closed; at most |B| strict expansions occur.
struct StageTrace {
  std::vector<GenSubset> stages;
  std::size_t converged_at = 0;  // index of the first stable stage
};

struct LfpResult {
  GenSubset least;  // the smallest Phi-closed subset of B
  StageTrace trace;
};

/// Computes the least Phi-closed subset by iterating
/// T_{n+1} = c_L(T_n union bar_gamma(T_n)) from T_0 = c_L(empty).
inline LfpResult lfp_stages(const InductiveDefinition& phi) {
  const Lattice& L = phi.lattice();
  StageTrace trace;
  GenSubset current = c_closure(L, GenSubset(L.generator_count()));
  trace.stages.push_back(current);
  for (;;) {
    GenSubset next = c_closure(L, current.united(bar_gamma(phi, current)));
    if (next == current) break;
    trace.stages.push_back(next);
    current = std::move(next);
  }
  trace.converged_at = trace.stages.size() - 1;
  return {current, std::move(trace)};
}

/// Least fixed point of G as the join of the least Phi_G-closed set.
inline ElemId lfp_aid(const MonotoneMap& G,
                      std::size_t max_pairs = std::size_t{1} << 20) {
  G.require_certified();
  auto phi = phi_of_gamma(G, max_pairs);
  return G.lattice().join_of(lfp_stages(phi).least);
}

/// Tarski oracle: meet of all prefix points {x | G(x) <= x}.
inline ElemId oracle_tarski(const MonotoneMap& G,
                            std::size_t max_elements = std::size_t{1} << 16) {
  const Lattice& L = G.lattice();
  if (L.size() > max_elements)
    throw SizeLimitExceeded("oracle_tarski carrier over threshold");
  G.require_certified();
  std::vector<ElemId> prefix;
  for (ElemId x = 0; x < L.size(); ++x)
    if (L.leq(G(x), x)) prefix.push_back(x);
  // nonempty: top is always a prefix point
  return L.meet(prefix);
}

/// Kleene oracle: ascending iteration bottom, G(bottom), ... to stability.
inline ElemId oracle_kleene(const MonotoneMap& G) {
  G.require_certified();
  const Lattice& L = G.lattice();
  ElemId x = L.bottom();
  for (std::size_t step = 0; step <= L.size(); ++step) {
    ElemId nx = G(x);
    if (nx == x) return x;
    x = nx;
  }
  throw ValidationError("iteration failed to stabilize");  // unreachable for monotone G
}

/// Brute-force oracle: every Phi-closed subset of B, sorted by cardinality
/// then bit order. 2^|B| scan.
inline std::vector<GenSubset> enumerate_phi_closed(
    const InductiveDefinition& phi, std::size_t max_generators = 16) {
  const Lattice& L = phi.lattice();
  const std::size_t nb = L.generator_count();
  if (nb > max_generators)
    throw SizeLimitExceeded("enumerate_phi_closed limited to " +
                            std::to_string(max_generators) + " generators");
  std::vector<GenSubset> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << nb); ++m) {
    GenSubset Y = GenSubset::from_mask(nb, m);
    if (is_phi_closed(phi, Y)) out.push_back(std::move(Y));
  }
  std::sort(out.begin(), out.end(), enumeration_less);
  return out;
}

/// One matched pair of the Prop-5-style correspondence.
struct CorrespondencePair {
  GenSubset closed_set;
  ElemId prefix_point;
};

/// Report pairing each Phi-closed set Y with join(Y) and each prefix point
/// a of gamma with down(a); certifies both round trips and equal counts.
struct CorrespondenceReport {
  std::vector<CorrespondencePair> pairs;
  std::size_t closed_count = 0;
  std::size_t prefix_count = 0;
  bool round_trips_ok = false;
  bool bijection() const {
    return round_trips_ok && closed_count == prefix_count;
  }
};

inline CorrespondenceReport correspondence(const InductiveDefinition& phi,
                                           std::size_t max_generators = 16) {
  const Lattice& L = phi.lattice();
  CorrespondenceReport rep;

  auto closed = enumerate_phi_closed(phi, max_generators);
  rep.closed_count = closed.size();

  std::vector<ElemId> prefix;
  for (ElemId a = 0; a < L.size(); ++a)
    if (L.leq(gamma(phi, a), a)) prefix.push_back(a);
  rep.prefix_count = prefix.size();

  rep.round_trips_ok = true;
  for (const auto& Y : closed) {
    const ElemId a = L.join_of(Y);
    // forward map lands on a prefix point and its down-set returns Y
    if (!L.leq(gamma(phi, a), a) || L.down(a) != Y) {
      rep.round_trips_ok = false;
      continue;
    }
    rep.pairs.push_back({Y, a});
  }
  for (ElemId a : prefix) {
    const GenSubset Y = L.down(a);
    if (L.join_of(Y) != a || !is_phi_closed(phi, Y)) rep.round_trips_ok = false;
  }
  return rep;
}

}  // namespace lfpkit

#endif  // LFPKIT_ENGINE_HPP
