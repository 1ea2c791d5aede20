#ifndef LFPKIT_AID_HPP
#define LFPKIT_AID_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "lfpkit/errors.hpp"
#include "lfpkit/gen_subset.hpp"
#include "lfpkit/lattice.hpp"

namespace lfpkit {

/// An abstract inductive definition: a finite set of rules (b, a) with b a
/// generator and a an arbitrary element, read "b is derivable once
/// everything below a is".
class InductiveDefinition {
 public:
  struct Rule {
    ElemId head;     // a generator
    ElemId premise;  // any element
    auto operator<=>(const Rule&) const = default;
  };

  InductiveDefinition(const Lattice& L, std::vector<Rule> rules)
      : lattice_(&L), rules_(std::move(rules)) {
    for (const auto& r : rules_) {
      if (r.head >= L.size() || r.premise >= L.size())
        throw ValidationError("rule references an element out of range");
      if (!L.generator_pos(r.head))
        throw ValidationError("rule head '" + L.name(r.head) +
                              "' is not a generator");
    }
    std::sort(rules_.begin(), rules_.end());
    rules_.erase(std::unique(rules_.begin(), rules_.end()), rules_.end());
  }

  const Lattice& lattice() const { return *lattice_; }
  const std::vector<Rule>& rules() const { return rules_; }

 private:
  const Lattice* lattice_;
  std::vector<Rule> rules_;
};

/// c_L Y for a finite subset Y of B: the generators below join(Y).
inline GenSubset c_closure(const Lattice& L, const GenSubset& Y) {
  return L.down(L.join_of(Y));
}

inline bool is_c_closed(const Lattice& L, const GenSubset& Y) {
  return c_closure(L, Y) == Y;
}

/// Y is Phi-closed when it is c_L-closed and every rule whose premise
/// down-set lies inside Y has its head in Y.
inline bool is_phi_closed(const InductiveDefinition& phi, const GenSubset& Y) {
  const Lattice& L = phi.lattice();
  if (!is_c_closed(L, Y)) return false;
  for (const auto& r : phi.rules())
    if (L.down(r.premise).subset_of(Y) && !Y.test(*L.generator_pos(r.head)))
      return false;
  return true;
}

/// The monotone operator of phi: join of the heads of rules whose premise
/// sits below a.
inline ElemId gamma(const InductiveDefinition& phi, ElemId a) {
  const Lattice& L = phi.lattice();
  ElemId acc = L.bottom();
  for (const auto& r : phi.rules())
    if (L.leq(r.premise, a)) acc = L.join2(acc, r.head);
  return acc;
}

/// The class-level operator on subsets of B: c_L of the heads whose
/// premise down-set lies inside Y.
inline GenSubset bar_gamma(const InductiveDefinition& phi, const GenSubset& Y) {
  const Lattice& L = phi.lattice();
  GenSubset heads(L.generator_count());
  for (const auto& r : phi.rules())
    if (L.down(r.premise).subset_of(Y)) heads.set(*L.generator_pos(r.head));
  return c_closure(L, heads);
}

/// A total map L -> L with exhaustively verified monotonicity.
class MonotoneMap {
 public:
  static MonotoneMap certify(const Lattice& L, std::vector<ElemId> table) {
    if (table.size() != L.size())
      throw ValidationError("map table is not total");
    for (ElemId v : table)
      if (v >= L.size()) throw ValidationError("map value out of range");
    for (ElemId x = 0; x < L.size(); ++x)
      for (ElemId y = 0; y < L.size(); ++y)
        if (L.leq(x, y) && !L.leq(table[x], table[y]))
          throw ValidationError("map is not monotone: " + L.name(x) +
                                " <= " + L.name(y) + " but " +
                                L.name(table[x]) + " !<= " + L.name(table[y]));
    return MonotoneMap(L, std::move(table), true);
  }

  /// Skips the monotonicity pass; operations requiring certification throw.
  static MonotoneMap unchecked(const Lattice& L, std::vector<ElemId> table) {
    return MonotoneMap(L, std::move(table), false);
  }

  const Lattice& lattice() const { return *lattice_; }
  bool certified() const { return certified_; }
  void require_certified() const {
    if (!certified_) throw NotCertified();
  }
  ElemId operator()(ElemId x) const { return table_[x]; }
  const std::vector<ElemId>& table() const { return table_; }

 private:
  MonotoneMap(const Lattice& L, std::vector<ElemId> table, bool certified)
      : lattice_(&L), table_(std::move(table)), certified_(certified) {}

  const Lattice* lattice_;
  std::vector<ElemId> table_;
  bool certified_;
};

/// The inductive definition of a monotone map G: all pairs (b, a) with
/// b <= G(a). Its gamma reproduces G exactly.
inline InductiveDefinition phi_of_gamma(
    const MonotoneMap& G, std::size_t max_pairs = std::size_t{1} << 20) {
  G.require_certified();
  const Lattice& L = G.lattice();
  if (L.generator_count() * L.size() > max_pairs)
    throw SizeLimitExceeded("phi_of_gamma materialization over threshold");
  std::vector<InductiveDefinition::Rule> rules;
  for (ElemId a = 0; a < L.size(); ++a) {
    const ElemId ga = G(a);
    for (ElemId b : L.generators())
      if (L.leq(b, ga)) rules.push_back({b, a});
  }
  return InductiveDefinition(L, std::move(rules));
}

/// Locality witness: for each a, the set of heads with a rule premise
/// below a. Finite definitions are local unconditionally; this keeps the
/// comprehension executable rather than assumed.
struct LocalityWitness {
  bool local = true;
  std::vector<GenSubset> heads_below;  // indexed by element id
};

inline LocalityWitness is_local(const InductiveDefinition& phi) {
  const Lattice& L = phi.lattice();
  LocalityWitness w;
  w.heads_below.assign(L.size(), GenSubset(L.generator_count()));
  for (ElemId a = 0; a < L.size(); ++a)
    for (const auto& r : phi.rules())
      if (L.leq(r.premise, a)) w.heads_below[a].set(*L.generator_pos(r.head));
  return w;
}

/// Bound metadata: |down(a)| per premise element. Any set of at least
/// max_downset_size elements bounds the definition.
struct BoundInfo {
  std::size_t max_downset_size = 0;
  std::map<ElemId, std::size_t> per_element;
};

inline BoundInfo bound_of(const InductiveDefinition& phi) {
  const Lattice& L = phi.lattice();
  BoundInfo info;
  for (const auto& r : phi.rules()) {
    const std::size_t sz = L.down(r.premise).count();
    info.per_element[r.premise] = sz;
    info.max_downset_size = std::max(info.max_downset_size, sz);
  }
  return info;
}

}  // namespace lfpkit

#endif  // LFPKIT_AID_HPP
