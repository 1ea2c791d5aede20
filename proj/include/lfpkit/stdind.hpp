#ifndef LFPKIT_STDIND_HPP
#define LFPKIT_STDIND_HPP

#include <algorithm>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lfpkit/aid.hpp"
#include "lfpkit/errors.hpp"
#include "lfpkit/lattice.hpp"

namespace lfpkit {

/// A standard inductive definition on a finite carrier of named atoms:
/// rules (a, X) meaning "a once all of X".
class StandardInductiveDefinition {
 public:
  struct Rule {
    std::size_t head;                 // atom index
    std::vector<std::size_t> premise; // sorted atom indices
    auto operator<=>(const Rule&) const = default;
  };

  StandardInductiveDefinition(std::vector<std::string> atoms,
                              std::vector<Rule> rules)
      : atoms_(std::move(atoms)), rules_(std::move(rules)) {
    std::set<std::string> seen(atoms_.begin(), atoms_.end());
    if (seen.size() != atoms_.size())
      throw ValidationError("duplicate atom names");
    for (auto& r : rules_) {
      if (r.head >= atoms_.size())
        throw ValidationError("rule head out of range");
      std::sort(r.premise.begin(), r.premise.end());
      r.premise.erase(std::unique(r.premise.begin(), r.premise.end()),
                      r.premise.end());
      for (std::size_t x : r.premise)
        if (x >= atoms_.size())
          throw ValidationError("rule premise out of range");
    }
    std::sort(rules_.begin(), rules_.end());
    rules_.erase(std::unique(rules_.begin(), rules_.end()), rules_.end());
  }

  const std::vector<std::string>& atoms() const { return atoms_; }
  const std::vector<Rule>& rules() const { return rules_; }

 private:
  std::vector<std::string> atoms_;
  std::vector<Rule> rules_;
};

/// Smallest subset of the carrier closed under all rules; plain rounds to
/// stability, at most |S| of them.
inline std::set<std::size_t> std_lfp(const StandardInductiveDefinition& phi) {
  std::set<std::size_t> acc;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& r : phi.rules()) {
      if (acc.contains(r.head)) continue;
      bool fires = std::all_of(r.premise.begin(), r.premise.end(),
                               [&](std::size_t x) { return acc.contains(x); });
      if (fires) {
        acc.insert(r.head);
        changed = true;
      }
    }
  }
  return acc;
}

/// A standard definition rendered as an abstract one on the powerset of
/// its carrier, atoms becoming singleton generators.
struct EmbeddedDefinition {
  std::shared_ptr<const Lattice> lattice;
  InductiveDefinition phi;
};

inline EmbeddedDefinition embed_std(const StandardInductiveDefinition& phi) {
  if (phi.atoms().size() > 16)
    throw SizeLimitExceeded("embedding limited to 16 atoms");
  auto L = std::make_shared<const Lattice>(
      Lattice::powerset(static_cast<unsigned>(phi.atoms().size()), phi.atoms()));
  std::vector<InductiveDefinition::Rule> rules;
  for (const auto& r : phi.rules()) {
    ElemId premise = 0;
    for (std::size_t x : r.premise) premise |= ElemId{1} << x;
    rules.push_back({ElemId{1} << r.head, premise});
  }
  InductiveDefinition abs(*L, std::move(rules));
  return {std::move(L), std::move(abs)};
}

}  // namespace lfpkit

#endif  // LFPKIT_STDIND_HPP
