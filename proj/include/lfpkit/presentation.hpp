#ifndef LFPKIT_PRESENTATION_HPP
#define LFPKIT_PRESENTATION_HPP

#include <cstdint>
#include <vector>

#include "lfpkit/errors.hpp"
#include "lfpkit/gen_subset.hpp"
#include "lfpkit/lattice.hpp"

namespace lfpkit {

/// A set-presentation D of the lattice: for each generator b, the family
/// covers[pos(b)] of subset-minimal W with b <= join(W). It characterizes
/// the order against arbitrary joins: b <= join(U) iff some W in covers(b)
/// is contained in U.
struct Presentation {
  std::vector<std::vector<GenSubset>> covers;  // indexed by generator position
};

/// Exhaustive 2^|B| scan; minimal covers suffice because the covering
/// predicate is monotone in W.
inline Presentation set_presentation(const Lattice& L,
                                     std::size_t max_generators = 16) {
  const std::size_t nb = L.generator_count();
  if (nb > max_generators)
    throw SizeLimitExceeded("set_presentation limited to " +
                            std::to_string(max_generators) + " generators");

  // join of every subset of B, low bit = generator 0
  const std::uint64_t subsets = std::uint64_t{1} << nb;
  std::vector<ElemId> join_of(subsets);
  join_of[0] = L.bottom();
  for (std::uint64_t m = 1; m < subsets; ++m) {
    const unsigned low = std::countr_zero(m);
    join_of[m] = L.join2(join_of[m & (m - 1)], L.generator(low));
  }

  Presentation P;
  P.covers.resize(nb);
  std::vector<char> hit(subsets);
  for (std::size_t pos = 0; pos < nb; ++pos) {
    const ElemId b = L.generator(pos);
    for (std::uint64_t m = 0; m < subsets; ++m)
      hit[m] = L.leq(b, join_of[m]);
    for (std::uint64_t m = 0; m < subsets; ++m) {
      if (!hit[m]) continue;
      bool minimal = true;
      for (std::uint64_t rest = m; rest; rest &= rest - 1)
        if (hit[m & ~(rest & -rest)]) { minimal = false; break; }
      if (minimal) P.covers[pos].push_back(GenSubset::from_mask(nb, m));
    }
  }
  return P;
}

}  // namespace lfpkit

#endif  // LFPKIT_PRESENTATION_HPP
