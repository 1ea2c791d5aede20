#ifndef LFPKIT_LATTICE_HPP
#define LFPKIT_LATTICE_HPP

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lfpkit/errors.hpp"
#include "lfpkit/gen_subset.hpp"

namespace lfpkit {

using ElemId = std::uint32_t;
inline constexpr ElemId kNoElem = ~ElemId{0};

/// A finite set-generated complete lattice. Elements are dense ids
/// 0..|L|-1 with unique display names; a designated generating set B
/// satisfies x = join(down(x)) for every x.
///
/// Standard families (powerset, chain, product) answer order and join
/// queries in closed form so that e.g. powerset(16) never materializes
/// a 2^16 x 2^16 table; explicitly built lattices carry full tables.
class Lattice {
 public:
  std::size_t size() const { return names_.size(); }
  const std::string& name(ElemId x) const { return names_[x]; }
  ElemId bottom() const { return bottom_; }
  ElemId top() const { return top_; }
  const std::vector<ElemId>& generators() const { return generators_; }
  std::size_t generator_count() const { return generators_.size(); }
  ElemId generator(std::size_t pos) const { return generators_[pos]; }

  /// Position of x in the generator list, if x is a generator.
  std::optional<std::size_t> generator_pos(ElemId x) const {
    auto it = gen_pos_.find(x);
    if (it == gen_pos_.end()) return std::nullopt;
    return it->second;
  }

  std::optional<ElemId> find(const std::string& nm) const {
    auto it = by_name_.find(nm);
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
  }

  bool leq(ElemId x, ElemId y) const {
    switch (kind_) {
      case Kind::Powerset:
        return (x & ~y) == 0;
      case Kind::Chain:
        return x <= y;
      case Kind::Product:
        return left_->leq(x / static_cast<ElemId>(right_->size()),
                          y / static_cast<ElemId>(right_->size())) &&
               right_->leq(x % static_cast<ElemId>(right_->size()),
                           y % static_cast<ElemId>(right_->size()));
      case Kind::Table:
        return (leq_rows_[x][y / 64] >> (y % 64)) & 1u;
    }
    return false;
  }

  ElemId join2(ElemId x, ElemId y) const {
    switch (kind_) {
      case Kind::Powerset:
        return x | y;
      case Kind::Chain:
        return std::max(x, y);
      case Kind::Product: {
        auto rs = static_cast<ElemId>(right_->size());
        return left_->join2(x / rs, y / rs) * rs + right_->join2(x % rs, y % rs);
      }
      case Kind::Table:
        return join_table_[static_cast<std::size_t>(x) * size() + y];
    }
    return kNoElem;
  }

  /// Join of an arbitrary finite set of elements; join of nothing is bottom.
  ElemId join(std::span<const ElemId> xs) const {
    ElemId acc = bottom_;
    for (ElemId x : xs) acc = join2(acc, x);
    return acc;
  }
  ElemId join(std::initializer_list<ElemId> xs) const {
    return join(std::span<const ElemId>(xs.begin(), xs.size()));
  }

  /// Join of a subset of the generating set.
  ElemId join_of(const GenSubset& Y) const {
    ElemId acc = bottom_;
    for (std::size_t pos : Y.positions()) acc = join2(acc, generators_[pos]);
    return acc;
  }

  /// Meet as the join of the common lower bounds (finite completeness).
  ElemId meet(std::span<const ElemId> xs) const {
    ElemId acc = bottom_;
    for (ElemId z = 0; z < size(); ++z) {
      bool below_all = true;
      for (ElemId x : xs)
        if (!leq(z, x)) { below_all = false; break; }
      if (below_all) acc = join2(acc, z);
    }
    return acc;
  }

  /// The generators below-or-equal x.
  GenSubset down(ElemId x) const {
    if (!down_cache_.empty()) return down_cache_[x];
    return compute_down(x);
  }

  // ---- builders ----------------------------------------------------------

  /// Builds an explicit lattice from element names, a cover relation and an
  /// optional generating set (defaults to all elements).
  static Lattice from_hasse(const std::vector<std::string>& names,
                            const std::vector<std::pair<std::string, std::string>>& covers,
                            const std::vector<std::string>& gens = {});

  /// Powerset of an n-element set ordered by inclusion, generators the
  /// singletons. Element ids are the subset masks. n <= 16.
  static Lattice powerset(unsigned n, std::vector<std::string> atoms = {});

  /// Total order 0 < 1 < ... < n-1, generators all elements.
  static Lattice chain(std::size_t n);

  /// Divisors of n ordered by divisibility; join is lcm, generators all.
  static Lattice divisors(std::uint64_t n);

  /// Componentwise product. |L1|*|L2| <= 2^16. Generators are the pairs
  /// (coordinate-generator, bottom) and (bottom, coordinate-generator).
  static Lattice product(std::shared_ptr<const Lattice> a,
                         std::shared_ptr<const Lattice> b);

 private:
  enum class Kind { Table, Powerset, Chain, Product };

  GenSubset compute_down(ElemId x) const {
    GenSubset s(generators_.size());
    for (std::size_t pos = 0; pos < generators_.size(); ++pos)
      if (leq(generators_[pos], x)) s.set(pos);
    return s;
  }

  void index_names() {
    for (ElemId i = 0; i < names_.size(); ++i) {
      if (!by_name_.emplace(names_[i], i).second)
        throw ValidationError("duplicate element name '" + names_[i] + "'");
    }
  }
  void index_generators() {
    for (std::size_t pos = 0; pos < generators_.size(); ++pos)
      gen_pos_.emplace(generators_[pos], pos);
  }

  // Down-sets are precomputed unless the lattice is too large for the
  // cache to be worth |L|*|B| bits.
  void maybe_cache_downs() {
    if (size() * generators_.size() > (std::size_t{1} << 26)) return;
    down_cache_.reserve(size());
    for (ElemId x = 0; x < size(); ++x) down_cache_.push_back(compute_down(x));
  }

  // Checks x = join(down(x)) for every x. Closed-form families satisfy
  // this by construction, so very large instances skip the pass.
  void validate_generation() const {
    if (kind_ != Kind::Table && size() > (std::size_t{1} << 12)) return;
    for (ElemId x = 0; x < size(); ++x)
      if (join_of(down(x)) != x) throw BadGenerators(names_[x]);
  }

  Kind kind_ = Kind::Table;
  std::vector<std::string> names_;
  std::unordered_map<std::string, ElemId> by_name_;
  ElemId bottom_ = 0, top_ = 0;
  std::vector<ElemId> generators_;
  std::unordered_map<ElemId, std::size_t> gen_pos_;
  std::vector<GenSubset> down_cache_;
  // Table kind:
  std::vector<std::vector<std::uint64_t>> leq_rows_;
  std::vector<ElemId> join_table_;
  // Product kind:
  std::shared_ptr<const Lattice> left_, right_;
};

/// Result of checking x = join(down(x)) over the whole carrier.
struct GeneratorReport {
  bool ok = true;
  std::vector<ElemId> violators;
};

inline GeneratorReport validate_generators(const Lattice& L) {
  GeneratorReport r;
  for (ElemId x = 0; x < L.size(); ++x)
    if (L.join_of(L.down(x)) != x) {
      r.ok = false;
      r.violators.push_back(x);
    }
  return r;
}

// ---- builder implementations ---------------------------------------------

namespace detail {

/// Fills leq rows / join table / bottom / top from a leq predicate.
/// Throws NotALattice on a pair without a unique least upper bound and
/// NoBottom when no global least element exists.
template <class Leq>
inline void build_tables(std::size_t n, const std::vector<std::string>& names,
                         Leq leq, std::vector<std::vector<std::uint64_t>>& rows,
                         std::vector<ElemId>& join_table, ElemId& bottom,
                         ElemId& top) {
  rows.assign(n, std::vector<std::uint64_t>((n + 63) / 64, 0));
  for (ElemId x = 0; x < n; ++x)
    for (ElemId y = 0; y < n; ++y)
      if (leq(x, y)) rows[x][y / 64] |= std::uint64_t{1} << (y % 64);

  auto le = [&](ElemId x, ElemId y) {
    return (rows[x][y / 64] >> (y % 64)) & 1u;
  };

  bottom = kNoElem;
  for (ElemId x = 0; x < n; ++x) {
    bool least = true;
    for (ElemId y = 0; y < n; ++y)
      if (!le(x, y)) { least = false; break; }
    if (least) { bottom = x; break; }
  }
  if (bottom == kNoElem) throw NoBottom();

  join_table.assign(n * n, kNoElem);
  for (ElemId x = 0; x < n; ++x)
    for (ElemId y = x; y < n; ++y) {
      ElemId lub = kNoElem;
      for (ElemId u = 0; u < n; ++u) {
        if (!le(x, u) || !le(y, u)) continue;
        if (lub == kNoElem || le(u, lub)) lub = u;
      }
      if (lub == kNoElem || !le(x, lub) || !le(y, lub))
        throw NotALattice(names[x], names[y]);
      // least among the upper bounds, not just minimal
      for (ElemId u = 0; u < n; ++u)
        if (le(x, u) && le(y, u) && !le(lub, u))
          throw NotALattice(names[x], names[y]);
      join_table[std::size_t{x} * n + y] = lub;
      join_table[std::size_t{y} * n + x] = lub;
    }

  top = kNoElem;
  for (ElemId x = 0; x < n; ++x) {
    bool greatest = true;
    for (ElemId y = 0; y < n; ++y)
      if (!le(y, x)) { greatest = false; break; }
    if (greatest) { top = x; break; }
  }
  // a finite lattice with bottom and all joins has a top
  if (top == kNoElem) throw NotALattice(names[0], names[0]);
}

}  // namespace detail

inline Lattice Lattice::from_hasse(
    const std::vector<std::string>& names,
    const std::vector<std::pair<std::string, std::string>>& covers,
    const std::vector<std::string>& gens) {
  if (names.empty()) throw ValidationError("lattice needs at least one element");
  Lattice L;
  L.kind_ = Kind::Table;
  L.names_ = names;
  L.index_names();
  const std::size_t n = names.size();

  std::vector<std::vector<ElemId>> succ(n);
  for (const auto& [lo, hi] : covers) {
    auto a = L.find(lo), b = L.find(hi);
    if (!a || !b)
      throw ValidationError("cover mentions unknown element '" +
                            (a ? hi : lo) + "'");
    succ[*a].push_back(*b);
  }

  // Kahn topological pass doubles as the cycle check.
  std::vector<std::size_t> indeg(n, 0);
  for (const auto& s : succ)
    for (ElemId v : s) ++indeg[v];
  std::vector<ElemId> queue;
  for (ElemId v = 0; v < n; ++v)
    if (indeg[v] == 0) queue.push_back(v);
  std::size_t seen = 0;
  std::vector<ElemId> topo;
  while (!queue.empty()) {
    ElemId v = queue.back();
    queue.pop_back();
    topo.push_back(v);
    ++seen;
    for (ElemId w : succ[v])
      if (--indeg[w] == 0) queue.push_back(w);
  }
  if (seen != n) throw CycleDetected();

  // reflexive-transitive closure of the cover relation
  std::vector<std::vector<std::uint64_t>> reach(
      n, std::vector<std::uint64_t>((n + 63) / 64, 0));
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    ElemId v = *it;
    reach[v][v / 64] |= std::uint64_t{1} << (v % 64);
    for (ElemId w : succ[v])
      for (std::size_t blk = 0; blk < reach[v].size(); ++blk)
        reach[v][blk] |= reach[w][blk];
  }
  auto leq = [&](ElemId x, ElemId y) {
    return ((reach[x][y / 64] >> (y % 64)) & 1u) != 0;
  };

  detail::build_tables(n, names, leq, L.leq_rows_, L.join_table_, L.bottom_,
                       L.top_);

  if (gens.empty()) {
    L.generators_.resize(n);
    std::iota(L.generators_.begin(), L.generators_.end(), 0);
  } else {
    for (const auto& g : gens) {
      auto id = L.find(g);
      if (!id) throw ValidationError("unknown generator '" + g + "'");
      L.generators_.push_back(*id);
    }
  }
  L.index_generators();
  L.maybe_cache_downs();
  L.validate_generation();
  return L;
}

inline Lattice Lattice::powerset(unsigned n, std::vector<std::string> atoms) {
  if (n > 16) throw SizeLimitExceeded("powerset carrier limited to 16 atoms");
  if (atoms.empty()) {
    for (unsigned i = 0; i < n; ++i) {
      if (n <= 11)
        atoms.push_back(std::string(1, static_cast<char>('p' + i)));
      else
        atoms.push_back("a" + std::to_string(i));
    }
  }
  if (atoms.size() != n)
    throw ValidationError("powerset expects exactly n atom names");

  Lattice L;
  L.kind_ = Kind::Powerset;
  const std::size_t card = std::size_t{1} << n;
  L.names_.reserve(card);
  for (std::size_t mask = 0; mask < card; ++mask) {
    if (std::popcount(mask) == 1) {
      L.names_.push_back(atoms[std::countr_zero(mask)]);
      continue;
    }
    std::string nm = "{";
    bool first = true;
    for (unsigned i = 0; i < n; ++i)
      if (mask >> i & 1) {
        if (!first) nm += ',';
        nm += atoms[i];
        first = false;
      }
    nm += '}';
    L.names_.push_back(std::move(nm));
  }
  L.index_names();
  L.bottom_ = 0;
  L.top_ = static_cast<ElemId>(card - 1);
  for (unsigned i = 0; i < n; ++i)
    L.generators_.push_back(ElemId{1} << i);
  L.index_generators();
  L.maybe_cache_downs();
  L.validate_generation();
  return L;
}

inline Lattice Lattice::chain(std::size_t n) {
  if (n < 1) throw ValidationError("chain needs at least one element");
  if (n > (std::size_t{1} << 20))
    throw SizeLimitExceeded("chain carrier limited to 2^20 elements");
  Lattice L;
  L.kind_ = Kind::Chain;
  L.names_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) L.names_.push_back(std::to_string(i));
  L.index_names();
  L.bottom_ = 0;
  L.top_ = static_cast<ElemId>(n - 1);
  L.generators_.resize(n);
  std::iota(L.generators_.begin(), L.generators_.end(), 0);
  L.index_generators();
  L.maybe_cache_downs();
  L.validate_generation();
  return L;
}

inline Lattice Lattice::divisors(std::uint64_t n) {
  if (n < 1) throw ValidationError("divisors needs n >= 1");
  std::vector<std::uint64_t> divs;
  for (std::uint64_t d = 1; d <= n; ++d)
    if (n % d == 0) divs.push_back(d);

  Lattice L;
  L.kind_ = Kind::Table;
  for (auto d : divs) L.names_.push_back(std::to_string(d));
  L.index_names();
  auto leq = [&](ElemId x, ElemId y) { return divs[y] % divs[x] == 0; };
  detail::build_tables(divs.size(), L.names_, leq, L.leq_rows_, L.join_table_,
                       L.bottom_, L.top_);
  L.generators_.resize(divs.size());
  std::iota(L.generators_.begin(), L.generators_.end(), 0);
  L.index_generators();
  L.maybe_cache_downs();
  L.validate_generation();
  return L;
}

inline Lattice Lattice::product(std::shared_ptr<const Lattice> a,
                                std::shared_ptr<const Lattice> b) {
  const std::size_t n = a->size() * b->size();
  if (n > (std::size_t{1} << 16))
    throw SizeLimitExceeded("product carrier limited to 2^16 elements");
  Lattice L;
  L.kind_ = Kind::Product;
  L.left_ = std::move(a);
  L.right_ = std::move(b);
  const auto rs = static_cast<ElemId>(L.right_->size());
  L.names_.reserve(n);
  for (ElemId i = 0; i < L.left_->size(); ++i)
    for (ElemId j = 0; j < rs; ++j)
      L.names_.push_back("(" + L.left_->name(i) + "," + L.right_->name(j) + ")");
  L.index_names();
  L.bottom_ = L.left_->bottom() * rs + L.right_->bottom();
  L.top_ = L.left_->top() * rs + L.right_->top();
  auto add_gen = [&L](ElemId g) {
    if (!L.gen_pos_.contains(g)) {
      L.gen_pos_.emplace(g, L.generators_.size());
      L.generators_.push_back(g);
    }
  };
  for (ElemId g : L.left_->generators()) add_gen(g * rs + L.right_->bottom());
  for (ElemId g : L.right_->generators()) add_gen(L.left_->bottom() * rs + g);
  L.maybe_cache_downs();
  L.validate_generation();
  return L;
}

}  // namespace lfpkit

#endif  // LFPKIT_LATTICE_HPP
