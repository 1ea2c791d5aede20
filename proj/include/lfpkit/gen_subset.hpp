#ifndef LFPKIT_GEN_SUBSET_HPP
#define LFPKIT_GEN_SUBSET_HPP

#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace lfpkit {

/// A subset of the generating set B of a lattice, as a fixed-width bit
/// vector indexed by generator position. All set algebra is positionwise.
class GenSubset {
 public:
  GenSubset() = default;
  explicit GenSubset(std::size_t width)
      : width_(width), blocks_((width + 63) / 64, 0) {}

  std::size_t width() const { return width_; }

  bool test(std::size_t i) const {
    assert(i < width_);
    return (blocks_[i / 64] >> (i % 64)) & 1u;
  }
  void set(std::size_t i) {
    assert(i < width_);
    blocks_[i / 64] |= std::uint64_t{1} << (i % 64);
  }
  void reset(std::size_t i) {
    assert(i < width_);
    blocks_[i / 64] &= ~(std::uint64_t{1} << (i % 64));
  }

  std::size_t count() const {
    std::size_t n = 0;
    for (auto b : blocks_) n += std::popcount(b);
    return n;
  }
  bool none() const {
    for (auto b : blocks_) if (b) return false;
    return true;
  }

  bool subset_of(const GenSubset& o) const {
    assert(width_ == o.width_);
    for (std::size_t i = 0; i < blocks_.size(); ++i)
      if (blocks_[i] & ~o.blocks_[i]) return false;
    return true;
  }

  GenSubset& operator|=(const GenSubset& o) {
    assert(width_ == o.width_);
    for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] |= o.blocks_[i];
    return *this;
  }
  GenSubset& operator&=(const GenSubset& o) {
    assert(width_ == o.width_);
    for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] &= o.blocks_[i];
    return *this;
  }

  GenSubset united(const GenSubset& o) const {
    GenSubset r = *this;
    r |= o;
    return r;
  }
  GenSubset intersected(const GenSubset& o) const {
    GenSubset r = *this;
    r &= o;
    return r;
  }

  friend bool operator==(const GenSubset& a, const GenSubset& b) {
    return a.width_ == b.width_ && a.blocks_ == b.blocks_;
  }
  friend bool operator!=(const GenSubset& a, const GenSubset& b) {
    return !(a == b);
  }

  /// Numeric comparison, position 0 least significant. Used for the
  /// deterministic (cardinality, bit order) enumeration ordering.
  friend bool numerically_less(const GenSubset& a, const GenSubset& b) {
    assert(a.width_ == b.width_);
    for (std::size_t i = a.blocks_.size(); i-- > 0;)
      if (a.blocks_[i] != b.blocks_[i]) return a.blocks_[i] < b.blocks_[i];
    return false;
  }

  /// Positions of the set bits, ascending.
  std::vector<std::size_t> positions() const {
    std::vector<std::size_t> out;
    for (std::size_t blk = 0; blk < blocks_.size(); ++blk) {
      std::uint64_t b = blocks_[blk];
      while (b) {
        out.push_back(blk * 64 + std::countr_zero(b));
        b &= b - 1;
      }
    }
    return out;
  }

  /// Builds a subset of width `width` from the low bits of `mask`.
  /// Only valid for width <= 64; handy for exhaustive subset scans.
  static GenSubset from_mask(std::size_t width, std::uint64_t mask) {
    assert(width <= 64);
    GenSubset s(width);
    if (width) s.blocks_[0] = mask;
    return s;
  }
  std::uint64_t to_mask() const {
    assert(width_ <= 64);
    return blocks_.empty() ? 0 : blocks_[0];
  }

 private:
  std::size_t width_ = 0;
  std::vector<std::uint64_t> blocks_;
};

/// Ordering used for enumeration output: cardinality, then bit order.
inline bool enumeration_less(const GenSubset& a, const GenSubset& b) {
  std::size_t ca = a.count(), cb = b.count();
  if (ca != cb) return ca < cb;
  return numerically_less(a, b);
}

}  // namespace lfpkit

#endif  // LFPKIT_GEN_SUBSET_HPP
