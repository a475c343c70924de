#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace ample {

/// Fixed-universe bitset used for arrow subsets and idempotent supports.
/// The universe size is set at construction; operations assume equal sizes.
class Bits {
 public:
  Bits() = default;
  explicit Bits(int universe) : n_(universe), w_((universe + 63) / 64, 0) {}

  int universe() const { return n_; }

  bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  void set(int i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(int i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  bool empty() const {
    for (auto x : w_)
      if (x) return false;
    return true;
  }

  int count() const {
    int c = 0;
    for (auto x : w_) c += __builtin_popcountll(x);
    return c;
  }

  Bits operator&(const Bits& o) const {
    Bits r(n_);
    for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] & o.w_[i];
    return r;
  }
  Bits operator|(const Bits& o) const {
    Bits r(n_);
    for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] | o.w_[i];
    return r;
  }
  /// Set difference.
  Bits operator-(const Bits& o) const {
    Bits r(n_);
    for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] = w_[i] & ~o.w_[i];
    return r;
  }

  bool subset_of(const Bits& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }

  bool operator==(const Bits& o) const { return n_ == o.n_ && w_ == o.w_; }

  /// Lexicographic on the word representation; used for canonical orderings.
  auto operator<=>(const Bits& o) const {
    if (auto c = n_ <=> o.n_; c != 0) return c;
    return w_ <=> o.w_;
  }

  std::vector<int> elements() const {
    std::vector<int> out;
    for (int i = 0; i < n_; ++i)
      if (test(i)) out.push_back(i);
    return out;
  }

  static Bits of(int universe, const std::vector<int>& elems) {
    Bits b(universe);
    for (int e : elems) b.set(e);
    return b;
  }

  std::size_t hash() const {
    std::size_t h = std::hash<int>{}(n_);
    for (auto x : w_) h = h * 1099511628211ULL + std::hash<std::uint64_t>{}(x);
    return h;
  }

 private:
  int n_ = 0;
  std::vector<std::uint64_t> w_;
};

struct BitsHash {
  std::size_t operator()(const Bits& b) const { return b.hash(); }
};

}  // namespace ample
