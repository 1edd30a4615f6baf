#pragma once

// Linearization coefficients g(m,n;k) of P_m P_n = sum_k g(m,n;k) P_k and
// the induced translation / convolution on finitely supported sequences
// over N_0 weighted by the Haar function h.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "qhyper/recurrence.hpp"
#include "qhyper/scalar.hpp"

namespace qhyper {

/// Coefficients g(m,n;k) for k = first ... first + values.size() - 1,
/// where first = |m - n| and the last index is m + n.
struct LinearizationRow {
  std::size_t first = 0;
  std::vector<Rational> values;

  std::size_t last() const { return first + values.size() - 1; }
  /// g(m,n;k), zero outside the band.
  Rational at(std::size_t k) const;
};

/// Memoized linearization coefficients. Rows are stored for m <= n and
/// served symmetrically. Column n (all rows with larger index n) is built
/// by induction on m and guarded by its own lock.
class LinearizationTable {
 public:
  explicit LinearizationTable(CoeffProvider provider);

  const CoeffProvider& provider() const noexcept { return provider_; }
  const LinearizationRow& row(std::size_t m, std::size_t n) const;
  Rational g(std::size_t m, std::size_t n, std::size_t k) const { return row(m, n).at(k); }

 private:
  struct State;
  CoeffProvider provider_;
  std::shared_ptr<State> state_;
};

/// g(m, n; .) computed with a fresh table.
LinearizationRow linearize(const CoeffProvider& provider, std::size_t m, std::size_t n);

struct NegativeCoefficient {
  std::size_t m;
  std::size_t n;
  std::size_t k;
  Rational value;
};

/// Checks g(m,n;k) >= 0 for all m <= n <= max_index. Returns the
/// lexicographically first (m, n, k) violation, or nullopt if none.
std::optional<NegativeCoefficient> check_property_P(const LinearizationTable& table,
                                                    std::size_t max_index);
std::optional<NegativeCoefficient> check_property_P(const CoeffProvider& provider,
                                                    std::size_t max_index);

/// Bundle of everything derived from one polynomial family: coefficients,
/// Haar weights, linearization table and, for little q-Legendre, the
/// measure moments. Cheap to copy; copies share memo tables.
class Hypergroup {
 public:
  explicit Hypergroup(CoeffProvider provider);
  static Hypergroup little_q_legendre(const QParam& q);

  const CoeffProvider& provider() const noexcept { return provider_; }
  const HaarWeights& haar() const noexcept { return haar_; }
  const LinearizationTable& linearization() const noexcept { return table_; }
  const MonomialTable& monomials() const noexcept { return monomials_; }
  /// Throws std::logic_error unless the family is little q-Legendre.
  const MuMoments& moments() const;
  const QParam& q() const { return provider_.q(); }
  bool is_little_q_legendre() const noexcept {
    return provider_.family() == Family::LittleQLegendre;
  }

  Rational h(std::size_t n) const { return haar_(n); }

 private:
  CoeffProvider provider_;
  HaarWeights haar_;
  LinearizationTable table_;
  MonomialTable monomials_;
  std::optional<MuMoments> moments_;
};

/// Finitely supported f : N_0 -> Q, an element of l^1(h). Only nonzero
/// values are stored.
class HSeq {
 public:
  explicit HSeq(Hypergroup hg) : hg_(std::move(hg)) {}
  HSeq(Hypergroup hg, std::map<std::size_t, Rational> values);

  static HSeq delta(const Hypergroup& hg, std::size_t k);
  /// epsilon_k = delta_k / h(k).
  static HSeq epsilon(const Hypergroup& hg, std::size_t k);
  /// values[i] placed at index offset + i.
  static HSeq from_dense(const Hypergroup& hg, std::span<const Rational> values,
                         std::size_t offset = 0);

  const Hypergroup& hypergroup() const noexcept { return hg_; }
  const std::map<std::size_t, Rational>& values() const noexcept { return values_; }
  Rational operator[](std::size_t k) const;
  std::vector<std::size_t> support() const;
  bool empty() const noexcept { return values_.empty(); }
  /// Smallest / largest support index; both throw std::logic_error when empty.
  std::size_t min_index() const;
  std::size_t max_index() const;

  HSeq& operator+=(const HSeq& o);
  HSeq& operator-=(const HSeq& o);
  HSeq& operator*=(const Rational& s);
  friend HSeq operator+(HSeq a, const HSeq& b) { return a += b; }
  friend HSeq operator-(HSeq a, const HSeq& b) { return a -= b; }
  friend HSeq operator*(HSeq a, const Rational& s) { return a *= s; }
  friend HSeq operator*(const Rational& s, HSeq a) { return a *= s; }

  friend bool operator==(const HSeq& a, const HSeq& b) { return a.values_ == b.values_; }

 private:
  Hypergroup hg_;
  std::map<std::size_t, Rational> values_;
};

/// T_n f(m) = sum_{k=|m-n|}^{m+n} g(m,n;k) f(k).
HSeq translate(const HSeq& f, std::size_t n);

/// (f * g)(n) = sum_k T_n f(k) g(k) h(k) at a single index.
Rational convolve_at(const HSeq& f, const HSeq& g, std::size_t n);

/// Full convolution; the result is supported in [0, max f + max g].
HSeq convolve(const HSeq& f, const HSeq& g);

/// sum_k |f(k)|^p h(k) for p in {1, 2} (the p-th power of the norm).
/// Throws std::invalid_argument for other p.
Rational norm_p(const HSeq& f, int p);

}  // namespace qhyper
