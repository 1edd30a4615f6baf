#include "qhyper/hypergroup.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <stdexcept>

namespace qhyper {

Rational LinearizationRow::at(std::size_t k) const {
  if (k < first || k > last()) return Rational(0);
  return values[k - first];
}

namespace {

// P_1 * sum_j v_j P_j expressed in the P basis. P_1 P_0 = P_1; for j >= 1 the
// three-term recurrence spreads v_j over j-1, j, j+1.
LinearizationRow multiply_by_p1(const CoeffProvider& p, const LinearizationRow& v) {
  LinearizationRow out;
  out.first = v.first == 0 ? 0 : v.first - 1;
  out.values.assign(v.last() + 2 - out.first, Rational(0));
  for (std::size_t i = 0; i < v.values.size(); ++i) {
    const std::size_t j = v.first + i;
    const Rational& vj = v.values[i];
    if (vj.is_zero()) continue;
    if (j == 0) {
      out.values[1 - out.first] += vj;
      continue;
    }
    const RecurrenceTriple& t = p(j);
    out.values[j + 1 - out.first] += t.a * vj;
    out.values[j - out.first] += t.b * vj;
    out.values[j - 1 - out.first] += t.c * vj;
  }
  return out;
}

// Row m+1 of column n from rows m and m-1 (m >= 1):
//   P_{m+1} P_n = (P_1 (P_m P_n) - b_m P_m P_n - c_m P_{m-1} P_n) / a_m.
LinearizationRow next_row(const CoeffProvider& p, std::size_t m, const LinearizationRow& cur,
                          const LinearizationRow& prev) {
  const RecurrenceTriple& t = p(m);
  LinearizationRow out = multiply_by_p1(p, cur);
  for (std::size_t i = 0; i < cur.values.size(); ++i) {
    out.values[cur.first + i - out.first] -= t.b * cur.values[i];
  }
  for (std::size_t i = 0; i < prev.values.size(); ++i) {
    out.values[prev.first + i - out.first] -= t.c * prev.values[i];
  }
  const Rational inv_a = t.a.inverse();
  for (auto& v : out.values) v *= inv_a;
  return out;
}

}  // namespace

struct LinearizationTable::State {
  struct Column {
    std::mutex mutex;
    std::deque<LinearizationRow> rows;
  };
  std::mutex mutex;
  std::map<std::size_t, std::unique_ptr<Column>> columns;
};

LinearizationTable::LinearizationTable(CoeffProvider provider)
    : provider_(std::move(provider)), state_(std::make_shared<State>()) {}

const LinearizationRow& LinearizationTable::row(std::size_t m, std::size_t n) const {
  if (m > n) std::swap(m, n);
  State::Column* col = nullptr;
  {
    std::lock_guard lock(state_->mutex);
    auto& slot = state_->columns[n];
    if (!slot) slot = std::make_unique<State::Column>();
    col = slot.get();
  }
  std::lock_guard lock(col->mutex);
  auto& rows = col->rows;
  if (rows.empty()) rows.push_back(LinearizationRow{n, {Rational(1)}});
  while (rows.size() <= m) {
    const std::size_t cur = rows.size() - 1;
    // cur < m <= n, so the new band [n-cur-1, n+cur+1] never reaches below 0.
    rows.push_back(cur == 0 ? multiply_by_p1(provider_, rows[0])
                            : next_row(provider_, cur, rows[cur], rows[cur - 1]));
  }
  return rows[m];
}

LinearizationRow linearize(const CoeffProvider& provider, std::size_t m, std::size_t n) {
  return LinearizationTable(provider).row(m, n);
}

std::optional<NegativeCoefficient> check_property_P(const LinearizationTable& table,
                                                    std::size_t max_index) {
  for (std::size_t m = 0; m <= max_index; ++m) {
    for (std::size_t n = m; n <= max_index; ++n) {
      const LinearizationRow& r = table.row(m, n);
      for (std::size_t i = 0; i < r.values.size(); ++i) {
        if (r.values[i].sign() < 0) return NegativeCoefficient{m, n, r.first + i, r.values[i]};
      }
    }
  }
  return std::nullopt;
}

std::optional<NegativeCoefficient> check_property_P(const CoeffProvider& provider,
                                                    std::size_t max_index) {
  return check_property_P(LinearizationTable(provider), max_index);
}

// ---------------------------------------------------------------------------

Hypergroup::Hypergroup(CoeffProvider provider)
    : provider_(provider), haar_(provider), table_(provider), monomials_(provider) {
  if (provider_.family() == Family::LittleQLegendre) moments_.emplace(provider_.q());
}

Hypergroup Hypergroup::little_q_legendre(const QParam& q) {
  return Hypergroup(CoeffProvider::little_q_legendre(q));
}

const MuMoments& Hypergroup::moments() const {
  if (!moments_) throw std::logic_error("measure moments are only available for little q-Legendre");
  return *moments_;
}

// ---------------------------------------------------------------------------

HSeq::HSeq(Hypergroup hg, std::map<std::size_t, Rational> values)
    : hg_(std::move(hg)), values_(std::move(values)) {
  std::erase_if(values_, [](const auto& kv) { return kv.second.is_zero(); });
}

HSeq HSeq::delta(const Hypergroup& hg, std::size_t k) { return HSeq(hg, {{k, Rational(1)}}); }

HSeq HSeq::epsilon(const Hypergroup& hg, std::size_t k) { return HSeq(hg, {{k, hg.h(k).inverse()}}); }

HSeq HSeq::from_dense(const Hypergroup& hg, std::span<const Rational> values, std::size_t offset) {
  std::map<std::size_t, Rational> m;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!values[i].is_zero()) m.emplace(offset + i, values[i]);
  }
  return HSeq(hg, std::move(m));
}

Rational HSeq::operator[](std::size_t k) const {
  auto it = values_.find(k);
  return it == values_.end() ? Rational(0) : it->second;
}

std::vector<std::size_t> HSeq::support() const {
  std::vector<std::size_t> s;
  s.reserve(values_.size());
  for (const auto& kv : values_) s.push_back(kv.first);
  return s;
}

std::size_t HSeq::min_index() const {
  if (values_.empty()) throw std::logic_error("HSeq: empty support");
  return values_.begin()->first;
}

std::size_t HSeq::max_index() const {
  if (values_.empty()) throw std::logic_error("HSeq: empty support");
  return values_.rbegin()->first;
}

HSeq& HSeq::operator+=(const HSeq& o) {
  for (const auto& [k, v] : o.values_) {
    Rational sum = (*this)[k] + v;
    if (sum.is_zero()) values_.erase(k);
    else values_[k] = std::move(sum);
  }
  return *this;
}

HSeq& HSeq::operator-=(const HSeq& o) {
  for (const auto& [k, v] : o.values_) {
    Rational diff = (*this)[k] - v;
    if (diff.is_zero()) values_.erase(k);
    else values_[k] = std::move(diff);
  }
  return *this;
}

HSeq& HSeq::operator*=(const Rational& s) {
  if (s.is_zero()) {
    values_.clear();
    return *this;
  }
  for (auto& kv : values_) kv.second *= s;
  return *this;
}

// ---------------------------------------------------------------------------

namespace {

// T_n f(m) without materializing the whole translate.
Rational translate_at(const HSeq& f, std::size_t n, std::size_t m) {
  const LinearizationRow& r = f.hypergroup().linearization().row(m, n);
  Rational sum(0);
  const auto& vals = f.values();
  for (auto it = vals.lower_bound(r.first); it != vals.end() && it->first <= r.last(); ++it) {
    sum += r.values[it->first - r.first] * it->second;
  }
  return sum;
}

}  // namespace

HSeq translate(const HSeq& f, std::size_t n) {
  std::map<std::size_t, Rational> out;
  if (f.empty()) return HSeq(f.hypergroup());
  const std::size_t lo = f.min_index() > n ? f.min_index() - n : 0;
  const std::size_t hi = f.max_index() + n;
  for (std::size_t m = lo; m <= hi; ++m) {
    Rational v = translate_at(f, n, m);
    if (!v.is_zero()) out.emplace(m, std::move(v));
  }
  return HSeq(f.hypergroup(), std::move(out));
}

Rational convolve_at(const HSeq& f, const HSeq& g, std::size_t n) {
  Rational sum(0);
  const Hypergroup& hg = f.hypergroup();
  for (const auto& [k, gk] : g.values()) {
    const Rational t = translate_at(f, n, k);
    if (!t.is_zero()) sum += t * gk * hg.h(k);
  }
  return sum;
}

HSeq convolve(const HSeq& f, const HSeq& g) {
  std::map<std::size_t, Rational> out;
  if (f.empty() || g.empty()) return HSeq(f.hypergroup());
  const std::size_t hi = f.max_index() + g.max_index();
  for (std::size_t n = 0; n <= hi; ++n) {
    Rational v = convolve_at(f, g, n);
    if (!v.is_zero()) out.emplace(n, std::move(v));
  }
  return HSeq(f.hypergroup(), std::move(out));
}

Rational norm_p(const HSeq& f, int p) {
  if (p != 1 && p != 2) throw std::invalid_argument("norm_p: p must be 1 or 2");
  Rational sum(0);
  for (const auto& [k, v] : f.values()) {
    sum += (p == 1 ? v.abs() : v * v) * f.hypergroup().h(k);
  }
  return sum;
}

}  // namespace qhyper
