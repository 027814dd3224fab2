#pragma once

// Elimination kernels shared by the linear algebra front end. Two scalar
// domains are supported: residues mod a word-sized prime and GMP rationals.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <queue>
#include <vector>

#include "koszul/field.hpp"

namespace koszul::detail {

struct ModP {
  using T = std::uint32_t;
  std::uint32_t p;

  static bool is_zero(T v) { return v == 0; }
  T inv(T v) const { return inverse_mod(v, p); }
  T mul(T a, T b) const {
    return static_cast<T>(static_cast<std::uint64_t>(a) * b % p);
  }
  // acc -= f * v
  void submul(T& acc, T f, T v) const {
    acc = static_cast<T>((acc + static_cast<std::uint64_t>(p - f) * v) % p);
  }
  void scale(T& v, T f) const { v = mul(v, f); }
  static void clear(T& v) { v = 0; }
};

struct Rat {
  using T = mpq_class;
  mpq_class tmp;

  static bool is_zero(const T& v) { return sgn(v) == 0; }
  T inv(const T& v) const { return 1 / v; }
  void submul(T& acc, const T& f, const T& v) {
    mpq_mul(tmp.get_mpq_t(), f.get_mpq_t(), v.get_mpq_t());
    mpq_sub(acc.get_mpq_t(), acc.get_mpq_t(), tmp.get_mpq_t());
  }
  void scale(T& v, const T& f) { v *= f; }
  static void clear(T& v) { v = 0; }
};

template <class T>
struct SparseRow {
  std::vector<std::uint32_t> cols;
  std::vector<T> vals;
  std::size_t size() const { return cols.size(); }
};

/// Incremental row echelon form. Each stored row has leading entry one and a
/// leading column no other stored row shares; rows are not reduced against
/// later pivots until reduced_rows() is called.
template <class F>
class SparseEchelon {
 public:
  using T = typename F::T;

  SparseEchelon(F field, std::size_t ncols)
      : f_(std::move(field)),
        pivot_row_(ncols, -1),
        acc_(ncols),
        queued_(ncols, 0),
        touched_flag_(ncols, 0) {}

  std::size_t rank() const { return rows_.size(); }
  std::size_t ncols() const { return pivot_row_.size(); }

  /// Reduces the row against the stored pivots; a nonzero remainder is
  /// normalized and stored. Returns whether the rank grew.
  bool insert(const SparseRow<T>& row) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      const std::uint32_t c = row.cols[k];
      acc_[c] = row.vals[k];
      touch(c);
      queue(c);
    }
    std::int64_t lead = -1;
    while (!heap_.empty()) {
      const std::uint32_t c = heap_.top();
      heap_.pop();
      queued_[c] = 0;
      if (F::is_zero(acc_[c])) continue;
      const std::int64_t pr = pivot_row_[c];
      if (pr < 0) {
        lead = c;
        break;
      }
      const T factor = acc_[c];
      const SparseRow<T>& prow = rows_[static_cast<std::size_t>(pr)];
      for (std::size_t k = 0; k < prow.size(); ++k) {
        const std::uint32_t col = prow.cols[k];
        f_.submul(acc_[col], factor, prow.vals[k]);
        touch(col);
        if (col != c) queue(col);
      }
    }
    while (!heap_.empty()) {
      queued_[heap_.top()] = 0;
      heap_.pop();
    }
    if (lead < 0) {
      reset_touched();
      return false;
    }
    SparseRow<T> out = collect_touched();
    const T inv = f_.inv(out.vals.front());
    for (auto& v : out.vals) f_.scale(v, inv);
    pivot_row_[static_cast<std::size_t>(lead)] = static_cast<std::int64_t>(rows_.size());
    rows_.push_back(std::move(out));
    return true;
  }

  /// The reduced row-echelon basis, sorted by leading column.
  std::vector<SparseRow<T>> reduced_rows() {
    std::vector<std::size_t> order(rows_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      return rows_[x].cols.front() > rows_[y].cols.front();
    });
    std::vector<SparseRow<T>> reduced(rows_.size());
    for (std::size_t idx : order) {
      const SparseRow<T>& row = rows_[idx];
      for (std::size_t k = 0; k < row.size(); ++k) {
        acc_[row.cols[k]] = row.vals[k];
        touch(row.cols[k]);
      }
      for (std::size_t k = 1; k < row.size(); ++k) {
        const std::int64_t pr = pivot_row_[row.cols[k]];
        if (pr < 0) continue;
        const T factor = row.vals[k];
        const SparseRow<T>& red = reduced[static_cast<std::size_t>(pr)];
        for (std::size_t q = 0; q < red.size(); ++q) {
          f_.submul(acc_[red.cols[q]], factor, red.vals[q]);
          touch(red.cols[q]);
        }
      }
      reduced[idx] = collect_touched();
    }
    std::sort(reduced.begin(), reduced.end(),
              [](const SparseRow<T>& x, const SparseRow<T>& y) {
                return x.cols.front() < y.cols.front();
              });
    return reduced;
  }

 private:
  void touch(std::uint32_t c) {
    if (!touched_flag_[c]) {
      touched_flag_[c] = 1;
      touched_.push_back(c);
    }
  }
  void queue(std::uint32_t c) {
    if (!queued_[c]) {
      queued_[c] = 1;
      heap_.push(c);
    }
  }
  void reset_touched() {
    for (std::uint32_t c : touched_) {
      F::clear(acc_[c]);
      touched_flag_[c] = 0;
    }
    touched_.clear();
  }
  SparseRow<T> collect_touched() {
    std::sort(touched_.begin(), touched_.end());
    SparseRow<T> out;
    for (std::uint32_t c : touched_) {
      if (!F::is_zero(acc_[c])) {
        out.cols.push_back(c);
        out.vals.push_back(acc_[c]);
      }
      F::clear(acc_[c]);
      touched_flag_[c] = 0;
    }
    touched_.clear();
    return out;
  }

  F f_;
  std::vector<SparseRow<T>> rows_;
  std::vector<std::int64_t> pivot_row_;
  std::vector<T> acc_;
  std::vector<char> queued_;
  std::vector<char> touched_flag_;
  std::vector<std::uint32_t> touched_;
  std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, std::greater<>> heap_;
};

/// In-place Gaussian elimination of a dense row-major matrix mod p. Pivots are
/// chosen column by column, taking the first remaining row with a nonzero
/// entry. With `reduce_above` the first rank() rows end up in reduced
/// row-echelon form. Returns the pivot columns.
std::vector<std::size_t> dense_eliminate(std::vector<std::uint32_t>& a, std::size_t rows,
                                         std::size_t cols, std::uint32_t p, bool reduce_above);

}  // namespace koszul::detail
