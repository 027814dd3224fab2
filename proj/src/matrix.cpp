#include "koszul/matrix.hpp"

#include <algorithm>
#include <sstream>

#include "koszul/errors.hpp"

namespace koszul {

namespace {

void require_same_field(FieldSpec a, FieldSpec b, const char* op) {
  if (!(a == b)) {
    throw InputError(std::string(op) + ": mixed fields " + a.name() + " and " + b.name());
  }
}

}  // namespace

Matrix::Matrix(FieldSpec field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), row_ptr_(rows + 1, 0) {}

Matrix Matrix::identity(FieldSpec field, std::size_t n) {
  MatrixBuilder b(field, n, n);
  for (std::size_t i = 0; i < n; ++i) b.add(i, i, 1LL);
  return b.build();
}

Matrix Matrix::from_rows(FieldSpec field, std::size_t cols,
                         const std::vector<std::vector<long long>>& rows) {
  MatrixBuilder b(field, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw InputError("from_rows: ragged row");
    for (std::size_t c = 0; c < cols; ++c) {
      if (rows[r][c] != 0) b.add(r, c, rows[r][c]);
    }
  }
  return b.build();
}

Matrix Matrix::from_dense(FieldSpec field, std::size_t cols,
                          const std::vector<std::vector<mpq_class>>& rows) {
  MatrixBuilder b(field, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw InputError("from_dense: ragged row");
    for (std::size_t c = 0; c < cols; ++c) {
      if (sgn(rows[r][c]) != 0) b.add(r, c, rows[r][c]);
    }
  }
  return b.build();
}

mpq_class Matrix::at(std::size_t r, std::size_t c) const {
  auto cs = row_cols(r);
  auto it = std::lower_bound(cs.begin(), cs.end(), c);
  if (it == cs.end() || *it != c) return 0;
  return row_values(r)[static_cast<std::size_t>(it - cs.begin())];
}

std::vector<Entry> Matrix::entries() const {
  std::vector<Entry> out;
  out.reserve(nnz());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      out.push_back({r, col_idx_[k], values_[k]});
    }
  }
  return out;
}

std::vector<std::vector<mpq_class>> Matrix::to_dense() const {
  std::vector<std::vector<mpq_class>> out(rows_, std::vector<mpq_class>(cols_));
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      out[r][col_idx_[k]] = values_[k];
    }
  }
  return out;
}

std::vector<mpq_class> Matrix::dense_row(std::size_t r) const {
  std::vector<mpq_class> out(cols_);
  for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) out[col_idx_[k]] = values_[k];
  return out;
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  std::vector<std::size_t> count(cols_ + 1, 0);
  for (std::size_t c : col_idx_) ++count[c + 1];
  for (std::size_t c = 0; c < cols_; ++c) count[c + 1] += count[c];
  t.row_ptr_ = count;
  t.col_idx_.resize(nnz());
  t.values_.resize(nnz());
  std::vector<std::size_t> next(count.begin(), count.end() - 1);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      std::size_t pos = next[col_idx_[k]]++;
      t.col_idx_[pos] = r;
      t.values_[pos] = values_[k];
    }
  }
  return t;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  require_same_field(field_, rhs.field_, "product");
  if (cols_ != rhs.rows_) {
    throw InputError("product: shape mismatch " + std::to_string(rows_) + "x" +
                     std::to_string(cols_) + " * " + std::to_string(rhs.rows_) + "x" +
                     std::to_string(rhs.cols_));
  }
  Matrix out(field_, rows_, rhs.cols_);
  std::vector<mpq_class> acc(rhs.cols_);
  std::vector<char> used(rhs.cols_, 0);
  std::vector<std::size_t> touched;
  mpq_class tmp;
  for (std::size_t r = 0; r < rows_; ++r) {
    touched.clear();
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      const std::size_t mid = col_idx_[k];
      const mpq_class& a = values_[k];
      for (std::size_t q = rhs.row_ptr_[mid]; q < rhs.row_ptr_[mid + 1]; ++q) {
        const std::size_t c = rhs.col_idx_[q];
        if (!used[c]) {
          used[c] = 1;
          touched.push_back(c);
        }
        mpq_mul(tmp.get_mpq_t(), a.get_mpq_t(), rhs.values_[q].get_mpq_t());
        acc[c] += tmp;
      }
    }
    std::sort(touched.begin(), touched.end());
    for (std::size_t c : touched) {
      mpq_class v = field_.is_rational() ? acc[c] : field_.normalize(acc[c]);
      if (sgn(v) != 0) {
        out.col_idx_.push_back(c);
        out.values_.push_back(std::move(v));
      }
      acc[c] = 0;
      used[c] = 0;
    }
    out.row_ptr_[r + 1] = out.col_idx_.size();
  }
  return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
  require_same_field(field_, rhs.field_, "sum");
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw InputError("sum: shape mismatch");
  MatrixBuilder b(field_, rows_, cols_);
  for (const auto& e : entries()) b.add(e.row, e.col, e.value);
  for (const auto& e : rhs.entries()) b.add(e.row, e.col, e.value);
  return b.build();
}

Matrix Matrix::operator-() const { return scaled(mpq_class(-1)); }

Matrix Matrix::operator-(const Matrix& rhs) const { return *this + (-rhs); }

Matrix Matrix::scaled(const mpq_class& s) const {
  MatrixBuilder b(field_, rows_, cols_);
  for (const auto& e : entries()) b.add(e.row, e.col, mpq_class(e.value * s));
  return b.build();
}

std::vector<mpq_class> Matrix::apply(const std::vector<mpq_class>& x) const {
  if (x.size() != cols_) throw InputError("apply: vector length mismatch");
  std::vector<mpq_class> y(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    mpq_class acc = 0;
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) acc += values_[k] * x[col_idx_[k]];
    y[r] = field_.normalize(acc);
  }
  return y;
}

Matrix Matrix::select_rows(const std::vector<std::size_t>& rows) const {
  Matrix out(field_, rows.size(), cols_);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::size_t r = rows[i];
    if (r >= rows_) throw InputError("select_rows: index out of range");
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      out.col_idx_.push_back(col_idx_[k]);
      out.values_.push_back(values_[k]);
    }
    out.row_ptr_[i + 1] = out.col_idx_.size();
  }
  return out;
}

Matrix Matrix::select_cols(const std::vector<std::size_t>& cols) const {
  std::vector<std::vector<std::size_t>> where(cols_);
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (cols[i] >= cols_) throw InputError("select_cols: index out of range");
    where[cols[i]].push_back(i);
  }
  MatrixBuilder b(field_, rows_, cols.size());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      for (std::size_t j : where[col_idx_[k]]) b.add(r, j, values_[k]);
    }
  }
  return b.build();
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
         a.row_ptr_ == b.row_ptr_ && a.col_idx_ == b.col_idx_ && a.values_ == b.values_;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << rows_ << "x" << cols_ << " over " << field_.name() << "\n";
  for (const auto& row : to_dense()) {
    os << "[";
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? " " : "") << row[c].get_str();
    os << "]\n";
  }
  return os.str();
}

MatrixBuilder::MatrixBuilder(FieldSpec field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols) {}

void MatrixBuilder::add(std::size_t r, std::size_t c, const mpq_class& v) {
  if (r >= rows_ || c >= cols_) {
    throw InputError("matrix entry (" + std::to_string(r) + "," + std::to_string(c) +
                     ") outside " + std::to_string(rows_) + "x" + std::to_string(cols_));
  }
  if (sgn(v) == 0) return;
  entries_.push_back({r, c, v});
}

void MatrixBuilder::add(std::size_t r, std::size_t c, long long v) {
  if (v != 0) add(r, c, mpq_class(mpz_class(static_cast<long>(v))));
}

void MatrixBuilder::add(std::size_t r, std::size_t c, const Scalar& v) {
  require_same_field(field_, v.field(), "matrix entry");
  add(r, c, v.value());
}

Matrix MatrixBuilder::build() {
  std::sort(entries_.begin(), entries_.end(), [](const Entry& x, const Entry& y) {
    return x.row != y.row ? x.row < y.row : x.col < y.col;
  });
  Matrix m(field_, rows_, cols_);
  std::size_t i = 0;
  while (i < entries_.size()) {
    std::size_t j = i + 1;
    mpq_class sum = entries_[i].value;
    while (j < entries_.size() && entries_[j].row == entries_[i].row &&
           entries_[j].col == entries_[i].col) {
      sum += entries_[j].value;
      ++j;
    }
    sum = field_.normalize(sum);
    if (sgn(sum) != 0) {
      m.col_idx_.push_back(entries_[i].col);
      m.values_.push_back(std::move(sum));
      m.row_ptr_[entries_[i].row + 1] += 1;
    }
    i = j;
  }
  for (std::size_t r = 0; r < rows_; ++r) m.row_ptr_[r + 1] += m.row_ptr_[r];
  entries_.clear();
  return m;
}

Matrix hstack(const std::vector<Matrix>& blocks) {
  if (blocks.empty()) return {};
  const std::size_t rows = blocks.front().rows();
  std::size_t cols = 0;
  for (const auto& b : blocks) {
    require_same_field(blocks.front().field(), b.field(), "hstack");
    if (b.rows() != rows) throw InputError("hstack: row count mismatch");
    cols += b.cols();
  }
  MatrixBuilder out(blocks.front().field(), rows, cols);
  std::size_t offset = 0;
  for (const auto& b : blocks) {
    for (const auto& e : b.entries()) out.add(e.row, e.col + offset, e.value);
    offset += b.cols();
  }
  return out.build();
}

Matrix vstack(const std::vector<Matrix>& blocks) {
  if (blocks.empty()) return {};
  const std::size_t cols = blocks.front().cols();
  std::size_t rows = 0;
  for (const auto& b : blocks) {
    require_same_field(blocks.front().field(), b.field(), "vstack");
    if (b.cols() != cols) throw InputError("vstack: column count mismatch");
    rows += b.rows();
  }
  MatrixBuilder out(blocks.front().field(), rows, cols);
  std::size_t offset = 0;
  for (const auto& b : blocks) {
    for (const auto& e : b.entries()) out.add(e.row + offset, e.col, e.value);
    offset += b.rows();
  }
  return out.build();
}

Matrix block_diag(const std::vector<Matrix>& blocks) {
  if (blocks.empty()) return {};
  std::size_t rows = 0, cols = 0;
  for (const auto& b : blocks) {
    require_same_field(blocks.front().field(), b.field(), "block_diag");
    rows += b.rows();
    cols += b.cols();
  }
  MatrixBuilder out(blocks.front().field(), rows, cols);
  std::size_t ro = 0, co = 0;
  for (const auto& b : blocks) {
    for (const auto& e : b.entries()) out.add(e.row + ro, e.col + co, e.value);
    ro += b.rows();
    co += b.cols();
  }
  return out.build();
}

Matrix kron(const Matrix& a, const Matrix& b) {
  require_same_field(a.field(), b.field(), "kron");
  MatrixBuilder out(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
  const auto ea = a.entries();
  const auto eb = b.entries();
  for (const auto& x : ea) {
    for (const auto& y : eb) {
      out.add(x.row * b.rows() + y.row, x.col * b.cols() + y.col, mpq_class(x.value * y.value));
    }
  }
  return out.build();
}

Matrix column_matrix(FieldSpec field, const std::vector<mpq_class>& v) {
  MatrixBuilder b(field, v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) b.add(i, 0, v[i]);
  return b.build();
}

}  // namespace koszul
