#include "qlc/gf.hpp"

#include <algorithm>
#include <bit>
#include <utility>

namespace qlc {

bool is_prime(unsigned d) noexcept {
  if (d < 2) return false;
  for (unsigned p = 2; p * p <= d; ++p)
    if (d % p == 0) return false;
  return true;
}

Field::Field(unsigned d) : d_(d) {
  if (!is_prime(d)) throw FieldError("d must be prime (got " + std::to_string(d) + ")");
  // element products are formed in unsigned before reduction
  if (d > 251) throw FieldError("d must be below 256 for byte storage");
}

unsigned Field::inv(unsigned a) const {
  a %= d_;
  if (a == 0) throw FieldError("zero has no inverse in F_" + std::to_string(d_));
  // extended Euclid on (a, d)
  long long t = 0, new_t = 1, r = d_, new_r = a;
  while (new_r != 0) {
    long long q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  return reduce(t);
}

unsigned Field::bits_per_element() const noexcept {
  return static_cast<unsigned>(std::bit_width(d_ - 1));
}

namespace {
Field checked_field(FieldElement a, FieldElement b) {
  if (a.modulus != b.modulus)
    throw FieldError("modulus mismatch: " + std::to_string(a.modulus) + " vs " +
                     std::to_string(b.modulus));
  return Field(a.modulus);
}
}  // namespace

FieldElement field_add(FieldElement a, FieldElement b) {
  Field f = checked_field(a, b);
  return FieldElement(f.add(a.value, b.value), f);
}

FieldElement field_mul(FieldElement a, FieldElement b) {
  Field f = checked_field(a, b);
  return FieldElement(f.mul(a.value, b.value), f);
}

FieldElement field_inv(FieldElement a) {
  Field f(a.modulus);
  return FieldElement(f.inv(a.value), f);
}

FieldMatrix::FieldMatrix(const Field& f, std::size_t rows, std::size_t cols)
    : field_(f), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

FieldMatrix::FieldMatrix(const Field& f, std::size_t rows, std::size_t cols,
                         std::span<const unsigned> entries)
    : FieldMatrix(f, rows, cols) {
  if (entries.size() != rows * cols)
    throw std::invalid_argument("FieldMatrix: entry count does not match shape");
  for (std::size_t i = 0; i < entries.size(); ++i)
    data_[i] = static_cast<std::uint8_t>(f.reduce(entries[i]));
}

FieldMatrix FieldMatrix::transposed() const {
  FieldMatrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.data_[c * rows_ + r] = data_[r * cols_ + c];
  return t;
}

std::size_t matrix_rank_inplace(std::span<std::uint8_t> a, std::size_t rows, std::size_t cols,
                                const Field& f) {
  const unsigned d = f.modulus();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && a[pivot * cols + c] == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank)
      std::swap_ranges(a.begin() + pivot * cols, a.begin() + (pivot + 1) * cols,
                       a.begin() + rank * cols);
    const unsigned pinv = f.inv(a[rank * cols + c]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      const unsigned lead = a[r * cols + c];
      if (lead == 0) continue;
      // row_r -= (lead / pivot) * row_rank
      const unsigned factor = d - f.mul(lead, pinv);
      for (std::size_t k = c; k < cols; ++k)
        a[r * cols + k] = static_cast<std::uint8_t>((a[r * cols + k] + factor * a[rank * cols + k]) % d);
    }
    ++rank;
  }
  return rank;
}

std::size_t matrix_rank(const FieldMatrix& m) {
  std::vector<std::uint8_t> scratch(m.data().begin(), m.data().end());
  return matrix_rank_inplace(scratch, m.rows(), m.cols(), m.field());
}

}  // namespace qlc
