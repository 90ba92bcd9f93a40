#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qlc {

/// Raised for any arithmetic misuse over F_d: non-prime modulus, mixing
/// elements from different fields, or inverting zero.
class FieldError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

bool is_prime(unsigned d) noexcept;

/// A prime field F_d. Construction validates primality, so every Field in
/// circulation is a valid context.
class Field {
 public:
  explicit Field(unsigned d);

  unsigned modulus() const noexcept { return d_; }

  unsigned reduce(long long x) const noexcept {
    long long r = x % static_cast<long long>(d_);
    return static_cast<unsigned>(r < 0 ? r + d_ : r);
  }
  unsigned add(unsigned a, unsigned b) const noexcept { return (a + b) % d_; }
  unsigned sub(unsigned a, unsigned b) const noexcept { return (a + d_ - b) % d_; }
  unsigned neg(unsigned a) const noexcept { return (d_ - a) % d_; }
  unsigned mul(unsigned a, unsigned b) const noexcept { return (a * b) % d_; }
  unsigned inv(unsigned a) const;

  /// Number of bits needed to store one element, ceil(log2 d).
  unsigned bits_per_element() const noexcept;

  friend bool operator==(const Field&, const Field&) = default;

 private:
  unsigned d_;
};

/// An element of F_d carrying its modulus.
struct FieldElement {
  unsigned value = 0;
  unsigned modulus = 2;

  FieldElement() = default;
  FieldElement(unsigned v, const Field& f) : value(f.reduce(v)), modulus(f.modulus()) {}

  friend bool operator==(const FieldElement&, const FieldElement&) = default;
};

FieldElement field_add(FieldElement a, FieldElement b);
FieldElement field_mul(FieldElement a, FieldElement b);
FieldElement field_inv(FieldElement a);

/// Dense row-major matrix over F_d.
class FieldMatrix {
 public:
  FieldMatrix(const Field& f, std::size_t rows, std::size_t cols);
  FieldMatrix(const Field& f, std::size_t rows, std::size_t cols,
              std::span<const unsigned> entries);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const Field& field() const noexcept { return field_; }

  unsigned operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, unsigned v) { data_[r * cols_ + c] = static_cast<std::uint8_t>(field_.reduce(v)); }

  FieldMatrix transposed() const;
  std::span<const std::uint8_t> data() const noexcept { return data_; }
  std::span<std::uint8_t> mutable_data() noexcept { return data_; }

 private:
  Field field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::uint8_t> data_;
};

/// Rank over F_d by Gaussian elimination, first-nonzero pivot per column.
std::size_t matrix_rank(const FieldMatrix& m);

/// Rank of a small row-major byte matrix without allocating a FieldMatrix.
/// `scratch` is clobbered; it must hold rows*cols entries already reduced.
std::size_t matrix_rank_inplace(std::span<std::uint8_t> scratch, std::size_t rows,
                                std::size_t cols, const Field& f);

}  // namespace qlc
