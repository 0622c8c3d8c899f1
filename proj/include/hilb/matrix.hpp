#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "hilb/errors.hpp"

namespace hilb {

using Complex = std::complex<double>;

// Ground field of a matrix model. Real matrices carry complex storage with an
// enforced zero imaginary part; keeping one storage type makes every
// structural operation field-agnostic.
enum class Field { real, cplx };

const char* field_name(Field f);
Field parse_field(std::string_view word);

// Dense row-major matrix. Zero-sized shapes are legal (they represent maps in
// and out of the zero space) and all operations treat them uniformly.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, Field field);

    static Matrix identity(std::size_t n, Field field);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Field field() const { return field_; }

    Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    const std::vector<Complex>& data() const { return data_; }

    bool is_finite() const;
    // For a real-field matrix: every imaginary part is exactly zero.
    bool payload_matches_field() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    Field field_ = Field::real;
    std::vector<Complex> data_;
};

// Exact value equality (shape, field and entries; -0 compares equal to +0).
bool operator==(const Matrix& a, const Matrix& b);
inline bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

// Bit-level equality of entries, distinguishing signed zeros. Used by the
// serialization round-trip checks.
bool bit_identical(const Matrix& a, const Matrix& b);

Matrix operator*(const Matrix& a, const Matrix& b); // matrix product
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(const Complex& z, const Matrix& a); // throws FieldError for non-real z on a real matrix

Matrix adjoint(const Matrix& a);   // conjugate transpose
Matrix kron(const Matrix& a, const Matrix& b);
Matrix direct_sum(const Matrix& a, const Matrix& b);
Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);

// Column vector e_j of length n.
Matrix basis_column(std::size_t n, std::size_t j, Field field);
// Permutation matrix sending e_j to e_{target[j]}.
Matrix permutation_matrix(const std::vector<std::size_t>& target, Field field);
// Column j of a as an n x 1 matrix.
Matrix column(const Matrix& a, std::size_t j);

double fro_norm(const Matrix& a);
double distance(const Matrix& a, const Matrix& b);
// distance(a, b) / max(1, |a|, |b|): scale-aware residual used everywhere.
double rel_distance(const Matrix& a, const Matrix& b);
bool approx_equal(const Matrix& a, const Matrix& b, double eps);

// Text exchange format: a header line "rows cols real|complex" followed by
// row-major entries, one row per line, complex entries as a+bi. Reading a
// written matrix reproduces every entry bit-exactly, except that the writer
// normalizes signed zeros to +0.
std::string to_text(const Matrix& a);
Matrix from_text(std::string_view text);

} // namespace hilb
