#include "hilb/matrix.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace hilb {

const char* field_name(Field f) {
    return f == Field::real ? "real" : "complex";
}

Field parse_field(std::string_view word) {
    if (word == "real") return Field::real;
    if (word == "complex") return Field::cplx;
    throw ParseError("unknown field '" + std::string(word) + "' (expected 'real' or 'complex')");
}

Matrix::Matrix(std::size_t rows, std::size_t cols, Field field)
    : rows_(rows), cols_(cols), field_(field), data_(rows * cols, Complex{0.0, 0.0}) {}

Matrix Matrix::identity(std::size_t n, Field field) {
    Matrix m(n, n, field);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

bool Matrix::is_finite() const {
    for (const Complex& z : data_) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
    return true;
}

bool Matrix::payload_matches_field() const {
    if (field_ == Field::cplx) return true;
    for (const Complex& z : data_) {
        if (z.imag() != 0.0) return false;
    }
    return true;
}

bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() && a.field() == b.field() &&
           a.data() == b.data();
}

bool bit_identical(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols() || a.field() != b.field()) return false;
    auto same_bits = [](double x, double y) {
        return std::bit_cast<std::uint64_t>(x) == std::bit_cast<std::uint64_t>(y);
    };
    for (std::size_t i = 0; i < a.data().size(); ++i) {
        if (!same_bits(a.data()[i].real(), b.data()[i].real()) ||
            !same_bits(a.data()[i].imag(), b.data()[i].imag()))
            return false;
    }
    return true;
}

namespace {

void require_same_field(const Matrix& a, const Matrix& b, const char* op) {
    if (a.field() != b.field())
        throw FieldError(std::string(op) + ": mixed real and complex operands");
}

void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ShapeError(std::string(op) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
}

} // namespace

Matrix operator*(const Matrix& a, const Matrix& b) {
    require_same_field(a, b, "product");
    if (a.cols() != b.rows())
        throw ShapeError("product: inner dimensions differ (" + std::to_string(a.cols()) + " vs " +
                         std::to_string(b.rows()) + ")");
    Matrix c(a.rows(), b.cols(), a.field());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{0.0, 0.0}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    require_same_field(a, b, "sum");
    require_same_shape(a, b, "sum");
    Matrix c = a;
    for (std::size_t i = 0; i < c.rows(); ++i)
        for (std::size_t j = 0; j < c.cols(); ++j) c(i, j) += b(i, j);
    return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    require_same_field(a, b, "difference");
    require_same_shape(a, b, "difference");
    Matrix c = a;
    for (std::size_t i = 0; i < c.rows(); ++i)
        for (std::size_t j = 0; j < c.cols(); ++j) c(i, j) -= b(i, j);
    return c;
}

Matrix operator*(const Complex& z, const Matrix& a) {
    if (a.field() == Field::real && z.imag() != 0.0)
        throw FieldError("scale: complex scalar applied to a real matrix");
    Matrix c = a;
    for (std::size_t i = 0; i < c.rows(); ++i)
        for (std::size_t j = 0; j < c.cols(); ++j) c(i, j) *= z;
    return c;
}

Matrix adjoint(const Matrix& a) {
    Matrix c(a.cols(), a.rows(), a.field());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(j, i) = std::conj(a(i, j));
    return c;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    require_same_field(a, b, "kron");
    Matrix c(a.rows() * b.rows(), a.cols() * b.cols(), a.field());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Complex aij = a(i, j);
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    c(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return c;
}

Matrix direct_sum(const Matrix& a, const Matrix& b) {
    require_same_field(a, b, "direct_sum");
    Matrix c(a.rows() + b.rows(), a.cols() + b.cols(), a.field());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) c(a.rows() + i, a.cols() + j) = b(i, j);
    return c;
}

Matrix hstack(const Matrix& a, const Matrix& b) {
    require_same_field(a, b, "hstack");
    if (a.rows() != b.rows()) throw ShapeError("hstack: row counts differ");
    Matrix c(a.rows(), a.cols() + b.cols(), a.field());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) c(i, a.cols() + j) = b(i, j);
    }
    return c;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
    require_same_field(a, b, "vstack");
    if (a.cols() != b.cols()) throw ShapeError("vstack: column counts differ");
    Matrix c(a.rows() + b.rows(), a.cols(), a.field());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) c(a.rows() + i, j) = b(i, j);
    return c;
}

Matrix basis_column(std::size_t n, std::size_t j, Field field) {
    if (j >= n) throw ShapeError("basis_column: index out of range");
    Matrix c(n, 1, field);
    c(j, 0) = 1.0;
    return c;
}

Matrix permutation_matrix(const std::vector<std::size_t>& target, Field field) {
    const std::size_t n = target.size();
    Matrix p(n, n, field);
    std::vector<bool> seen(n, false);
    for (std::size_t j = 0; j < n; ++j) {
        if (target[j] >= n || seen[target[j]])
            throw ShapeError("permutation_matrix: target is not a permutation");
        seen[target[j]] = true;
        p(target[j], j) = 1.0;
    }
    return p;
}

Matrix column(const Matrix& a, std::size_t j) {
    if (j >= a.cols()) throw ShapeError("column: index out of range");
    Matrix c(a.rows(), 1, a.field());
    for (std::size_t i = 0; i < a.rows(); ++i) c(i, 0) = a(i, j);
    return c;
}

double fro_norm(const Matrix& a) {
    double s = 0.0;
    for (const Complex& z : a.data()) s += std::norm(z);
    return std::sqrt(s);
}

double distance(const Matrix& a, const Matrix& b) {
    require_same_field(a, b, "distance");
    require_same_shape(a, b, "distance");
    double s = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) s += std::norm(a.data()[i] - b.data()[i]);
    return std::sqrt(s);
}

double rel_distance(const Matrix& a, const Matrix& b) {
    return distance(a, b) / std::max({1.0, fro_norm(a), fro_norm(b)});
}

bool approx_equal(const Matrix& a, const Matrix& b, double eps) {
    return rel_distance(a, b) <= eps;
}

namespace {

// 17 significant digits round-trip every finite double exactly.
std::string fmt_double(double x) {
    if (x == 0.0) x = 0.0; // normalize -0 on write
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fmt_entry(const Complex& z, Field field) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw ParseError("refusing to write a non-finite entry");
    if (field == Field::real) return fmt_double(z.real());
    double im = z.imag() == 0.0 ? 0.0 : z.imag();
    std::string out = fmt_double(z.real());
    out += (im < 0.0) ? '-' : '+';
    out += fmt_double(std::abs(im));
    out += 'i';
    return out;
}

double parse_double(std::string_view s) {
    if (s.empty()) throw ParseError("empty numeric token");
    std::string tmp(s);
    char* end = nullptr;
    double v = std::strtod(tmp.c_str(), &end);
    if (end != tmp.c_str() + tmp.size()) throw ParseError("bad numeric token '" + tmp + "'");
    if (!std::isfinite(v)) throw ParseError("non-finite entry '" + tmp + "'");
    return v;
}

Complex parse_entry(std::string_view tok, Field field) {
    const bool imag_tagged = !tok.empty() && tok.back() == 'i';
    if (field == Field::real) {
        if (imag_tagged) throw ParseError("complex entry '" + std::string(tok) + "' in a real matrix");
        return {parse_double(tok), 0.0};
    }
    if (!imag_tagged) return {parse_double(tok), 0.0};
    std::string_view body = tok.substr(0, tok.size() - 1);
    // Split a+bi at the last sign that does not follow an exponent marker.
    std::size_t split = std::string_view::npos;
    for (std::size_t i = 1; i < body.size(); ++i) {
        if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E')
            split = i;
    }
    if (split == std::string_view::npos)
        throw ParseError("complex entry '" + std::string(tok) + "' is not of the form a+bi");
    double re = parse_double(body.substr(0, split));
    double im = parse_double(body.substr(split));
    return {re, im};
}

} // namespace

std::string to_text(const Matrix& a) {
    std::string out = std::to_string(a.rows()) + " " + std::to_string(a.cols()) + " " +
                      field_name(a.field()) + "\n";
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (j) out += ' ';
            out += fmt_entry(a(i, j), a.field());
        }
        if (a.cols()) out += '\n';
    }
    return out;
}

Matrix from_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string rows_tok, cols_tok, field_tok;
    if (!(in >> rows_tok >> cols_tok >> field_tok))
        throw ParseError("missing matrix header 'rows cols field'");
    auto parse_size = [](const std::string& tok) -> std::size_t {
        if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) {
                return c >= '0' && c <= '9';
            }))
            throw ParseError("bad dimension '" + tok + "'");
        return static_cast<std::size_t>(std::stoull(tok));
    };
    const std::size_t rows = parse_size(rows_tok);
    const std::size_t cols = parse_size(cols_tok);
    const Field field = parse_field(field_tok);
    Matrix m(rows, cols, field);
    std::string tok;
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            if (!(in >> tok))
                throw ParseError("matrix body ended early (expected " +
                                 std::to_string(rows * cols) + " entries)");
            m(i, j) = parse_entry(tok, field);
        }
    if (in >> tok) throw ParseError("trailing content '" + tok + "' after matrix body");
    return m;
}

} // namespace hilb
