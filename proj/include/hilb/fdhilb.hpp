#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hilb/matrix.hpp"
#include "hilb/rng.hpp"

namespace hilb::fdhilb {

// Numerical tolerance policy for rank decisions and approximate equality.
struct Tolerance {
    double eps = 1e-9;

    Tolerance() = default;
    explicit Tolerance(double e) : eps(e) {
        if (!(e > 0.0) || !(e < 1.0)) throw ConfigError("tolerance must lie strictly in (0, 1)");
    }
};

// Finite-dimensional inner-product space over the ground field.
struct Obj {
    Field field = Field::cplx;
    std::size_t dim = 0;

    friend bool operator==(const Obj&, const Obj&) = default;
};

// Linear map dom -> cod as a cod.dim x dom.dim matrix.
struct Mor {
    Obj dom;
    Obj cod;
    Matrix mat;

    Mor(Obj dom_, Obj cod_, Matrix mat_);
};

struct Biproduct {
    Obj sum;
    Mor inj_left;  // H -> H (+) K
    Mor inj_right; // K -> H (+) K
};

// f = mono . epi with mono an isometry onto the closure of the image.
struct ImageFactorization {
    Mor epi;
    Mor mono;
};

// Singular values at or below eps * sigma_max * max(rows, cols) count as zero.
std::size_t numerical_rank(const Matrix& a, Tolerance tol);
// Columns form an orthonormal basis of the nullspace of a.  When the input has
// a known natural scale (e.g. projections, whose spectrum is {0, 1}), pass an
// absolute floor as well: singular values at or below it also count as zero,
// even when every entry of a is numerical noise.
Matrix nullspace_onb(const Matrix& a, Tolerance tol, double absolute_floor = 0.0);
// Columns form an orthonormal basis of the range of a.
Matrix range_onb(const Matrix& a, Tolerance tol);

Matrix random_gaussian(std::size_t rows, std::size_t cols, Field field, Rng& rng);
// Thin-QR orthonormalization of a Gaussian draw; requires rows >= cols.
Matrix random_isometry(std::size_t rows, std::size_t cols, Field field, Rng& rng);

// Dagger category of finite-dimensional Hilbert spaces over one ground field,
// with matrices as morphisms and conjugate transpose as dagger.
class FdHilb {
public:
    using Obj = fdhilb::Obj;
    using Mor = fdhilb::Mor;

    explicit FdHilb(Field field, Tolerance tol = Tolerance{});

    Field field() const { return field_; }
    Tolerance tolerance() const { return tol_; }

    // Largest dimension accepted for directly constructed objects. Derived
    // objects (tensor products, biproducts) may exceed it.
    static constexpr std::size_t max_dim = 8;

    Obj make_obj(std::size_t dim) const;
    Obj unit() const { return {field_, 1}; }
    Obj zero_obj() const { return {field_, 0}; }
    Obj tensor_obj(Obj a, Obj b) const;
    Obj sum_obj(Obj a, Obj b) const;

    Mor identity(Obj h) const;
    Mor zero_mor(Obj dom, Obj cod) const;
    Mor compose(const Mor& g, const Mor& f) const; // g after f
    Mor dagger(const Mor& f) const;
    Mor add(const Mor& f, const Mor& g) const;
    Mor scale(Complex z, const Mor& f) const;

    Mor tensor(const Mor& f, const Mor& g) const;
    Mor direct_sum(const Mor& f, const Mor& g) const;

    Biproduct biproduct(Obj h, Obj k) const;
    Mor injection_left(Obj h, Obj k) const;  // H -> H (+) K
    Mor injection_right(Obj h, Obj k) const; // K -> H (+) K

    Mor associator(Obj h, Obj k, Obj l) const; // (H (x) K) (x) L -> H (x) (K (x) L)
    Mor left_unitor(Obj h) const;              // I (x) H -> H
    Mor right_unitor(Obj h) const;             // H (x) I -> H
    Mor symmetry(Obj h, Obj k) const;          // H (x) K -> K (x) H

    // Dagger equaliser of (f, g): an isometry onto the nullspace of f - g.
    // The optional form matches the generic model interface; in this model a
    // dagger equaliser always exists.
    std::optional<Mor> equaliser(const Mor& f, const Mor& g) const;
    Mor dagger_equaliser(const Mor& f, const Mor& g) const;
    // Dagger kernel: the dagger equaliser of (f, 0).
    Mor kernel(const Mor& f) const;
    ImageFactorization image_factorization(const Mor& f) const;

    // Standard basis vectors e_j as global elements I -> H.
    std::vector<Mor> basis_global_elements(Obj h) const;

    Mor random_mor(Obj dom, Obj cod, Rng& rng) const;
    Mor random_dagger_mono(Obj dom, Obj cod, Rng& rng) const; // dom.dim <= cod.dim
    Mor random_dagger_iso(Obj h, Rng& rng) const;

    double distance(const Mor& f, const Mor& g) const;
    double rel_residual(const Mor& f, const Mor& g) const;
    bool approx_equal(const Mor& f, const Mor& g, double eps) const;
    bool approx_equal(const Mor& f, const Mor& g) const { return approx_equal(f, g, tol_.eps); }

    std::string describe(const Mor& f) const;

    // Hook for models whose equaliser is a bounded search with a designated
    // hard pair; this model has none.
    std::optional<std::pair<Mor, Mor>> equaliser_witness_pair() const { return std::nullopt; }

    // The tensor unit has exactly two dagger subobjects (zero and itself).
    // For candidate subobject dimension s >= 2 this is a rank argument:
    // m^dagger m for a 1 x s matrix has rank at most one, so its Frobenius
    // distance to id_s is at least sqrt(s - 1) >= 1.
    bool unit_is_simple(double eps, std::string* detail = nullptr) const;

private:
    void require_field(const Obj& h, const char* op) const;
    void require_parallel(const Mor& f, const Mor& g, const char* op) const;

    Field field_;
    Tolerance tol_;
};

} // namespace hilb::fdhilb
