#include "hilb/fdhilb.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace hilb::fdhilb {

namespace {

Eigen::MatrixXcd to_eigen_c(const Matrix& a) {
    Eigen::MatrixXcd m(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = a(i, j);
    return m;
}

Eigen::MatrixXd to_eigen_r(const Matrix& a) {
    Eigen::MatrixXd m(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = a(i, j).real();
    return m;
}

template <class EigenMat>
Matrix from_eigen(const EigenMat& m, Field field) {
    Matrix out(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()), field);
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = m(i, j);
    return out;
}

// Shared SVD driver: returns singular values plus full U/V as hilb matrices.
struct SvdParts {
    std::vector<double> sigma;
    Matrix u; // full left singular vectors
    Matrix v; // full right singular vectors
};

SvdParts full_svd(const Matrix& a) {
    SvdParts parts;
    if (a.field() == Field::real) {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen_r(a), Eigen::ComputeFullU | Eigen::ComputeFullV);
        parts.sigma.assign(svd.singularValues().data(),
                           svd.singularValues().data() + svd.singularValues().size());
        parts.u = from_eigen(svd.matrixU(), Field::real);
        parts.v = from_eigen(svd.matrixV(), Field::real);
    } else {
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen_c(a), Eigen::ComputeFullU | Eigen::ComputeFullV);
        parts.sigma.assign(svd.singularValues().data(),
                           svd.singularValues().data() + svd.singularValues().size());
        parts.u = from_eigen(svd.matrixU(), Field::cplx);
        parts.v = from_eigen(svd.matrixV(), Field::cplx);
    }
    return parts;
}

std::size_t rank_from_sigma(const std::vector<double>& sigma, std::size_t rows, std::size_t cols,
                            Tolerance tol, double absolute_floor = 0.0) {
    if (sigma.empty()) return 0;
    const double cutoff =
        std::max(tol.eps * sigma.front() * static_cast<double>(std::max(rows, cols)),
                 absolute_floor);
    std::size_t r = 0;
    for (double s : sigma)
        if (s > cutoff) ++r;
    return r;
}

Matrix cols_slice(const Matrix& a, std::size_t first, std::size_t count) {
    Matrix out(a.rows(), count, a.field());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < count; ++j) out(i, j) = a(i, first + j);
    return out;
}

} // namespace

std::size_t numerical_rank(const Matrix& a, Tolerance tol) {
    if (a.rows() == 0 || a.cols() == 0) return 0;
    SvdParts svd = full_svd(a);
    return rank_from_sigma(svd.sigma, a.rows(), a.cols(), tol);
}

Matrix nullspace_onb(const Matrix& a, Tolerance tol, double absolute_floor) {
    if (a.cols() == 0) return Matrix(0, 0, a.field());
    if (a.rows() == 0) return Matrix::identity(a.cols(), a.field());
    SvdParts svd = full_svd(a);
    const std::size_t r = rank_from_sigma(svd.sigma, a.rows(), a.cols(), tol, absolute_floor);
    return cols_slice(svd.v, r, a.cols() - r);
}

Matrix range_onb(const Matrix& a, Tolerance tol) {
    if (a.rows() == 0 || a.cols() == 0) return Matrix(a.rows(), 0, a.field());
    SvdParts svd = full_svd(a);
    const std::size_t r = rank_from_sigma(svd.sigma, a.rows(), a.cols(), tol);
    return cols_slice(svd.u, 0, r);
}

Matrix random_gaussian(std::size_t rows, std::size_t cols, Field field, Rng& rng) {
    Matrix m(rows, cols, field);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = field == Field::real ? Complex{rng.gaussian(), 0.0} : rng.cgaussian();
    return m;
}

namespace {

// Thin Q of a QR factorization, with columns rotated so the R diagonal is
// real positive; this pins the result given the input.
template <class EigenMat>
EigenMat thin_q_positive(const EigenMat& a) {
    Eigen::HouseholderQR<EigenMat> qr(a);
    EigenMat q = qr.householderQ() * EigenMat::Identity(a.rows(), a.cols());
    const auto& r = qr.matrixQR();
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        auto d = r(j, j);
        const double mag = std::abs(d);
        if (mag > 0.0) q.col(j) *= d / mag;
    }
    return q;
}

} // namespace

Matrix random_isometry(std::size_t rows, std::size_t cols, Field field, Rng& rng) {
    if (cols > rows) throw ShapeError("random_isometry: more columns than rows");
    if (cols == 0) return Matrix(rows, 0, field);
    Matrix g = random_gaussian(rows, cols, field, rng);
    if (field == Field::real) return from_eigen(thin_q_positive(to_eigen_r(g)), Field::real);
    return from_eigen(thin_q_positive(to_eigen_c(g)), Field::cplx);
}

Mor::Mor(Obj dom_, Obj cod_, Matrix mat_) : dom(dom_), cod(cod_), mat(std::move(mat_)) {
    if (dom.field != cod.field || mat.field() != dom.field)
        throw FieldError("morphism: object and matrix fields disagree");
    if (mat.rows() != cod.dim || mat.cols() != dom.dim)
        throw ShapeError("morphism: matrix is " + std::to_string(mat.rows()) + "x" +
                         std::to_string(mat.cols()) + " but maps dim " + std::to_string(dom.dim) +
                         " to dim " + std::to_string(cod.dim));
    if (!mat.is_finite()) throw FieldError("morphism: non-finite entries");
    if (!mat.payload_matches_field())
        throw FieldError("morphism: real morphism with nonzero imaginary part");
}

FdHilb::FdHilb(Field field, Tolerance tol) : field_(field), tol_(tol) {}

void FdHilb::require_field(const Obj& h, const char* op) const {
    if (h.field != field_) throw FieldError(std::string(op) + ": object from the wrong model");
}

void FdHilb::require_parallel(const Mor& f, const Mor& g, const char* op) const {
    if (!(f.dom == g.dom) || !(f.cod == g.cod))
        throw ShapeError(std::string(op) + ": morphisms are not parallel");
}

Obj FdHilb::make_obj(std::size_t dim) const { return {field_, dim}; }

Obj FdHilb::tensor_obj(Obj a, Obj b) const {
    require_field(a, "tensor_obj");
    require_field(b, "tensor_obj");
    return {field_, a.dim * b.dim};
}

Obj FdHilb::sum_obj(Obj a, Obj b) const {
    require_field(a, "sum_obj");
    require_field(b, "sum_obj");
    return {field_, a.dim + b.dim};
}

Mor FdHilb::identity(Obj h) const {
    require_field(h, "identity");
    return {h, h, Matrix::identity(h.dim, field_)};
}

Mor FdHilb::zero_mor(Obj dom, Obj cod) const {
    require_field(dom, "zero_mor");
    require_field(cod, "zero_mor");
    return {dom, cod, Matrix(cod.dim, dom.dim, field_)};
}

Mor FdHilb::compose(const Mor& g, const Mor& f) const {
    if (!(f.cod == g.dom)) throw ShapeError("compose: codomain/domain mismatch");
    return {f.dom, g.cod, g.mat * f.mat};
}

Mor FdHilb::dagger(const Mor& f) const { return {f.cod, f.dom, adjoint(f.mat)}; }

Mor FdHilb::add(const Mor& f, const Mor& g) const {
    require_parallel(f, g, "add");
    return {f.dom, f.cod, f.mat + g.mat};
}

Mor FdHilb::scale(Complex z, const Mor& f) const { return {f.dom, f.cod, z * f.mat}; }

Mor FdHilb::tensor(const Mor& f, const Mor& g) const {
    return {tensor_obj(f.dom, g.dom), tensor_obj(f.cod, g.cod), kron(f.mat, g.mat)};
}

Mor FdHilb::direct_sum(const Mor& f, const Mor& g) const {
    return {sum_obj(f.dom, g.dom), sum_obj(f.cod, g.cod), hilb::direct_sum(f.mat, g.mat)};
}

Mor FdHilb::injection_left(Obj h, Obj k) const {
    Obj s = sum_obj(h, k);
    return {h, s, vstack(Matrix::identity(h.dim, field_), Matrix(k.dim, h.dim, field_))};
}

Mor FdHilb::injection_right(Obj h, Obj k) const {
    Obj s = sum_obj(h, k);
    return {k, s, vstack(Matrix(h.dim, k.dim, field_), Matrix::identity(k.dim, field_))};
}

Biproduct FdHilb::biproduct(Obj h, Obj k) const {
    return {sum_obj(h, k), injection_left(h, k), injection_right(h, k)};
}

// With the fixed Kronecker index convention ((i (x) k) -> i * dim + k) the
// associator and unitors are identity matrices; only the symmetry genuinely
// permutes coordinates.
Mor FdHilb::associator(Obj h, Obj k, Obj l) const {
    Obj lhs = tensor_obj(tensor_obj(h, k), l);
    Obj rhs = tensor_obj(h, tensor_obj(k, l));
    return {lhs, rhs, Matrix::identity(lhs.dim, field_)};
}

Mor FdHilb::left_unitor(Obj h) const {
    require_field(h, "left_unitor");
    return {tensor_obj(unit(), h), h, Matrix::identity(h.dim, field_)};
}

Mor FdHilb::right_unitor(Obj h) const {
    require_field(h, "right_unitor");
    return {tensor_obj(h, unit()), h, Matrix::identity(h.dim, field_)};
}

Mor FdHilb::symmetry(Obj h, Obj k) const {
    std::vector<std::size_t> target(h.dim * k.dim);
    for (std::size_t a = 0; a < h.dim; ++a)
        for (std::size_t b = 0; b < k.dim; ++b) target[a * k.dim + b] = b * h.dim + a;
    return {tensor_obj(h, k), tensor_obj(k, h), permutation_matrix(target, field_)};
}

std::optional<Mor> FdHilb::equaliser(const Mor& f, const Mor& g) const {
    return dagger_equaliser(f, g);
}

Mor FdHilb::dagger_equaliser(const Mor& f, const Mor& g) const {
    require_parallel(f, g, "dagger_equaliser");
    Matrix basis = nullspace_onb(f.mat - g.mat, tol_);
    return {make_obj(basis.cols()), f.dom, std::move(basis)};
}

Mor FdHilb::kernel(const Mor& f) const { return dagger_equaliser(f, zero_mor(f.dom, f.cod)); }

ImageFactorization FdHilb::image_factorization(const Mor& f) const {
    if (f.cod.dim == 0 || f.dom.dim == 0) {
        Obj mid = zero_obj();
        return {zero_mor(f.dom, mid), zero_mor(mid, f.cod)};
    }
    SvdParts svd = full_svd(f.mat);
    const std::size_t r = rank_from_sigma(svd.sigma, f.mat.rows(), f.mat.cols(), tol_);
    Matrix u_r = cols_slice(svd.u, 0, r);
    Matrix v_r = cols_slice(svd.v, 0, r);
    Matrix sigma_r(r, r, field_);
    for (std::size_t i = 0; i < r; ++i) sigma_r(i, i) = svd.sigma[i];
    Obj mid = make_obj(r);
    Mor epi{f.dom, mid, sigma_r * adjoint(v_r)};
    Mor mono{mid, f.cod, std::move(u_r)};
    return {std::move(epi), std::move(mono)};
}

std::vector<Mor> FdHilb::basis_global_elements(Obj h) const {
    require_field(h, "basis_global_elements");
    std::vector<Mor> out;
    out.reserve(h.dim);
    for (std::size_t j = 0; j < h.dim; ++j)
        out.push_back({unit(), h, basis_column(h.dim, j, field_)});
    return out;
}

Mor FdHilb::random_mor(Obj dom, Obj cod, Rng& rng) const {
    require_field(dom, "random_mor");
    require_field(cod, "random_mor");
    return {dom, cod, random_gaussian(cod.dim, dom.dim, field_, rng)};
}

Mor FdHilb::random_dagger_mono(Obj dom, Obj cod, Rng& rng) const {
    if (dom.dim > cod.dim) throw ShapeError("random_dagger_mono: domain exceeds codomain");
    return {dom, cod, random_isometry(cod.dim, dom.dim, field_, rng)};
}

Mor FdHilb::random_dagger_iso(Obj h, Rng& rng) const { return random_dagger_mono(h, h, rng); }

double FdHilb::distance(const Mor& f, const Mor& g) const {
    require_parallel(f, g, "distance");
    return hilb::distance(f.mat, g.mat);
}

double FdHilb::rel_residual(const Mor& f, const Mor& g) const {
    require_parallel(f, g, "rel_residual");
    return rel_distance(f.mat, g.mat);
}

bool FdHilb::approx_equal(const Mor& f, const Mor& g, double eps) const {
    return rel_residual(f, g) <= eps;
}

std::string FdHilb::describe(const Mor& f) const { return to_text(f.mat); }

bool FdHilb::unit_is_simple(double eps, std::string* detail) const {
    // Dimension 0 and 1 subobjects exist and are distinct.
    if (unit().dim != 1) {
        if (detail) *detail = "tensor unit does not have dimension one";
        return false;
    }
    // An isometry m : S -> I needs m^dagger m = id_S, but that product has
    // rank at most one, so dim S >= 2 is impossible: the residual is bounded
    // below by sqrt(dim S - 1) >= 1, which no tolerance below one accepts.
    const double impossible = 1.0;
    if (!(impossible > eps)) {
        if (detail) *detail = "tolerance too coarse to separate subobjects of the unit";
        return false;
    }
    if (detail)
        *detail = "unit subobjects are exactly dim 0 and dim 1 (rank bound excludes dim >= 2)";
    return true;
}

} // namespace hilb::fdhilb
