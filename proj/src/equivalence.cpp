#include "hilb/equivalence.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace hilb::equiv {

Matrix apply_functor(const FdHilb& m, const Mor& f) {
    Matrix out(f.cod.dim, f.dom.dim, f.mat.field());
    const auto basis = m.basis_global_elements(f.dom);
    for (std::size_t a = 0; a < basis.size(); ++a) {
        const Mor image = m.compose(f, basis[a]);
        for (std::size_t r = 0; r < f.cod.dim; ++r) out(r, a) = image.mat(r, 0);
    }
    return out;
}

FaithfulnessReport faithfulness_check(const FdHilb& m, const Mor& f, const Mor& g, double eps) {
    if (!(f.dom == g.dom) || !(f.cod == g.cod))
        throw ShapeError("faithfulness_check: morphisms are not parallel");
    FaithfulnessReport report;
    if (m.approx_equal(f, g, eps)) {
        report.equal = true;
        return report;
    }
    for (const Mor& e : m.basis_global_elements(f.dom)) {
        if (m.rel_residual(m.compose(f, e), m.compose(g, e)) > eps) {
            report.witness = e;
            return report;
        }
    }
    return report; // equal == false and no witness: a faithfulness violation
}

Mor lift_isometry(const FdHilb& m, Obj h, Obj k, const Matrix& u, double eps) {
    if (u.rows() != k.dim || u.cols() != h.dim)
        throw ShapeError("lift_isometry: coordinate matrix has the wrong shape");
    if (u.field() != m.field()) throw FieldError("lift_isometry: wrong ground field");
    if (rel_distance(adjoint(u) * u, Matrix::identity(h.dim, u.field())) > eps)
        throw IsometryError("lift_isometry: the coordinate map is not an isometry");

    // Cotuple of the basis points of H (one morphism out of the sum of units)
    // and cotuple of their prescribed images in K.
    const auto basis = m.basis_global_elements(h);
    Matrix basis_cot(h.dim, h.dim, m.field());
    for (std::size_t a = 0; a < basis.size(); ++a)
        for (std::size_t r = 0; r < h.dim; ++r) basis_cot(r, a) = basis[a].mat(r, 0);
    Mor h_cot{m.make_obj(h.dim), h, std::move(basis_cot)};
    Mor k_cot{m.make_obj(h.dim), k, u};
    return m.compose(k_cot, m.dagger(h_cot));
}

Matrix tensor_comparison(const FdHilb& m, Obj h, Obj k) {
    const auto eh = m.basis_global_elements(h);
    const auto ek = m.basis_global_elements(k);
    Matrix out(h.dim * k.dim, h.dim * k.dim, m.field());
    for (std::size_t a = 0; a < h.dim; ++a)
        for (std::size_t b = 0; b < k.dim; ++b) {
            const Mor point = m.tensor(eh[a], ek[b]);
            for (std::size_t r = 0; r < out.rows(); ++r) out(r, a * k.dim + b) = point.mat(r, 0);
        }
    return out;
}

CoherenceResiduals coherence_checks(const FdHilb& m, Obj h, Obj k, Obj l, Rng& rng) {
    CoherenceResiduals res;
    const Matrix mhk = tensor_comparison(m, h, k);
    const Matrix id_hk = Matrix::identity(h.dim * k.dim, m.field());
    res.comparison_unitary = std::max(rel_distance(adjoint(mhk) * mhk, id_hk),
                                      rel_distance(mhk * adjoint(mhk), id_hk));

    // Naturality against a random pair of maps out of H and K.
    Obj h2 = m.make_obj(static_cast<std::size_t>(rng.uniform_index(0, 5)));
    Obj k2 = m.make_obj(static_cast<std::size_t>(rng.uniform_index(0, 5)));
    const Mor f = m.random_mor(h, h2, rng);
    const Mor g = m.random_mor(k, k2, rng);
    res.naturality = rel_distance(apply_functor(m, m.tensor(f, g)) * mhk,
                                  tensor_comparison(m, h2, k2) *
                                      kron(apply_functor(m, f), apply_functor(m, g)));

    // The comparison intertwines the symmetries of the two sides.
    res.symmetry_square = rel_distance(apply_functor(m, m.symmetry(h, k)) * mhk,
                                       tensor_comparison(m, k, h) * m.symmetry(h, k).mat);

    // ... and the associators.
    const Matrix mkl = tensor_comparison(m, k, l);
    const Matrix m_h_kl = tensor_comparison(m, h, m.tensor_obj(k, l));
    const Matrix m_hk_l = tensor_comparison(m, m.tensor_obj(h, k), l);
    const Matrix id_h = Matrix::identity(h.dim, m.field());
    const Matrix id_l = Matrix::identity(l.dim, m.field());
    const Matrix path1 = m_h_kl * kron(id_h, mkl) * m.associator(h, k, l).mat;
    const Matrix path2 = apply_functor(m, m.associator(h, k, l)) * m_hk_l * kron(mhk, id_l);
    res.associator_square = rel_distance(path1, path2);
    return res;
}

DualityWitness dagger_dual(const FdHilb& m, Obj h) {
    const auto basis = m.basis_global_elements(h);
    Mor cup = m.zero_mor(m.unit(), m.tensor_obj(h, h));
    for (const Mor& e : basis) cup = m.add(cup, m.tensor(e, e));
    const Mor cap = m.dagger(cup); // H (x) H -> I

    const Mor id_h = m.identity(h);
    // H -> H (x) I -> H (x) (H (x) H) -> (H (x) H) (x) H -> I (x) H -> H
    const Mor left = m.compose(
        m.left_unitor(h),
        m.compose(m.tensor(cap, id_h),
                  m.compose(m.dagger(m.associator(h, h, h)),
                            m.compose(m.tensor(id_h, cup), m.dagger(m.right_unitor(h))))));
    // H -> I (x) H -> (H (x) H) (x) H -> H (x) (H (x) H) -> H (x) I -> H
    const Mor right = m.compose(
        m.right_unitor(h),
        m.compose(m.tensor(id_h, cap),
                  m.compose(m.associator(h, h, h),
                            m.compose(m.tensor(cup, id_h), m.dagger(m.left_unitor(h))))));

    DualityWitness w{cup, 0.0, 0.0};
    w.snake_left = m.rel_residual(left, id_h);
    w.snake_right = m.rel_residual(right, id_h);
    return w;
}

TwoUnitary two_unitary_decomposition(const FdHilb& m, const Mor& f) {
    if (m.field() != Field::cplx)
        throw FieldError("two_unitary_decomposition: needs complex phases (over the reals the "
                         "mean of two orthogonal maps cannot reach a generic contraction)");
    if (!(f.dom == f.cod)) throw ShapeError("two_unitary_decomposition: morphism must be square");
    const std::size_t n = f.dom.dim;
    if (n == 0) return {Complex{0.0, 0.0}, m.identity(f.dom), m.identity(f.dom)};

    Eigen::MatrixXcd a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = f.mat(i, j);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const double c = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
    if (c <= m.tolerance().eps) return {Complex{0.0, 0.0}, m.identity(f.dom), m.identity(f.dom)};

    // f / c = W diag(s) V* with every s in [0, 1]; opposite phases
    // s +- i sqrt(1 - s^2) lie on the unit circle and average back to s.
    Eigen::VectorXcd plus(n), minus(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double s = svd.singularValues()(static_cast<Eigen::Index>(i)) / c;
        const double t = std::sqrt(std::max(0.0, 1.0 - s * s));
        plus(static_cast<Eigen::Index>(i)) = Complex{s, t};
        minus(static_cast<Eigen::Index>(i)) = Complex{s, -t};
    }
    const Eigen::MatrixXcd up = svd.matrixU() * plus.asDiagonal() * svd.matrixV().adjoint();
    const Eigen::MatrixXcd um = svd.matrixU() * minus.asDiagonal() * svd.matrixV().adjoint();
    auto to_mor = [&](const Eigen::MatrixXcd& e) {
        Matrix mat(n, n, Field::cplx);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                mat(i, j) = e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        return Mor{f.dom, f.cod, std::move(mat)};
    };
    return {Complex{c, 0.0}, to_mor(up), to_mor(um)};
}

} // namespace hilb::equiv
