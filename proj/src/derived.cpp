#include "hilb/derived.hpp"

#include <bit>
#include <cmath>

namespace hilb::derived {

namespace {

void require_scalar(const Scalar& s, const char* op) {
    if (s.dom.dim != 1 || s.cod.dim != 1)
        throw ShapeError(std::string(op) + ": not a scalar (endomorphism of the unit)");
}

void require_endo(const Mor& p, const char* op) {
    if (!(p.dom == p.cod)) throw ShapeError(std::string(op) + ": not an endomorphism");
}

void require_point(const Mor& v, const char* op) {
    if (v.dom.dim != 1) throw ShapeError(std::string(op) + ": not a global element");
}

} // namespace

Scalar scalar_of(const FdHilb& m, Complex z) {
    Matrix mat(1, 1, m.field());
    mat(0, 0) = z;
    return {m.unit(), m.unit(), std::move(mat)};
}

Complex scalar_value(const Scalar& s) {
    require_scalar(s, "scalar_value");
    return s.mat(0, 0);
}

Scalar scalar_mul(const FdHilb& m, const Scalar& w, const Scalar& z) {
    require_scalar(w, "scalar_mul");
    require_scalar(z, "scalar_mul");
    const Mor lu = m.left_unitor(m.unit()); // I (x) I -> I
    return m.compose(lu, m.compose(m.tensor(w, z), m.dagger(lu)));
}

Scalar scalar_add(const FdHilb& m, const Scalar& w, const Scalar& z) {
    require_scalar(w, "scalar_add");
    require_scalar(z, "scalar_add");
    const Mor i = m.injection_left(m.unit(), m.unit());
    const Mor j = m.injection_right(m.unit(), m.unit());
    // Codiagonal (i j) : I (+) I -> I, the cotuple of two identities.
    const Mor codiag = m.add(m.dagger(i), m.dagger(j));
    return m.compose(codiag, m.compose(m.direct_sum(w, z), m.dagger(codiag)));
}

Scalar scalar_involution(const FdHilb& m, const Scalar& z) {
    require_scalar(z, "scalar_involution");
    return m.dagger(z);
}

Scalar scalar_inverse(const FdHilb& m, const Scalar& z) {
    require_scalar(z, "scalar_inverse");
    const auto parts = m.image_factorization(z);
    if (parts.epi.cod.dim == 0)
        throw ZeroScalarError("scalar_inverse: the scalar is zero (its image is the zero object)");
    return scalar_of(m, 1.0 / scalar_value(z));
}

Mor scale_morphism(const FdHilb& m, const Scalar& z, const Mor& f) {
    require_scalar(z, "scale_morphism");
    return m.compose(m.left_unitor(f.cod),
                     m.compose(m.tensor(z, f), m.dagger(m.left_unitor(f.dom))));
}

Mor add_morphisms(const FdHilb& m, const Mor& f, const Mor& g) {
    if (!(f.dom == g.dom) || !(f.cod == g.cod))
        throw ShapeError("add_morphisms: morphisms are not parallel");
    const Mor il_dom = m.injection_left(f.dom, f.dom);
    const Mor ir_dom = m.injection_right(f.dom, f.dom);
    const Mor il_cod = m.injection_left(f.cod, f.cod);
    const Mor ir_cod = m.injection_right(f.cod, f.cod);
    const Mor diag = m.add(il_dom, ir_dom);                       // H -> H (+) H
    const Mor codiag = m.add(m.dagger(il_cod), m.dagger(ir_cod)); // K (+) K -> K
    return m.compose(codiag, m.compose(m.direct_sum(f, g), diag));
}

Complex inner_product(const FdHilb& m, const Mor& x, const Mor& y) {
    require_point(x, "inner_product");
    require_point(y, "inner_product");
    return scalar_value(m.compose(m.dagger(x), y));
}

Projection make_projection(const FdHilb& m, const Mor& p, double eps) {
    require_endo(p, "make_projection");
    if (m.rel_residual(m.dagger(p), p) > eps)
        throw ShapeError("make_projection: not self-adjoint within tolerance");
    if (m.rel_residual(m.compose(p, p), p) > eps)
        throw ShapeError("make_projection: not idempotent within tolerance");
    return {p};
}

Projection proj_identity(const FdHilb& m, Obj h) { return {m.identity(h)}; }

Projection proj_zero(const FdHilb& m, Obj h) { return {m.zero_mor(h, h)}; }

Projection proj_complement(const FdHilb& m, const Projection& p) {
    return {m.add(m.identity(p.mor.dom), m.scale(-1.0, p.mor))};
}

bool proj_leq(const FdHilb& m, const Projection& p, const Projection& q, double eps) {
    return m.rel_residual(m.compose(q.mor, p.mor), p.mor) <= eps;
}

Projection proj_meet(const FdHilb& m, const Projection& p, const Projection& q) {
    if (!(p.mor.dom == q.mor.dom)) throw ShapeError("proj_meet: projections on different spaces");
    // v lies in range(p) and range(q) iff both complements annihilate it, so
    // the meet projects onto the nullspace of the stacked complements.
    const Projection pc = proj_complement(m, p);
    const Projection qc = proj_complement(m, q);
    // The stacked complements have spectrum in {0, 1} up to numerical fuzz, so
    // anything at or below the working tolerance is noise, not rank.
    Matrix basis = fdhilb::nullspace_onb(vstack(pc.mor.mat, qc.mor.mat), m.tolerance(),
                                         m.tolerance().eps);
    Mor e{m.make_obj(basis.cols()), p.mor.dom, std::move(basis)};
    return {m.compose(e, m.dagger(e))};
}

Projection proj_join(const FdHilb& m, const Projection& p, const Projection& q) {
    return proj_complement(m, proj_meet(m, proj_complement(m, p), proj_complement(m, q)));
}

Projection proj_from_vector(const FdHilb& m, const Mor& h) {
    require_point(h, "proj_from_vector");
    const Scalar norm2 = m.compose(m.dagger(h), h);
    const Scalar inv = scalar_inverse(m, norm2); // throws for the zero element
    return {scale_morphism(m, inv, m.compose(h, m.dagger(h)))};
}

Projection proj_of_subspace(const FdHilb& m, const SubspaceONB& s) {
    return {m.compose(s.embedding, m.dagger(s.embedding))};
}

SubspaceONB subspace_of_proj(const FdHilb& m, const Projection& p) {
    Matrix basis = fdhilb::range_onb(p.mor.mat, m.tolerance());
    return {Mor{m.make_obj(basis.cols()), p.mor.dom, std::move(basis)}};
}

OrthoDecomp orthomodular_decompose(const FdHilb& m, const Projection& p, const Mor& v) {
    require_point(v, "orthomodular_decompose");
    if (!(v.cod == p.mor.dom))
        throw ShapeError("orthomodular_decompose: element and projection live on different spaces");
    return {m.compose(p.mor, v), m.compose(proj_complement(m, p).mor, v)};
}

StandardBasisDiagram build_standard_basis(const FdHilb& m, std::size_t n) {
    StandardBasisDiagram d;
    d.size = n;
    // Fold up the iterated biproduct 0, 0 (+) I, (0 (+) I) (+) I, ... and keep
    // every element aligned by post-composing with the left injections.
    d.total = m.zero_obj();
    for (std::size_t a = 0; a < n; ++a) {
        const Mor fresh = m.injection_right(d.total, m.unit()); // I -> X_a (+) I
        for (Mor& e : d.elements) e = m.compose(m.injection_left(d.total, m.unit()), e);
        d.elements.push_back(fresh);
        d.total = m.sum_obj(d.total, m.unit());
    }
    return d;
}

Mor subset_inclusion(const FdHilb& m, const StandardBasisDiagram& d, std::uint64_t r_mask,
                     std::uint64_t s_mask) {
    const std::uint64_t universe = d.size >= 64 ? ~std::uint64_t{0}
                                                : ((std::uint64_t{1} << d.size) - 1);
    if ((r_mask | universe) != universe || (s_mask | universe) != universe)
        throw ShapeError("subset_inclusion: mask exceeds the index set");
    if ((r_mask & ~s_mask) != 0)
        throw ShapeError("subset_inclusion: the source set is not contained in the target set");
    const std::size_t r_dim = static_cast<std::size_t>(std::popcount(r_mask));
    const std::size_t s_dim = static_cast<std::size_t>(std::popcount(s_mask));
    Matrix mat(s_dim, r_dim, m.field());
    std::size_t r_pos = 0;
    for (std::size_t x = 0; x < d.size; ++x) {
        if (!(r_mask >> x & 1)) continue;
        // Position of x inside S = number of S-members below x.
        const std::uint64_t below = s_mask & ((std::uint64_t{1} << x) - 1);
        mat(static_cast<std::size_t>(std::popcount(below)), r_pos) = 1.0;
        ++r_pos;
    }
    return {m.make_obj(r_dim), m.make_obj(s_dim), std::move(mat)};
}

bool basis_complete(const FdHilb& m, Obj h, const std::vector<Mor>& elements) {
    // Cotuple of the family as one morphism out of the sum of units.
    Matrix stacked(h.dim, elements.size(), m.field());
    for (std::size_t a = 0; a < elements.size(); ++a) {
        if (!(elements[a].cod == h) || elements[a].dom.dim != 1)
            throw ShapeError("basis_complete: family members must be global elements of the space");
        for (std::size_t r = 0; r < h.dim; ++r) stacked(r, a) = elements[a].mat(r, 0);
    }
    Mor cotuple{m.make_obj(elements.size()), h, std::move(stacked)};
    // v orthogonal to every member iff dagger(cotuple) kills it; completeness
    // says only zero does.
    return m.kernel(m.dagger(cotuple)).dom.dim == 0;
}

std::optional<Scalar> complex_witness(const FdHilb& m, double eps) {
    if (m.field() == Field::real) {
        // The involution is entrywise conjugation, which fixes every real
        // scalar, so no witness exists.
        return std::nullopt;
    }
    Scalar z = scalar_of(m, Complex{0.0, 1.0});
    if (m.rel_residual(z, m.dagger(z)) <= eps) return std::nullopt;
    return z;
}

} // namespace hilb::derived
