#include "doctest.h"

#include <cmath>

#include "hilb/derived.hpp"

using namespace hilb;
using namespace hilb::derived;

namespace {

const FdHilb R{Field::real};
const FdHilb C{Field::cplx};

Matrix real2(double a, double b, double c, double d) {
    Matrix m(2, 2, Field::real);
    m(0, 0) = a;
    m(0, 1) = b;
    m(1, 0) = c;
    m(1, 1) = d;
    return m;
}

Mor point(const FdHilb& m, const std::vector<double>& entries) {
    Matrix v(entries.size(), 1, m.field());
    for (std::size_t i = 0; i < entries.size(); ++i) v(i, 0) = entries[i];
    return Mor{m.unit(), m.make_obj(entries.size()), std::move(v)};
}

Mor diag(const FdHilb& m, const std::vector<double>& entries) {
    Matrix d(entries.size(), entries.size(), m.field());
    for (std::size_t i = 0; i < entries.size(); ++i) d(i, i) = entries[i];
    return Mor{m.make_obj(entries.size()), m.make_obj(entries.size()), std::move(d)};
}

} // namespace

TEST_CASE("scalars embed and project") {
    const Scalar two = scalar_of(R, 2.0);
    CHECK(scalar_value(two) == Complex{2.0});
    CHECK(two.dom.dim == 1);
    CHECK_THROWS_AS(scalar_of(R, Complex(0.0, 1.0)), FieldError);
    CHECK(scalar_value(scalar_of(C, Complex{1.5, -2.0})) == Complex{1.5, -2.0});
}

TEST_CASE("composite multiplication evaluates through the unit isomorphism") {
    CHECK(scalar_value(scalar_mul(R, scalar_of(R, 2.0), scalar_of(R, 3.0))) == Complex{6.0});
    // One is neutral and the operation commutes.
    const Scalar z = scalar_of(C, Complex{0.25, -1.0});
    CHECK(scalar_value(scalar_mul(C, scalar_of(C, 1.0), z)) == scalar_value(z));
    CHECK(scalar_value(scalar_mul(C, z, scalar_of(C, Complex{0.0, 2.0}))) ==
          scalar_value(scalar_mul(C, scalar_of(C, Complex{0.0, 2.0}), z)));
}

TEST_CASE("composite addition evaluates through the biproduct") {
    CHECK(scalar_value(scalar_add(R, scalar_of(R, 2.0), scalar_of(R, 3.0))) == Complex{5.0});
    CHECK(scalar_value(scalar_add(R, scalar_of(R, 0.0), scalar_of(R, 0.0))) == Complex{0.0});
    // Additive inverses exist.
    CHECK(scalar_value(scalar_add(R, scalar_of(R, 1.0), scalar_of(R, -1.0))) == Complex{0.0});
}

TEST_CASE("inverse and involution") {
    CHECK(scalar_value(scalar_inverse(R, scalar_of(R, 2.0))) == Complex{0.5});
    const Complex i{0.0, 1.0};
    CHECK(std::abs(scalar_value(scalar_inverse(C, scalar_of(C, i))) - Complex{0.0, -1.0}) <=
          1e-15);
    CHECK(scalar_value(scalar_involution(C, scalar_of(C, i))) == Complex{0.0, -1.0});
    CHECK(scalar_value(scalar_involution(R, scalar_of(R, 3.0))) == Complex{3.0});
    CHECK_THROWS_AS(scalar_inverse(R, scalar_of(R, 0.0)), ZeroScalarError);
}

TEST_CASE("composite scalar arithmetic matches the native field on random draws") {
    Rng rng(101);
    for (int t = 0; t < 200; ++t) {
        const Scalar w = C.random_mor(C.unit(), C.unit(), rng);
        const Scalar z = C.random_mor(C.unit(), C.unit(), rng);
        const Complex wv = scalar_value(w), zv = scalar_value(z);
        CHECK(std::abs(scalar_value(scalar_mul(C, w, z)) - wv * zv) <= 1e-12);
        CHECK(std::abs(scalar_value(scalar_add(C, w, z)) - (wv + zv)) <= 1e-12);
        CHECK(std::abs(scalar_value(scalar_involution(C, z)) - std::conj(zv)) <= 1e-12);
        if (std::abs(zv) > 1e-6)
            CHECK(std::abs(scalar_value(scalar_inverse(C, z)) - 1.0 / zv) <= 1e-12);
    }
}

TEST_CASE("the kernel of the sum map witnesses additive inverses") {
    // (i j) : I (+) I -> I is the 1x2 matrix [1 1]; its kernel is the line
    // spanned by (1, -1)/sqrt(2) -- nonzero exactly because 1 + (-1) = 0.
    const Mor codiag = R.add(R.dagger(R.injection_left(R.unit(), R.unit())),
                             R.dagger(R.injection_right(R.unit(), R.unit())));
    CHECK(codiag.mat(0, 0) == Complex{1.0});
    CHECK(codiag.mat(0, 1) == Complex{1.0});
    const Mor k = R.kernel(codiag);
    REQUIRE(k.dom.dim == 1);
    CHECK(rel_distance(k.mat * adjoint(k.mat), real2(0.5, -0.5, -0.5, 0.5)) <= 1e-10);
}

TEST_CASE("scalar action and addition on morphisms match entrywise arithmetic") {
    CHECK(scale_morphism(R, scalar_of(R, 2.0), R.identity(R.make_obj(2))).mat ==
          real2(2, 0, 0, 2));

    Rng rng(7);
    const Mor f = C.random_mor(C.make_obj(2), C.make_obj(3), rng);
    const Mor g = C.random_mor(C.make_obj(2), C.make_obj(3), rng);
    CHECK(scale_morphism(C, scalar_of(C, 1.0), f).mat == f.mat);
    CHECK(scale_morphism(C, scalar_of(C, 0.0), f).mat == C.zero_mor(f.dom, f.cod).mat);
    CHECK(add_morphisms(C, f, C.zero_mor(f.dom, f.cod)).mat == f.mat);
    CHECK(add_morphisms(C, f, scale_morphism(C, scalar_of(C, -1.0), f)).mat ==
          C.zero_mor(f.dom, f.cod).mat);

    Matrix one(1, 1, Field::real), twom(1, 1, Field::real);
    one(0, 0) = 1;
    twom(0, 0) = 2;
    CHECK(add_morphisms(R, Mor{R.unit(), R.unit(), one}, Mor{R.unit(), R.unit(), twom})
              .mat(0, 0) == Complex{3.0});

    // Vector-space axioms over the scalars.
    const Scalar w = C.random_mor(C.unit(), C.unit(), rng);
    const Scalar z = C.random_mor(C.unit(), C.unit(), rng);
    CHECK(C.rel_residual(scale_morphism(C, scalar_add(C, w, z), f),
                         add_morphisms(C, scale_morphism(C, w, f), scale_morphism(C, z, f))) <=
          1e-12);
    CHECK(C.rel_residual(scale_morphism(C, w, add_morphisms(C, f, g)),
                         add_morphisms(C, scale_morphism(C, w, f), scale_morphism(C, w, g))) <=
          1e-12);
    CHECK(C.rel_residual(scale_morphism(C, scalar_mul(C, w, z), f),
                         scale_morphism(C, w, scale_morphism(C, z, f))) <= 1e-12);
}

TEST_CASE("inner products of global elements") {
    const Mor x = point(R, {1, 2});
    const Mor y = point(R, {3, 4});
    CHECK(inner_product(R, x, y) == Complex{11.0});
    CHECK(inner_product(R, point(R, {1, 0}), point(R, {0, 1})) == Complex{0.0});
    CHECK(inner_product(R, point(R, {1, 0}), point(R, {1, 0})) == Complex{1.0});

    Rng rng(3);
    const Mor u = C.random_mor(C.unit(), C.make_obj(3), rng);
    const Mor v = C.random_mor(C.unit(), C.make_obj(3), rng);
    CHECK(std::abs(inner_product(C, u, v) - std::conj(inner_product(C, v, u))) <= 1e-14);
    CHECK(inner_product(C, u, u).real() > 0.0);
}

TEST_CASE("projection construction validates") {
    CHECK_THROWS_AS(make_projection(R, Mor{R.make_obj(2), R.make_obj(2), real2(1, 1, 0, 1)},
                                    1e-9),
                    ShapeError);
    const Projection p = make_projection(R, diag(R, {1, 0}), 1e-9);
    CHECK(p.mor.mat == real2(1, 0, 0, 0));
    CHECK(proj_identity(R, R.make_obj(2)).mor.mat == Matrix::identity(2, Field::real));
    CHECK(proj_zero(R, R.make_obj(2)).mor.mat == Matrix(2, 2, Field::real));
}

TEST_CASE("complement, order, meet, join on pinned projections") {
    const Projection p = make_projection(R, diag(R, {1, 0}), 1e-9);
    CHECK(proj_complement(R, p).mor.mat == real2(0, 0, 0, 1));
    CHECK(proj_complement(R, proj_identity(R, R.make_obj(2))).mor.mat ==
          Matrix(2, 2, Field::real));
    CHECK(proj_complement(R, proj_complement(R, p)).mor.mat == p.mor.mat);

    CHECK(proj_leq(R, make_projection(R, diag(R, {1, 0, 0}), 1e-9),
                   make_projection(R, diag(R, {1, 1, 0}), 1e-9), 1e-9));
    CHECK(proj_leq(R, p, p, 1e-9));
    CHECK_FALSE(proj_leq(R, p, make_projection(R, diag(R, {0, 1}), 1e-9), 1e-9));

    const Projection a = make_projection(R, diag(R, {1, 1, 0}), 1e-9);
    const Projection b = make_projection(R, diag(R, {1, 0, 1}), 1e-9);
    CHECK(R.rel_residual(proj_meet(R, a, b).mor,
                         make_projection(R, diag(R, {1, 0, 0}), 1e-9).mor) <= 1e-12);
    CHECK(R.rel_residual(proj_meet(R, a, a).mor, a.mor) <= 1e-12);
    CHECK(R.rel_residual(proj_meet(R, a, proj_complement(R, a)).mor,
                         R.zero_mor(a.mor.dom, a.mor.dom)) <= 1e-12);

    const Projection c = make_projection(R, diag(R, {1, 0, 0}), 1e-9);
    const Projection d = make_projection(R, diag(R, {0, 1, 0}), 1e-9);
    CHECK(R.rel_residual(proj_join(R, c, d).mor, a.mor) <= 1e-12);
    CHECK(R.rel_residual(proj_join(R, c, proj_zero(R, R.make_obj(3))).mor, c.mor) <= 1e-12);
    CHECK(R.rel_residual(proj_join(R, c, proj_complement(R, c)).mor,
                         R.identity(R.make_obj(3))) <= 1e-12);
}

TEST_CASE("rank-one projections from vectors") {
    const Projection half = proj_from_vector(R, point(R, {1, 1}));
    CHECK(rel_distance(half.mor.mat, real2(0.5, 0.5, 0.5, 0.5)) <= 1e-12);

    CHECK(proj_from_vector(R, point(R, {1, 0})).mor.mat == real2(1, 0, 0, 0));

    const Projection p34 = proj_from_vector(R, point(R, {3, 4}));
    CHECK(rel_distance(p34.mor.mat,
                       real2(9.0 / 25, 12.0 / 25, 12.0 / 25, 16.0 / 25)) <= 1e-12);
    const Mor h = point(R, {3, 4});
    CHECK(R.rel_residual(R.compose(p34.mor, h), h) <= 1e-12);

    CHECK_THROWS_AS(proj_from_vector(R, point(R, {0, 0})), ZeroScalarError);
}

TEST_CASE("projections correspond to closed subspaces") {
    const Projection p = make_projection(R, diag(R, {1, 0}), 1e-9);
    const SubspaceONB s = subspace_of_proj(R, p);
    CHECK(s.embedding.dom.dim == 1);
    CHECK(rel_distance(s.embedding.mat * adjoint(s.embedding.mat), p.mor.mat) <= 1e-12);
    CHECK(R.rel_residual(proj_of_subspace(R, s).mor, p.mor) <= 1e-12);

    CHECK(subspace_of_proj(R, proj_zero(R, R.make_obj(3))).embedding.dom.dim == 0);

    // Random rank-2 projection in dimension 4: round-trip within 1e-9.
    Rng rng(77);
    const Mor e = C.random_dagger_mono(C.make_obj(2), C.make_obj(4), rng);
    const Projection q{C.compose(e, C.dagger(e))};
    const SubspaceONB back = subspace_of_proj(C, q);
    CHECK(back.embedding.dom.dim == 2);
    CHECK(C.rel_residual(proj_of_subspace(C, back).mor, q.mor) <= 1e-9);

    // The backward direction equals the finite join of the rank-one
    // projections of the basis vectors.
    Projection joined = proj_zero(C, C.make_obj(4));
    for (std::size_t j = 0; j < 2; ++j) {
        const Mor v{C.unit(), C.make_obj(4), column(back.embedding.mat, j)};
        joined = proj_join(C, joined, proj_from_vector(C, v));
    }
    CHECK(C.rel_residual(joined.mor, q.mor) <= 1e-9);

    // Order isomorphism: containment of subspaces tracks the projection order.
    const Mor shrink = C.random_dagger_mono(C.make_obj(1), C.make_obj(2), rng);
    const Projection smaller{[&] {
        const Mor nested = C.compose(e, shrink);
        return C.compose(nested, C.dagger(nested));
    }()};
    CHECK(proj_leq(C, smaller, q, 1e-9));
    CHECK_FALSE(proj_leq(C, q, smaller, 1e-9));
    // Complements map to orthocomplement subspaces.
    const SubspaceONB comp = subspace_of_proj(C, proj_complement(C, q));
    CHECK(comp.embedding.dom.dim == 2);
    CHECK(fro_norm(adjoint(comp.embedding.mat) * back.embedding.mat) <= 1e-9);
}

TEST_CASE("orthomodular decomposition") {
    const Projection p = make_projection(R, diag(R, {1, 0}), 1e-9);
    const OrthoDecomp d = orthomodular_decompose(R, p, point(R, {1, 1}));
    CHECK(d.in_range.mat == point(R, {1, 0}).mat);
    CHECK(d.in_complement.mat == point(R, {0, 1}).mat);

    // A vector already in the range stays put.
    const OrthoDecomp fix = orthomodular_decompose(R, p, point(R, {2, 0}));
    CHECK(fix.in_range.mat == point(R, {2, 0}).mat);
    CHECK(fro_norm(fix.in_complement.mat) == 0.0);

    Rng rng(19);
    for (int t = 0; t < 30; ++t) {
        const Obj h = C.make_obj(4);
        const Mor e = C.random_dagger_mono(C.make_obj(2), h, rng);
        const Projection q{C.compose(e, C.dagger(e))};
        const Mor v = C.random_mor(C.unit(), h, rng);
        const OrthoDecomp dd = orthomodular_decompose(C, q, v);
        CHECK(C.rel_residual(add_morphisms(C, dd.in_range, dd.in_complement), v) <= 1e-12);
        CHECK(std::abs(inner_product(C, dd.in_range, dd.in_complement)) <= 1e-12);
    }
}

TEST_CASE("standard bases") {
    for (std::size_t n = 0; n <= 4; ++n) {
        const StandardBasisDiagram d = build_standard_basis(C, n);
        CHECK(d.size == n);
        CHECK(d.total.dim == n);
        REQUIRE(d.elements.size() == n);
        for (std::size_t a = 0; a < n; ++a) {
            CHECK(d.elements[a].mat == basis_column(n, a, Field::cplx));
            for (std::size_t b = 0; b < n; ++b) {
                const Complex g = inner_product(C, d.elements[a], d.elements[b]);
                CHECK(g == Complex{a == b ? 1.0 : 0.0}); // the Gram matrix is exact
            }
        }
        CHECK(basis_complete(C, d.total, d.elements));
    }

    // Dropping one element breaks completeness.
    StandardBasisDiagram d3 = build_standard_basis(C, 3);
    std::vector<Mor> partial(d3.elements.begin() + 1, d3.elements.end());
    CHECK_FALSE(basis_complete(C, d3.total, partial));
}

TEST_CASE("subset inclusions") {
    const StandardBasisDiagram d = build_standard_basis(R, 3);
    // R = {0, 2} inside S = {0, 1, 2}: columns are e_0 and e_2.
    const Mor i = subset_inclusion(R, d, 0b101, 0b111);
    REQUIRE(i.dom.dim == 2);
    CHECK(column(i.mat, 0) == basis_column(3, 0, Field::real));
    CHECK(column(i.mat, 1) == basis_column(3, 2, Field::real));
    CHECK(R.compose(R.dagger(i), i).mat == Matrix::identity(2, Field::real));

    // Composition law i_{S,T} . i_{R,S} = i_{R,T}.
    const Mor i_rs = subset_inclusion(R, d, 0b100, 0b101);
    CHECK(R.compose(i, i_rs).mat == subset_inclusion(R, d, 0b100, 0b111).mat);

    // Singleton inclusions are exactly the standard points.
    CHECK(subset_inclusion(R, d, 0b010, 0b111).mat == d.elements[1].mat);

    // Full set: the identity.
    CHECK(subset_inclusion(R, d, 0b111, 0b111).mat == Matrix::identity(3, Field::real));

    CHECK_THROWS_AS(subset_inclusion(R, d, 0b011, 0b001), ShapeError); // not a subset
    CHECK_THROWS_AS(subset_inclusion(R, d, 0b1000, 0b1111), ShapeError); // beyond the index set
}

TEST_CASE("a scalar differing from its involution exists only over the complex field") {
    const auto w = complex_witness(C, 1e-9);
    REQUIRE(w.has_value());
    CHECK(std::abs(scalar_value(*w) - scalar_value(scalar_involution(C, *w))) > 1e-9);

    CHECK_FALSE(complex_witness(R, 1e-9).has_value());
}
