#include "doctest.h"

#include <cmath>

#include "hilb/derived.hpp"
#include "hilb/equivalence.hpp"

using namespace hilb;
using namespace hilb::equiv;

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

} // namespace

TEST_CASE("the global-element functor acts as the identity on matrices") {
    // Composition against standard basis points recovers the payload exactly:
    // no floating-point operation beyond products with 0 and 1 is involved.
    CHECK(apply_functor(C, C.identity(C.make_obj(3))) == Matrix::identity(3, Field::cplx));

    Rng rng(11);
    const Mor f = C.random_mor(C.make_obj(2), C.make_obj(4), rng);
    CHECK(apply_functor(C, f) == f.mat);
    CHECK(apply_functor(C, C.dagger(f)) == adjoint(f.mat));

    const Mor z = R.zero_mor(R.make_obj(3), R.make_obj(2));
    CHECK(apply_functor(R, z) == z.mat);

    // Functoriality: images compose.
    const Mor g = C.random_mor(C.make_obj(4), C.make_obj(3), rng);
    CHECK(apply_functor(C, C.compose(g, f)) == apply_functor(C, g) * apply_functor(C, f));
}

TEST_CASE("faithfulness: distinct maps are separated by a basis point") {
    const Mor id2 = R.identity(R.make_obj(2));
    const Mor zero2 = R.zero_mor(R.make_obj(2), R.make_obj(2));
    const FaithfulnessReport rep = faithfulness_check(R, id2, zero2, 1e-9);
    CHECK_FALSE(rep.equal);
    REQUIRE(rep.witness.has_value());
    CHECK(R.rel_residual(R.compose(id2, *rep.witness), R.compose(zero2, *rep.witness)) >
          1e-9);

    const FaithfulnessReport same = faithfulness_check(R, id2, id2, 1e-9);
    CHECK(same.equal);
    CHECK_FALSE(same.witness.has_value());

    Rng rng(5);
    for (int t = 0; t < 50; ++t) {
        const Mor f = C.random_mor(C.make_obj(3), C.make_obj(3), rng);
        const Mor g = C.random_mor(C.make_obj(3), C.make_obj(3), rng);
        const FaithfulnessReport r = faithfulness_check(C, f, g, 1e-9);
        if (distance(f.mat, g.mat) > 1e-6) {
            CHECK_FALSE(r.equal);
            CHECK(r.witness.has_value());
        }
    }
}

TEST_CASE("isometries between coordinate spaces lift to morphisms") {
    const Mor lifted_id = lift_isometry(R, R.make_obj(2), R.make_obj(2),
                                        Matrix::identity(2, Field::real), 1e-9);
    CHECK(rel_distance(lifted_id.mat, Matrix::identity(2, Field::real)) <= 1e-12);

    const Matrix rot = real2(0, -1, 1, 0);
    const Mor lifted_rot = lift_isometry(R, R.make_obj(2), R.make_obj(2), rot, 1e-9);
    CHECK(rel_distance(lifted_rot.mat, rot) <= 1e-12);
    CHECK(rel_distance(apply_functor(R, lifted_rot), rot) <= 1e-12);

    // A strict inclusion of a plane into three-space.
    Matrix incl(3, 2, Field::real);
    incl(0, 0) = 1;
    incl(1, 1) = 1;
    const Mor lifted_incl = lift_isometry(R, R.make_obj(2), R.make_obj(3), incl, 1e-9);
    CHECK(rel_distance(apply_functor(R, lifted_incl), incl) <= 1e-12);
    CHECK(R.rel_residual(R.compose(R.dagger(lifted_incl), lifted_incl),
                         R.identity(R.make_obj(2))) <= 1e-12);

    Rng rng(23);
    for (int t = 0; t < 25; ++t) {
        const Obj h = C.make_obj(2), k = C.make_obj(4);
        const Matrix u = C.random_dagger_mono(h, k, rng).mat;
        const Mor lifted = lift_isometry(C, h, k, u, 1e-9);
        CHECK(rel_distance(apply_functor(C, lifted), u) <= 1e-9);
    }

    Matrix stretch(1, 1, Field::real);
    stretch(0, 0) = 2.0;
    CHECK_THROWS_AS(lift_isometry(R, R.make_obj(1), R.make_obj(1), stretch, 1e-9),
                    IsometryError);
    CHECK_THROWS_AS(lift_isometry(R, R.make_obj(2), R.make_obj(3),
                                  Matrix::identity(2, Field::real), 1e-9),
                    ShapeError);
}

TEST_CASE("the functor respects the additive and scalar structure") {
    Rng rng(31);
    const Mor f = C.random_mor(C.make_obj(3), C.make_obj(3), rng);
    const Mor g = C.random_mor(C.make_obj(3), C.make_obj(3), rng);
    const derived::Scalar z = derived::scalar_of(C, Complex{0.5, -2.0});
    CHECK(rel_distance(apply_functor(C, derived::add_morphisms(C, f, g)),
                       apply_functor(C, f) + apply_functor(C, g)) <= 1e-12);
    CHECK(rel_distance(apply_functor(C, derived::scale_morphism(C, z, f)),
                       Complex{0.5, -2.0} * apply_functor(C, f)) <= 1e-12);
}

TEST_CASE("the tensor comparison map is the identity grid") {
    CHECK(tensor_comparison(C, C.unit(), C.unit()) == Matrix::identity(1, Field::cplx));
    CHECK(tensor_comparison(C, C.make_obj(2), C.make_obj(3)) ==
          Matrix::identity(6, Field::cplx));

    for (std::size_t dh = 0; dh <= 4; ++dh)
        for (std::size_t dk = 0; dk <= 4; ++dk) {
            const Matrix cm = tensor_comparison(R, R.make_obj(dh), R.make_obj(dk));
            CHECK(distance(adjoint(cm) * cm, Matrix::identity(dh * dk, Field::real)) <=
                  1e-10);
            CHECK(distance(cm * adjoint(cm), Matrix::identity(dh * dk, Field::real)) <=
                  1e-10);
        }
}

TEST_CASE("monoidal coherence residuals vanish") {
    Rng rng(41);
    const CoherenceResiduals small =
        coherence_checks(C, C.make_obj(2), C.make_obj(2), C.make_obj(2), rng);
    CHECK(small.max() <= 1e-10);

    const CoherenceResiduals mixed =
        coherence_checks(C, C.make_obj(2), C.make_obj(3), C.make_obj(4), rng);
    CHECK(mixed.max() <= 1e-9);

    const CoherenceResiduals units =
        coherence_checks(R, R.unit(), R.unit(), R.unit(), rng);
    CHECK(units.max() <= 1e-14);
}

TEST_CASE("every object is its own dagger dual") {
    const DualityWitness one = dagger_dual(C, C.unit());
    CHECK(one.cup.mat == Matrix::identity(1, Field::cplx));
    CHECK(one.snake_left <= 1e-12);
    CHECK(one.snake_right <= 1e-12);

    const DualityWitness two = dagger_dual(R, R.make_obj(2));
    REQUIRE(two.cup.mat.rows() == 4);
    // sum over a of e_a (x) e_a = (1, 0, 0, 1)^T in the product ordering.
    CHECK(two.cup.mat(0, 0) == Complex{1.0});
    CHECK(two.cup.mat(1, 0) == Complex{0.0});
    CHECK(two.cup.mat(2, 0) == Complex{0.0});
    CHECK(two.cup.mat(3, 0) == Complex{1.0});
    CHECK(two.snake_left <= 1e-12);
    CHECK(two.snake_right <= 1e-12);

    for (std::size_t n = 0; n <= 8; ++n) {
        const DualityWitness w = dagger_dual(C, C.make_obj(n));
        CHECK(w.snake_left <= 1e-12);
        CHECK(w.snake_right <= 1e-12);
    }
}

TEST_CASE("square morphisms split as a mean of two unitaries") {
    Rng rng(53);
    for (int t = 0; t < 20; ++t) {
        const Mor f = C.random_mor(C.make_obj(3), C.make_obj(3), rng);
        const TwoUnitary d = two_unitary_decomposition(C, f);
        const Obj h = C.make_obj(3);
        CHECK(C.rel_residual(C.compose(C.dagger(d.u_plus), d.u_plus), C.identity(h)) <=
              1e-10);
        CHECK(C.rel_residual(C.compose(d.u_plus, C.dagger(d.u_plus)), C.identity(h)) <=
              1e-10);
        CHECK(C.rel_residual(C.compose(C.dagger(d.u_minus), d.u_minus), C.identity(h)) <=
              1e-10);
        const Mor mean = derived::scale_morphism(
            C, derived::scalar_of(C, d.coeff * 0.5),
            derived::add_morphisms(C, d.u_plus, d.u_minus));
        CHECK(C.rel_residual(mean, f) <= 1e-10);
    }

    // A 1 x 1 morphism is already a multiple of a unitary: both parts collapse.
    Matrix half(1, 1, Field::cplx);
    half(0, 0) = 0.5;
    const TwoUnitary d = two_unitary_decomposition(C, Mor{C.unit(), C.unit(), half});
    CHECK(std::abs(d.coeff - Complex{0.5}) <= 1e-12);
    CHECK(std::abs(d.u_plus.mat(0, 0) - Complex{1.0}) <= 1e-12);
    CHECK(std::abs(d.u_minus.mat(0, 0) - Complex{1.0}) <= 1e-12);

    // diag(1, 0.5) pins the opposite-phase formula s +- i sqrt(1 - s^2).
    Matrix dm(2, 2, Field::cplx);
    dm(0, 0) = 1.0;
    dm(1, 1) = 0.5;
    const TwoUnitary d2 =
        two_unitary_decomposition(C, Mor{C.make_obj(2), C.make_obj(2), dm});
    CHECK(std::abs(d2.coeff - Complex{1.0}) <= 1e-12);
    CHECK(std::abs(d2.u_plus.mat(1, 1) - Complex{0.5, std::sqrt(0.75)}) <= 1e-10);
    CHECK(std::abs(d2.u_minus.mat(1, 1) - Complex{0.5, -std::sqrt(0.75)}) <= 1e-10);
    CHECK(std::abs(d2.u_plus.mat(0, 1)) <= 1e-10);
    CHECK(std::abs(d2.u_plus.mat(1, 0)) <= 1e-10);

    // The zero map splits trivially with coefficient zero.
    const TwoUnitary z =
        two_unitary_decomposition(C, C.zero_mor(C.make_obj(2), C.make_obj(2)));
    CHECK(z.coeff == Complex{0.0});
    CHECK(C.rel_residual(C.compose(C.dagger(z.u_plus), z.u_plus),
                         C.identity(C.make_obj(2))) <= 1e-12);

    // Over the reals the mean-of-unitaries identity fails already for [0.5],
    // so the real model refuses.
    Matrix rhalf(1, 1, Field::real);
    rhalf(0, 0) = 0.5;
    CHECK_THROWS_AS(two_unitary_decomposition(R, Mor{R.unit(), R.unit(), rhalf}),
                    FieldError);

    CHECK_THROWS_AS(two_unitary_decomposition(C, C.zero_mor(C.make_obj(2), C.make_obj(3))),
                    ShapeError);
}
