#pragma once

#include <optional>

#include "hilb/fdhilb.hpp"
#include "hilb/rng.hpp"

namespace hilb::equiv {

using fdhilb::FdHilb;
using fdhilb::Mor;
using fdhilb::Obj;

// Matrix of the global-element functor on a morphism: column a holds the
// coordinates of f . e_a, computed by actual composition against the
// standard basis points of the domain.
Matrix apply_functor(const FdHilb& m, const Mor& f);

struct FaithfulnessReport {
    bool equal = false;         // the two maps agree within the tolerance
    std::optional<Mor> witness; // a basis point separating them otherwise
};

// Faithfulness evidence: distinct parallel maps are separated by some basis
// point. equal == false with an empty witness would be a faithfulness
// violation.
FaithfulnessReport faithfulness_check(const FdHilb& m, const Mor& f, const Mor& g, double eps);

// Fullness on isometries: given u (dim K x dim H) acting on global-element
// coordinates with adjoint(u) * u = id, produce the morphism H -> K whose
// functor image is u. Built as the cotuple of the image points composed with
// the dagger of the cotuple of the basis points. Throws IsometryError when u
// is not an isometry within eps.
Mor lift_isometry(const FdHilb& m, Obj h, Obj k, const Matrix& u, double eps);

// Comparison map F(H) (x) F(K) -> F(H (x) K): column (a, b) holds the
// coordinates of e_a (x) e_b.
Matrix tensor_comparison(const FdHilb& m, Obj h, Obj k);

struct CoherenceResiduals {
    double comparison_unitary = 0.0; // both unitarity defects of the comparison
    double naturality = 0.0;         // comparison against a random pair of maps
    double symmetry_square = 0.0;    // comparison intertwines the symmetries
    double associator_square = 0.0;  // comparison intertwines the associators

    double max() const {
        double r = comparison_unitary;
        r = r < naturality ? naturality : r;
        r = r < symmetry_square ? symmetry_square : r;
        return r < associator_square ? associator_square : r;
    }
};

CoherenceResiduals coherence_checks(const FdHilb& m, Obj h, Obj k, Obj l, Rng& rng);

struct DualityWitness {
    Mor cup;                  // I -> H (x) H, the sum of e_a (x) e_a
    double snake_left = 0.0;  // residual of each snake composite against id_H
    double snake_right = 0.0;
};

// Self-duality of an object through its cup and cap (the cap is the dagger of
// the cup); the two snake composites must be the identity.
DualityWitness dagger_dual(const FdHilb& m, Obj h);

struct TwoUnitary {
    Complex coeff;
    Mor u_plus;
    Mor u_minus;
};

// Splits a square morphism as coeff * (u_plus + u_minus) / 2 with both parts
// unitary, via the singular value decomposition and opposite phases. Complex
// field only: over the reals a generic contraction is not the mean of two
// orthogonal maps (already the 1 x 1 case [0.5] fails), so the real model
// rejects the request instead of pretending.
TwoUnitary two_unitary_decomposition(const FdHilb& m, const Mor& f);

} // namespace hilb::equiv
