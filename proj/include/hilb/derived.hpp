#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hilb/fdhilb.hpp"

namespace hilb::derived {

using fdhilb::FdHilb;
using fdhilb::Mor;
using fdhilb::Obj;

// Scalars are endomorphisms of the tensor unit. All field structure below is
// computed by composition with structural morphisms, not by arithmetic on the
// stored number; the numeric accessors exist to compare against the native
// field operations.
using Scalar = Mor;

Scalar scalar_of(const FdHilb& m, Complex z);
Complex scalar_value(const Scalar& s);

// Multiplication through the unit isomorphism: I -> I (x) I -> I.
Scalar scalar_mul(const FdHilb& m, const Scalar& w, const Scalar& z);
// Addition through the biproduct: I -> I (+) I -> I along the codiagonal.
Scalar scalar_add(const FdHilb& m, const Scalar& w, const Scalar& z);
// The involution is the dagger.
Scalar scalar_involution(const FdHilb& m, const Scalar& z);
// Inverse of a nonzero scalar. Zero-ness is decided categorically (the image
// factorization has a zero-dimensional middle object); the value is then
// inverted in the ground field. Throws ZeroScalarError.
Scalar scalar_inverse(const FdHilb& m, const Scalar& z);

// Scalar action on morphisms through the left unitors: z . f.
Mor scale_morphism(const FdHilb& m, const Scalar& z, const Mor& f);
// Addition of parallel morphisms through the diagonal and codiagonal.
Mor add_morphisms(const FdHilb& m, const Mor& f, const Mor& g);

// Inner product of global elements x, y : I -> H, conjugate-linear in x.
Complex inner_product(const FdHilb& m, const Mor& x, const Mor& y);

// Self-adjoint idempotent on a space.
struct Projection {
    Mor mor;
};

// Validates p = dagger(p) = p . p within eps.
Projection make_projection(const FdHilb& m, const Mor& p, double eps);
Projection proj_identity(const FdHilb& m, Obj h);
Projection proj_zero(const FdHilb& m, Obj h);
Projection proj_complement(const FdHilb& m, const Projection& p);
// Order: p <= q iff q . p = p.
bool proj_leq(const FdHilb& m, const Projection& p, const Projection& q, double eps);
// Meet via the joint nullspace of the two complements.
Projection proj_meet(const FdHilb& m, const Projection& p, const Projection& q);
// Join by De Morgan from the meet.
Projection proj_join(const FdHilb& m, const Projection& p, const Projection& q);
// Rank-one projection onto a nonzero global element:
// (h . dagger(h)) scaled by the inverse of the scalar dagger(h) . h.
Projection proj_from_vector(const FdHilb& m, const Mor& h);

// A closed subspace presented by an isometry whose range it is.
struct SubspaceONB {
    Mor embedding; // E -> H with dagger(embedding) . embedding = id
};

Projection proj_of_subspace(const FdHilb& m, const SubspaceONB& s);
SubspaceONB subspace_of_proj(const FdHilb& m, const Projection& p);

// v split against a projection: v = in_range + in_complement.
struct OrthoDecomp {
    Mor in_range;
    Mor in_complement;
};

OrthoDecomp orthomodular_decompose(const FdHilb& m, const Projection& p, const Mor& v);

// The object I^A for an index set of size n, built as an iterated biproduct
// of copies of the unit, together with its injection global elements.
struct StandardBasisDiagram {
    std::size_t size = 0;
    Obj total;
    std::vector<Mor> elements; // e_a : I -> I^A
};

StandardBasisDiagram build_standard_basis(const FdHilb& m, std::size_t n);

// Inclusion I^R -> I^S for subsets R subset-of S of the index set, encoded as
// bitmasks. Inclusions compose: i_{S,T} . i_{R,S} = i_{R,T}.
Mor subset_inclusion(const FdHilb& m, const StandardBasisDiagram& d, std::uint64_t r_mask,
                     std::uint64_t s_mask);

// Completeness of a family of global elements: only the zero element of
// C(I, H) is orthogonal to all of them. Decided through the kernel of the
// dagger of their cotuple.
bool basis_complete(const FdHilb& m, Obj h, const std::vector<Mor>& elements);

// Witness that some scalar differs from its involution (present over the
// complex field, provably absent over the reals).
std::optional<Scalar> complex_witness(const FdHilb& m, double eps);

} // namespace hilb::derived
