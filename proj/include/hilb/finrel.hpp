#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hilb/errors.hpp"
#include "hilb/rng.hpp"

namespace hilb::finrel {

// Matrix over the Boolean semiring ({0,1}, or, and). Rows index the codomain
// carrier, columns the domain carrier, so composition is the usual product
// with (or, and) in place of (+, *).
class BoolMatrix {
public:
    BoolMatrix() = default;
    BoolMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    static BoolMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c] != 0; }
    void set(std::size_t r, std::size_t c, bool v) { data_[r * cols_ + c] = v ? 1 : 0; }

    friend bool operator==(const BoolMatrix&, const BoolMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::uint8_t> data_;
};

BoolMatrix bool_product(const BoolMatrix& a, const BoolMatrix& b);
BoolMatrix bool_or(const BoolMatrix& a, const BoolMatrix& b);
BoolMatrix converse(const BoolMatrix& a);
BoolMatrix bool_kron(const BoolMatrix& a, const BoolMatrix& b);
BoolMatrix bool_dsum(const BoolMatrix& a, const BoolMatrix& b);

// Grid text: header "rows cols", then one line of 0/1 characters per row.
std::string to_grid(const BoolMatrix& a);
BoolMatrix from_grid(std::string_view text);

// Finite carrier set {0, ..., dim-1}.
struct Obj {
    std::size_t dim = 0;

    friend bool operator==(const Obj&, const Obj&) = default;
};

// Relation dom -> cod, stored as its cod.dim x dom.dim incidence grid.
struct Mor {
    Obj dom;
    Obj cod;
    BoolMatrix rel;

    Mor(Obj dom_, Obj cod_, BoolMatrix rel_);
};

struct EqualiserSearchResult {
    bool found = false;
    std::optional<Mor> equaliser;
    std::size_t bound = 0;               // largest apex size that was searched
    std::uint64_t candidates_examined = 0;
};

// Exhaustive search for an equaliser of the parallel pair (f, g) over apexes
// of size 0..max_size. A returned relation is a fully verified equaliser: the
// universal property is decided exactly (cone columns are closed under union,
// so per-column factorization counts settle it for cones of every apex size).
// A negative answer only rules out apexes up to the bound. With dagger_only
// set, candidates are restricted to dagger monos, i.e. partitions of a subset
// of the domain; a negative answer then rules out dagger equalisers outright
// whenever max_size >= |dom|, because a dagger mono into dom has at most
// |dom| apex elements. Bounds beyond 4 are refused with a cost estimate.
EqualiserSearchResult equaliser_search(const Mor& f, const Mor& g, std::size_t max_size,
                                       bool dagger_only = false);

struct ScalarFieldVerdict {
    bool is_field = false;
    bool one_plus_one_is_one = false;
    std::string witness; // why no additive inverse exists
    std::string summary; // the computed scalar tables
};

// Evaluates the scalar composites (addition through the biproduct, product
// through the unitors) on the two relational scalars and reports why they do
// not form a field.
ScalarFieldVerdict scalar_field_check_rel();

// Dagger category of finite sets and relations: converse as dagger, disjoint
// union as biproduct, cartesian product as tensor. Dagger equalisers and
// field-like scalar structure genuinely fail here, which makes the model a
// controlled counterexample for the axiom checks.
class FinRel {
public:
    using Obj = finrel::Obj;
    using Mor = finrel::Mor;

    // Carrier cap for directly constructed objects (search costs are
    // exponential in carrier sizes).
    static constexpr std::size_t max_dim = 4;

    Obj make_obj(std::size_t dim) const { return {dim}; }
    Obj unit() const { return {1}; }
    Obj zero_obj() const { return {0}; }
    Obj tensor_obj(Obj a, Obj b) const { return {a.dim * b.dim}; }
    Obj sum_obj(Obj a, Obj b) const { return {a.dim + b.dim}; }

    Mor identity(Obj h) const;
    Mor zero_mor(Obj dom, Obj cod) const;
    Mor compose(const Mor& g, const Mor& f) const;
    Mor dagger(const Mor& f) const;
    Mor add(const Mor& f, const Mor& g) const; // union of relations

    Mor tensor(const Mor& f, const Mor& g) const;
    Mor direct_sum(const Mor& f, const Mor& g) const;
    Mor injection_left(Obj h, Obj k) const;
    Mor injection_right(Obj h, Obj k) const;

    Mor associator(Obj h, Obj k, Obj l) const;
    Mor left_unitor(Obj h) const;
    Mor right_unitor(Obj h) const;
    Mor symmetry(Obj h, Obj k) const;

    // Dagger-mono-restricted exhaustive search; carrier must be at most
    // max_dim. nullopt is a proof that no dagger equaliser exists.
    std::optional<Mor> equaliser(const Mor& f, const Mor& g) const;

    std::vector<Mor> basis_global_elements(Obj h) const; // singleton subsets

    Mor random_mor(Obj dom, Obj cod, Rng& rng) const;          // iid Bernoulli(1/2) cells
    Mor random_dagger_mono(Obj dom, Obj cod, Rng& rng) const;  // injective function graph
    Mor random_dagger_iso(Obj h, Rng& rng) const;              // permutation graph

    double distance(const Mor& f, const Mor& g) const; // differing cell count
    double rel_residual(const Mor& f, const Mor& g) const { return distance(f, g) > 0 ? 1.0 : 0.0; }
    bool approx_equal(const Mor& f, const Mor& g, double) const { return distance(f, g) == 0; }

    std::string describe(const Mor& f) const { return to_grid(f.rel); }

    // Designated parallel pair with no equaliser at any apex size: the total
    // relation {0,1} -> {*} against the partial one containing only (0, *).
    std::optional<std::pair<Mor, Mor>> equaliser_witness_pair() const;

    // Exhaustively enumerates dagger subobjects of the unit (apex <= 3).
    bool unit_is_simple(double eps, std::string* detail = nullptr) const;

private:
    void require_parallel(const Mor& f, const Mor& g, const char* op) const;
};

} // namespace hilb::finrel
