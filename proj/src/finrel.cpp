#include "hilb/finrel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace hilb::finrel {

BoolMatrix BoolMatrix::identity(std::size_t n) {
    BoolMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

BoolMatrix bool_product(const BoolMatrix& a, const BoolMatrix& b) {
    if (a.cols() != b.rows()) throw ShapeError("bool_product: inner dimensions differ");
    BoolMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            bool v = false;
            for (std::size_t k = 0; k < a.cols() && !v; ++k) v = a.at(i, k) && b.at(k, j);
            c.set(i, j, v);
        }
    return c;
}

BoolMatrix bool_or(const BoolMatrix& a, const BoolMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeError("bool_or: shape mismatch");
    BoolMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c.set(i, j, a.at(i, j) || b.at(i, j));
    return c;
}

BoolMatrix converse(const BoolMatrix& a) {
    BoolMatrix c(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c.set(j, i, a.at(i, j));
    return c;
}

BoolMatrix bool_kron(const BoolMatrix& a, const BoolMatrix& b) {
    BoolMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (!a.at(i, j)) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    c.set(i * b.rows() + k, j * b.cols() + l, b.at(k, l));
        }
    return c;
}

BoolMatrix bool_dsum(const BoolMatrix& a, const BoolMatrix& b) {
    BoolMatrix c(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c.set(i, j, a.at(i, j));
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) c.set(a.rows() + i, a.cols() + j, b.at(i, j));
    return c;
}

std::string to_grid(const BoolMatrix& a) {
    std::string out = std::to_string(a.rows()) + " " + std::to_string(a.cols()) + "\n";
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) out += a.at(i, j) ? '1' : '0';
        out += '\n';
    }
    return out;
}

BoolMatrix from_grid(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::size_t rows = 0, cols = 0;
    if (!(in >> rows >> cols)) throw ParseError("missing grid header 'rows cols'");
    BoolMatrix m(rows, cols);
    std::string line;
    for (std::size_t i = 0; i < rows; ++i) {
        if (!(in >> line) || line.size() != cols)
            throw ParseError("grid row " + std::to_string(i) + " is missing or has wrong length");
        for (std::size_t j = 0; j < cols; ++j) {
            if (line[j] != '0' && line[j] != '1') throw ParseError("grid cells must be 0 or 1");
            m.set(i, j, line[j] == '1');
        }
    }
    if (in >> line) throw ParseError("trailing content after grid body");
    return m;
}

Mor::Mor(Obj dom_, Obj cod_, BoolMatrix rel_) : dom(dom_), cod(cod_), rel(std::move(rel_)) {
    if (rel.rows() != cod.dim || rel.cols() != dom.dim)
        throw ShapeError("relation grid is " + std::to_string(rel.rows()) + "x" +
                         std::to_string(rel.cols()) + " but maps carrier " +
                         std::to_string(dom.dim) + " to carrier " + std::to_string(cod.dim));
}

void FinRel::require_parallel(const Mor& f, const Mor& g, const char* op) const {
    if (!(f.dom == g.dom) || !(f.cod == g.cod))
        throw ShapeError(std::string(op) + ": relations are not parallel");
}

Mor FinRel::identity(Obj h) const { return {h, h, BoolMatrix::identity(h.dim)}; }

Mor FinRel::zero_mor(Obj dom, Obj cod) const { return {dom, cod, BoolMatrix(cod.dim, dom.dim)}; }

Mor FinRel::compose(const Mor& g, const Mor& f) const {
    if (!(f.cod == g.dom)) throw ShapeError("compose: codomain/domain mismatch");
    return {f.dom, g.cod, bool_product(g.rel, f.rel)};
}

Mor FinRel::dagger(const Mor& f) const { return {f.cod, f.dom, converse(f.rel)}; }

Mor FinRel::add(const Mor& f, const Mor& g) const {
    require_parallel(f, g, "add");
    return {f.dom, f.cod, bool_or(f.rel, g.rel)};
}

Mor FinRel::tensor(const Mor& f, const Mor& g) const {
    return {tensor_obj(f.dom, g.dom), tensor_obj(f.cod, g.cod), bool_kron(f.rel, g.rel)};
}

Mor FinRel::direct_sum(const Mor& f, const Mor& g) const {
    return {sum_obj(f.dom, g.dom), sum_obj(f.cod, g.cod), bool_dsum(f.rel, g.rel)};
}

Mor FinRel::injection_left(Obj h, Obj k) const {
    BoolMatrix m(h.dim + k.dim, h.dim);
    for (std::size_t i = 0; i < h.dim; ++i) m.set(i, i, true);
    return {h, sum_obj(h, k), std::move(m)};
}

Mor FinRel::injection_right(Obj h, Obj k) const {
    BoolMatrix m(h.dim + k.dim, k.dim);
    for (std::size_t i = 0; i < k.dim; ++i) m.set(h.dim + i, i, true);
    return {k, sum_obj(h, k), std::move(m)};
}

// The pairing convention (a, b) -> a * |B| + b makes the associator and the
// unitors identity relations; the symmetry is a genuine permutation.
Mor FinRel::associator(Obj h, Obj k, Obj l) const {
    Obj lhs = tensor_obj(tensor_obj(h, k), l);
    Obj rhs = tensor_obj(h, tensor_obj(k, l));
    return {lhs, rhs, BoolMatrix::identity(lhs.dim)};
}

Mor FinRel::left_unitor(Obj h) const { return {tensor_obj(unit(), h), h, BoolMatrix::identity(h.dim)}; }

Mor FinRel::right_unitor(Obj h) const { return {tensor_obj(h, unit()), h, BoolMatrix::identity(h.dim)}; }

Mor FinRel::symmetry(Obj h, Obj k) const {
    BoolMatrix m(k.dim * h.dim, h.dim * k.dim);
    for (std::size_t a = 0; a < h.dim; ++a)
        for (std::size_t b = 0; b < k.dim; ++b) m.set(b * h.dim + a, a * k.dim + b, true);
    return {tensor_obj(h, k), tensor_obj(k, h), std::move(m)};
}

namespace {

constexpr std::size_t kMaxSearchBound = 4;

std::string cost_estimate_text(std::size_t dom, std::size_t bound) {
    long double total = 0.0L;
    for (std::size_t s = 0; s <= bound; ++s) total += std::pow(2.0L, static_cast<long double>(s * dom));
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3Lg", total);
    return buf;
}

} // namespace

EqualiserSearchResult equaliser_search(const Mor& f, const Mor& g, std::size_t max_size,
                                       bool dagger_only) {
    if (!(f.dom == g.dom) || !(f.cod == g.cod))
        throw ShapeError("equaliser_search: relations are not parallel");
    const std::size_t h = f.dom.dim;
    const std::size_t k = f.cod.dim;
    if (max_size > kMaxSearchBound)
        throw SearchBoundError("equaliser search bound " + std::to_string(max_size) +
                               " exceeds the supported maximum " + std::to_string(kMaxSearchBound) +
                               "; an exhaustive pass would enumerate about " +
                               cost_estimate_text(h, max_size) + " candidate relations");
    if (h > 12 || k > 62)
        throw SearchBoundError("equaliser search carriers too large (domain " + std::to_string(h) +
                               ", codomain " + std::to_string(k) + "); about " +
                               cost_estimate_text(h, max_size) + " candidate relations");

    // Column x of f viewed as a subset of the codomain carrier.
    std::vector<std::uint64_t> fcol(h, 0), gcol(h, 0);
    for (std::size_t x = 0; x < h; ++x)
        for (std::size_t y = 0; y < k; ++y) {
            if (f.rel.at(y, x)) fcol[x] |= (1ull << y);
            if (g.rel.at(y, x)) gcol[x] |= (1ull << y);
        }

    // T is a cone column iff the f- and g-images of T agree. Cone columns are
    // closed under union (images distribute over unions), which is what makes
    // the per-column counting below a complete decision procedure.
    const std::size_t nsub = std::size_t{1} << h;
    std::vector<std::uint64_t> fimg(nsub, 0), gimg(nsub, 0);
    std::vector<std::uint8_t> cone(nsub, 0);
    cone[0] = 1;
    for (std::size_t t = 1; t < nsub; ++t) {
        const std::size_t low = static_cast<std::size_t>(std::countr_zero(t));
        fimg[t] = fimg[t & (t - 1)] | fcol[low];
        gimg[t] = gimg[t & (t - 1)] | gcol[low];
        cone[t] = fimg[t] == gimg[t] ? 1 : 0;
    }

    EqualiserSearchResult result;
    result.bound = max_size;
    const std::uint64_t hmask = (h == 0) ? 0 : ((std::uint64_t{1} << h) - 1);

    std::vector<std::uint64_t> cols;
    std::vector<std::uint32_t> count(nsub, 0);
    std::vector<std::size_t> unions;

    for (std::size_t s = 0; s <= max_size; ++s) {
        const std::uint64_t total = std::uint64_t{1} << (s * h);
        // Descending enumeration: when several equalisers exist at this apex
        // size, the one whose columns sit highest comes first; for a pair
        // with f = g that is exactly the identity relation.
        for (std::uint64_t cand = total; cand-- > 0;) {
            ++result.candidates_examined;
            cols.assign(s, 0);
            bool viable = true;
            std::uint64_t used = 0;
            for (std::size_t q = 0; q < s && viable; ++q) {
                cols[q] = (cand >> (q * h)) & hmask;
                if (!cone[cols[q]]) viable = false;
                if (dagger_only) {
                    // A dagger mono has nonempty, pairwise disjoint columns.
                    if (cols[q] == 0 || (cols[q] & used) != 0) viable = false;
                    used |= cols[q];
                }
            }
            if (!viable) continue;

            // The universal property holds iff every cone column is the union
            // of exactly one subset of candidate columns. Sufficiency for
            // cones with arbitrary apexes follows because cone rows factor
            // independently; necessity is the one-element-apex case.
            unions.clear();
            std::vector<std::uint64_t> un(std::size_t{1} << s, 0);
            bool universal = true;
            for (std::uint64_t sub = 0; sub < (std::uint64_t{1} << s); ++sub) {
                if (sub) {
                    const unsigned low = static_cast<unsigned>(std::countr_zero(sub));
                    un[sub] = un[sub & (sub - 1)] | cols[low];
                }
                const std::size_t target = static_cast<std::size_t>(un[sub]);
                if (++count[target] > 1) universal = false;
                unions.push_back(target);
            }
            if (universal) {
                for (std::size_t t = 0; t < nsub && universal; ++t)
                    if (cone[t] && count[t] != 1) universal = false;
            }
            for (std::size_t t : unions) count[t] = 0; // reset the scratch counts
            if (!universal) continue;

            BoolMatrix rel(h, s);
            for (std::size_t q = 0; q < s; ++q)
                for (std::size_t x = 0; x < h; ++x)
                    if (cols[q] & (1ull << x)) rel.set(x, q, true);
            result.found = true;
            result.equaliser.emplace(Obj{s}, f.dom, std::move(rel));
            return result;
        }
    }
    return result;
}

std::optional<Mor> FinRel::equaliser(const Mor& f, const Mor& g) const {
    const std::size_t h = f.dom.dim;
    if (h > max_dim)
        throw SearchBoundError("dagger equaliser search requires a domain carrier of at most " +
                               std::to_string(max_dim) + ", got " + std::to_string(h));
    // Any dagger mono into the domain has at most |dom| apex elements, so the
    // bound |dom| makes the negative answer exhaustive.
    EqualiserSearchResult r = equaliser_search(f, g, h, /*dagger_only=*/true);
    if (!r.found) return std::nullopt;
    return std::move(r.equaliser);
}

std::vector<Mor> FinRel::basis_global_elements(Obj h) const {
    std::vector<Mor> out;
    out.reserve(h.dim);
    for (std::size_t a = 0; a < h.dim; ++a) {
        BoolMatrix m(h.dim, 1);
        m.set(a, 0, true);
        out.push_back({unit(), h, std::move(m)});
    }
    return out;
}

Mor FinRel::random_mor(Obj dom, Obj cod, Rng& rng) const {
    BoolMatrix m(cod.dim, dom.dim);
    for (std::size_t i = 0; i < cod.dim; ++i)
        for (std::size_t j = 0; j < dom.dim; ++j) m.set(i, j, rng.coin());
    return {dom, cod, std::move(m)};
}

Mor FinRel::random_dagger_mono(Obj dom, Obj cod, Rng& rng) const {
    if (dom.dim > cod.dim) throw ShapeError("random_dagger_mono: domain exceeds codomain");
    std::vector<std::size_t> targets(cod.dim);
    for (std::size_t i = 0; i < cod.dim; ++i) targets[i] = i;
    for (std::size_t q = 0; q < dom.dim; ++q) {
        const std::size_t pick = static_cast<std::size_t>(rng.uniform_index(q, cod.dim - 1));
        std::swap(targets[q], targets[pick]);
    }
    BoolMatrix m(cod.dim, dom.dim);
    for (std::size_t q = 0; q < dom.dim; ++q) m.set(targets[q], q, true);
    return {dom, cod, std::move(m)};
}

Mor FinRel::random_dagger_iso(Obj h, Rng& rng) const { return random_dagger_mono(h, h, rng); }

double FinRel::distance(const Mor& f, const Mor& g) const {
    require_parallel(f, g, "distance");
    double diff = 0.0;
    for (std::size_t i = 0; i < f.rel.rows(); ++i)
        for (std::size_t j = 0; j < f.rel.cols(); ++j)
            if (f.rel.at(i, j) != g.rel.at(i, j)) diff += 1.0;
    return diff;
}

std::optional<std::pair<Mor, Mor>> FinRel::equaliser_witness_pair() const {
    Obj two{2}, one{1};
    BoolMatrix total(1, 2);
    total.set(0, 0, true);
    total.set(0, 1, true);
    BoolMatrix partial(1, 2);
    partial.set(0, 0, true);
    return std::make_pair(Mor{two, one, std::move(total)}, Mor{two, one, std::move(partial)});
}

bool FinRel::unit_is_simple(double eps, std::string* detail) const {
    (void)eps; // everything here is exact
    // Enumerate all relations m : S -> unit and record which apex sizes admit
    // a dagger mono (converse(m) * m == id_S). Simplicity of the unit means
    // exactly the sizes 0 and 1 occur, and they are genuinely distinct.
    std::vector<std::size_t> admitting;
    for (std::size_t s = 0; s <= 3; ++s) {
        bool any = false;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << s) && !any; ++mask) {
            BoolMatrix m(1, s);
            for (std::size_t q = 0; q < s; ++q) m.set(0, q, (mask >> q) & 1);
            any = bool_product(converse(m), m) == BoolMatrix::identity(s);
        }
        if (any) admitting.push_back(s);
    }
    const bool simple = admitting == std::vector<std::size_t>{0, 1};
    if (detail) {
        std::string sizes;
        for (std::size_t s : admitting) sizes += (sizes.empty() ? "" : ", ") + std::to_string(s);
        *detail = simple ? "unit subobject carriers are exactly {0, 1} (exhaustive up to 3)"
                         : "unit subobject carriers found: {" + sizes + "}";
    }
    return simple;
}

ScalarFieldVerdict scalar_field_check_rel() {
    FinRel m;
    const Obj one_obj = m.unit();
    const Mor id1 = m.identity(one_obj);
    const Mor zero = m.zero_mor(one_obj, one_obj);
    const Mor inl = m.injection_left(one_obj, one_obj);
    const Mor inr = m.injection_right(one_obj, one_obj);
    // Codiagonal (cotuple of two identities) and its dagger give addition;
    // the unitors give multiplication.
    const Mor codiag = m.add(m.compose(id1, m.dagger(inl)), m.compose(id1, m.dagger(inr)));
    auto add = [&](const Mor& w, const Mor& z) {
        return m.compose(codiag, m.compose(m.direct_sum(w, z), m.dagger(codiag)));
    };
    auto mul = [&](const Mor& w, const Mor& z) {
        const Mor lu = m.left_unitor(one_obj);
        return m.compose(lu, m.compose(m.tensor(w, z), m.dagger(lu)));
    };
    auto name = [&](const Mor& s) { return s.rel.at(0, 0) ? "1" : "0"; };

    ScalarFieldVerdict verdict;
    const Mor scalars[2] = {zero, id1};
    std::string table = "addition: ";
    for (const Mor& w : scalars)
        for (const Mor& z : scalars)
            table += std::string(name(w)) + "+" + name(z) + "=" + name(add(w, z)) + " ";
    table += "| multiplication: ";
    for (const Mor& w : scalars)
        for (const Mor& z : scalars)
            table += std::string(name(w)) + "*" + name(z) + "=" + name(mul(w, z)) + " ";
    verdict.summary = table;
    verdict.one_plus_one_is_one = m.approx_equal(add(id1, id1), id1, 0.0);

    bool has_inverse = false;
    for (const Mor& x : scalars)
        if (m.approx_equal(add(id1, x), zero, 0.0)) has_inverse = true;
    verdict.is_field = has_inverse; // additive inverses already fail; nothing else matters
    if (!has_inverse)
        verdict.witness = "no scalar x satisfies 1 + x = 0 (1+0 = 1 and 1+1 = 1): addition is "
                          "idempotent union, so 1 has no additive inverse";
    return verdict;
}

} // namespace hilb::finrel
