#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "valext/poly.hpp"
#include "valext/rational.hpp"

namespace valext {

// Finite model of a complete local ring: the quotient by the N-th power of
// the maximal ideal, with a deterministic monomial basis (ascending total
// degree, then descending lex in a configurable variable priority).  With the
// curve flag set the basis keeps only monomials of y-degree <= 1.
// Copies share the underlying basis, so jets and subspaces can carry their
// space by value.
class JetSpace {
public:
    JetSpace(std::vector<std::string> vars, int truncation, bool curve = false,
             std::vector<std::string> priority = {});

    const std::vector<std::string>& vars() const { return impl_->vars; }
    int truncation() const { return impl_->trunc; }
    bool curve() const { return impl_->curve; }
    int dim() const { return static_cast<int>(impl_->basis.size()); }

    const Exps& basis_monomial(int col) const { return impl_->basis[col]; }
    std::optional<int> column_of(const Exps& e) const;

    bool compatible(const JetSpace& other) const;

private:
    struct Impl {
        std::vector<std::string> vars;
        int trunc = 1;
        bool curve = false;
        std::vector<int> perm;  // priority position of each variable
        std::vector<Exps> basis;
        std::map<Exps, int> index;
    };
    std::shared_ptr<const Impl> impl_;
};

// column/value pairs sorted by column
using SparseVec = std::vector<std::pair<int, Rat>>;

SparseVec axpy(const SparseVec& v, const Rat& c, const SparseVec& w);  // v + c*w
SparseVec vec_scale(const SparseVec& v, const Rat& c);

// Rational row space in reduced row echelon form.  Rows are kept fully
// reduced and sorted by pivot column, so two equal subspaces have identical
// row lists regardless of the insertion order.
class Echelon {
public:
    // true if the rank grew
    bool insert(SparseVec row);
    // residual of v after eliminating every pivot; empty iff v is in the span
    SparseVec reduce(SparseVec v) const;
    bool contains(const SparseVec& v) const { return reduce(v).empty(); }
    bool contains(const Echelon& other) const;

    int rank() const { return static_cast<int>(rows_.size()); }
    const std::vector<SparseVec>& rows() const { return rows_; }

    bool operator==(const Echelon& other) const { return rows_ == other.rows_; }

private:
    std::vector<SparseVec> rows_;      // sorted by pivot column
    std::map<int, int> pivot_row_;     // pivot column -> index into rows_
};

class Jet;

// A linear subspace of a jet space; models an ideal of the truncated ring
// when built from generator multiples.
class Subspace {
public:
    explicit Subspace(const JetSpace& space) : space_(space) {}
    Subspace(const JetSpace& space, Echelon rows) : space_(space), ech_(std::move(rows)) {}

    const JetSpace& space() const { return space_; }
    const Echelon& echelon() const { return ech_; }
    Echelon& echelon() { return ech_; }
    int dim() const { return ech_.rank(); }
    bool is_zero() const { return ech_.rank() == 0; }
    bool is_full() const { return ech_.rank() == space_.dim(); }

    bool contains(const Subspace& other) const;
    bool operator==(const Subspace& other) const;

    // FNV-1a over the canonical row list; reports pair it with the dimension.
    std::uint64_t digest() const;
    std::string digest_hex() const;

private:
    JetSpace space_;
    Echelon ech_;
};

// Element of a jet space (coordinates in the space basis).
class Jet {
public:
    Jet(const JetSpace& space, SparseVec coords) : space_(space), coords_(std::move(coords)) {}

    static Jet from_poly(const JetSpace& space, const Poly& p);
    static Jet zero(const JetSpace& space) { return Jet(space, {}); }

    const JetSpace& space() const { return space_; }
    const SparseVec& coords() const { return coords_; }
    bool is_zero() const { return coords_.empty(); }

    Poly to_poly() const;

private:
    JetSpace space_;
    SparseVec coords_;
};

Jet jet_mul(const Jet& a, const Jet& b);
Jet jet_add(const Jet& a, const Jet& b);
Jet jet_scale(const Jet& a, const Rat& c);

SparseVec poly_to_vec(const JetSpace& space, const Poly& p);
Poly vec_to_poly(const JetSpace& space, const SparseVec& v);

// Row space of { g * m : g generator, m monomial, deg(g*m) < N }, i.e. the
// image of the ideal in the truncated ring.  Generators must be asserted to
// at least the space truncation.
Subspace ideal_to_subspace(const std::vector<Poly>& gens, int asserted_precision,
                           const JetSpace& space);

Subspace full_subspace(const JetSpace& space);
Subspace zero_subspace(const JetSpace& space);

Subspace intersect(const Subspace& a, const Subspace& b);
Subspace intersect(const std::vector<Subspace>& spaces);
Subspace subspace_sum(const Subspace& a, const Subspace& b);

bool member(const Jet& x, const Subspace& s);

// dim A - dim B; B must be contained in A.
int quotient_dim(const Subspace& a, const Subspace& b);

// All jets whose image under a linear map lands in a target subspace.
// The map is given column by column on the source basis.
Subspace kernel_of_map(const JetSpace& source,
                       const std::function<SparseVec(int)>& image_of_basis,
                       const Subspace& target_subspace);

// Same, with the map induced by substituting each source variable by a series
// in the target space variables (normal-formed when the target is a curve
// space).  Substitution images must carry enough precision for the target
// truncation.
Subspace kernel_of_substitution(const std::map<std::string, Series>& images,
                                const JetSpace& source, const Subspace& target_subspace);

}  // namespace valext
