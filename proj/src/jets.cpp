#include "valext/jets.hpp"

#include <algorithm>
#include <sstream>

#include "valext/errors.hpp"
#include "valext/prng.hpp"

namespace valext {

namespace {

// ascending total degree, then descending lex after permuting exponents into
// priority order
struct ColumnLess {
    const std::vector<int>* perm;
    bool operator()(const Exps& a, const Exps& b) const {
        int da = total_degree(a), db = total_degree(b);
        if (da != db) return da < db;
        for (size_t k = 0; k < perm->size(); ++k) {
            int i = (*perm)[k];
            if (a[i] != b[i]) return a[i] > b[i];
        }
        return false;
    }
};

}  // namespace

JetSpace::JetSpace(std::vector<std::string> vars, int truncation, bool curve,
                   std::vector<std::string> priority) {
    auto impl = std::make_shared<Impl>();
    impl->vars = std::move(vars);
    impl->trunc = truncation;
    impl->curve = curve;
    if (impl->trunc < 1) throw shape_error("jet space needs truncation >= 1");
    if (priority.empty()) priority = impl->vars;
    if (priority.size() != impl->vars.size()) throw shape_error("priority list mismatch");
    for (const auto& name : priority) {
        auto it = std::find(impl->vars.begin(), impl->vars.end(), name);
        if (it == impl->vars.end())
            throw shape_error("priority names unknown variable " + name);
        impl->perm.push_back(static_cast<int>(it - impl->vars.begin()));
    }
    int y_index = -1;
    if (impl->curve) {
        auto it = std::find(impl->vars.begin(), impl->vars.end(), "y");
        if (it == impl->vars.end()) throw shape_error("curve space needs a variable named y");
        y_index = static_cast<int>(it - impl->vars.begin());
    }

    // enumerate monomials of total degree < N (with y-degree <= 1 on curves)
    std::vector<Exps> all;
    Exps cur(impl->vars.size(), 0);
    std::function<void(size_t, int)> rec = [&](size_t i, int remaining) {
        if (i == impl->vars.size()) {
            all.push_back(cur);
            return;
        }
        int cap = remaining;
        if (impl->curve && static_cast<int>(i) == y_index) cap = std::min(cap, 1);
        for (int e = 0; e <= cap; ++e) {
            cur[i] = e;
            rec(i + 1, remaining - e);
            cur[i] = 0;
        }
    };
    rec(0, impl->trunc - 1);
    std::sort(all.begin(), all.end(), ColumnLess{&impl->perm});
    impl->basis = std::move(all);
    for (int i = 0; i < static_cast<int>(impl->basis.size()); ++i)
        impl->index[impl->basis[i]] = i;
    impl_ = std::move(impl);
}

std::optional<int> JetSpace::column_of(const Exps& e) const {
    auto it = impl_->index.find(e);
    if (it == impl_->index.end()) return std::nullopt;
    return it->second;
}

bool JetSpace::compatible(const JetSpace& other) const {
    if (impl_ == other.impl_) return true;
    return impl_->vars == other.impl_->vars && impl_->trunc == other.impl_->trunc &&
           impl_->curve == other.impl_->curve && impl_->perm == other.impl_->perm;
}

SparseVec axpy(const SparseVec& v, const Rat& c, const SparseVec& w) {
    SparseVec out;
    out.reserve(v.size() + w.size());
    size_t i = 0, j = 0;
    while (i < v.size() || j < w.size()) {
        if (j >= w.size() || (i < v.size() && v[i].first < w[j].first)) {
            out.push_back(v[i++]);
        } else if (i >= v.size() || w[j].first < v[i].first) {
            Rat val = c * w[j].second;
            if (val != 0) out.emplace_back(w[j].first, std::move(val));
            ++j;
        } else {
            Rat val = v[i].second + c * w[j].second;
            if (val != 0) out.emplace_back(v[i].first, std::move(val));
            ++i;
            ++j;
        }
    }
    return out;
}

SparseVec vec_scale(const SparseVec& v, const Rat& c) {
    SparseVec out;
    if (c == 0) return out;
    out.reserve(v.size());
    for (const auto& [col, val] : v) out.emplace_back(col, val * c);
    return out;
}

SparseVec Echelon::reduce(SparseVec v) const {
    // pivots are encountered left to right; each elimination only touches
    // columns at or beyond the pivot
    size_t scan = 0;
    while (scan < v.size()) {
        auto it = pivot_row_.find(v[scan].first);
        if (it == pivot_row_.end()) {
            ++scan;
            continue;
        }
        Rat c = -v[scan].second;
        v = axpy(v, c, rows_[it->second]);
    }
    return v;
}

bool Echelon::insert(SparseVec row) {
    row = reduce(std::move(row));
    if (row.empty()) return false;
    // normalize pivot to 1
    Rat inv = 1 / row.front().second;
    if (inv != 1) row = vec_scale(row, inv);
    int pivot = row.front().first;
    // clear this column from existing rows
    for (auto& r : rows_) {
        auto pos = std::lower_bound(r.begin(), r.end(), pivot,
                                    [](const auto& p, int c) { return p.first < c; });
        if (pos != r.end() && pos->first == pivot) {
            Rat c = -pos->second;
            r = axpy(r, c, row);
        }
    }
    // insert keeping rows sorted by pivot column
    auto at = std::lower_bound(rows_.begin(), rows_.end(), pivot,
                               [](const SparseVec& r, int c) { return r.front().first < c; });
    rows_.insert(at, std::move(row));
    pivot_row_.clear();
    for (int i = 0; i < static_cast<int>(rows_.size()); ++i)
        pivot_row_[rows_[i].front().first] = i;
    return true;
}

bool Echelon::contains(const Echelon& other) const {
    for (const auto& r : other.rows_)
        if (!contains(r)) return false;
    return true;
}

bool Subspace::contains(const Subspace& other) const {
    if (!space_.compatible(other.space())) throw shape_error("subspace spaces differ");
    return ech_.contains(other.ech_);
}

bool Subspace::operator==(const Subspace& other) const {
    if (!space_.compatible(other.space())) throw shape_error("subspace spaces differ");
    return ech_ == other.ech_;
}

std::uint64_t Subspace::digest() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const auto& row : ech_.rows()) {
        for (const auto& [col, val] : row) {
            h = fnv1a(std::to_string(col), h);
            h = fnv1a(rat_str(val), h);
            h = fnv1a(";", h);
        }
        h = fnv1a("|", h);
    }
    return h;
}

std::string Subspace::digest_hex() const {
    std::ostringstream os;
    os << std::hex << digest();
    return os.str();
}

SparseVec poly_to_vec(const JetSpace& space, const Poly& p) {
    if (p.vars() != space.vars()) throw shape_error("polynomial variables differ from space");
    Poly q = space.curve() ? curve_reduce(p) : p;
    std::vector<std::pair<int, Rat>> entries;
    for (const auto& [e, c] : q.terms()) {
        if (total_degree(e) >= space.truncation()) continue;
        auto col = space.column_of(e);
        if (!col) throw shape_error("monomial outside jet basis");
        entries.emplace_back(*col, c);
    }
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return entries;
}

Poly vec_to_poly(const JetSpace& space, const SparseVec& v) {
    Poly p(space.vars());
    for (const auto& [col, val] : v) p.set_coeff(space.basis_monomial(col), val);
    return p;
}

Jet Jet::from_poly(const JetSpace& space, const Poly& p) {
    return Jet(space, poly_to_vec(space, p));
}

Poly Jet::to_poly() const { return vec_to_poly(space_, coords_); }

Jet jet_mul(const Jet& a, const Jet& b) {
    if (!a.space().compatible(b.space())) throw shape_error("jet spaces differ");
    Poly p = mul(a.to_poly(), b.to_poly());
    return Jet::from_poly(a.space(), p);
}

Jet jet_add(const Jet& a, const Jet& b) {
    if (!a.space().compatible(b.space())) throw shape_error("jet spaces differ");
    return Jet(a.space(), axpy(a.coords(), Rat(1), b.coords()));
}

Jet jet_scale(const Jet& a, const Rat& c) { return Jet(a.space(), vec_scale(a.coords(), c)); }

Subspace ideal_to_subspace(const std::vector<Poly>& gens, int asserted_precision,
                           const JetSpace& space) {
    if (asserted_precision < space.truncation())
        throw precision_error("generator precision below space truncation");
    Subspace out(space);
    for (const auto& g : gens) {
        Poly gr = space.curve() ? curve_reduce(g) : g;
        int ord = gr.order();
        if (ord >= space.truncation()) continue;  // all multiples vanish
        // unit generator: the whole space at once
        for (int col = 0; col < space.dim(); ++col) {
            const Exps& m = space.basis_monomial(col);
            if (total_degree(m) + ord >= space.truncation()) continue;
            Poly prod = mul(gr, Poly::monomial(space.vars(), m, Rat(1)));
            out.echelon().insert(poly_to_vec(space, prod));
            if (out.is_full()) return out;
        }
    }
    return out;
}

Subspace full_subspace(const JetSpace& space) {
    Subspace s(space);
    for (int col = 0; col < space.dim(); ++col) s.echelon().insert({{col, Rat(1)}});
    return s;
}

Subspace zero_subspace(const JetSpace& space) { return Subspace(space); }

Subspace intersect(const Subspace& a, const Subspace& b) {
    if (!a.space().compatible(b.space())) throw shape_error("subspace spaces differ");
    // cheap containment fast paths first
    if (a.echelon().contains(b.echelon())) return b;
    if (b.echelon().contains(a.echelon())) return a;

    // Zassenhaus: rows [x|x] for x in A and [y|0] for y in B; fully reduced,
    // rows whose left half vanished carry the intersection in the right half.
    int n = a.space().dim();
    Echelon work;
    for (const auto& r : a.echelon().rows()) {
        SparseVec row;
        row.reserve(2 * r.size());
        for (const auto& [col, val] : r) row.emplace_back(col, val);
        for (const auto& [col, val] : r) row.emplace_back(col + n, val);
        work.insert(std::move(row));
    }
    for (const auto& r : b.echelon().rows()) work.insert(r);

    Subspace out(a.space());
    for (const auto& r : work.rows()) {
        if (r.front().first < n) continue;
        SparseVec right;
        right.reserve(r.size());
        for (const auto& [col, val] : r) right.emplace_back(col - n, val);
        out.echelon().insert(std::move(right));
    }
    return out;
}

Subspace intersect(const std::vector<Subspace>& spaces) {
    if (spaces.empty()) throw shape_error("intersect: empty list");
    Subspace acc = spaces.front();
    for (size_t i = 1; i < spaces.size(); ++i) acc = intersect(acc, spaces[i]);
    return acc;
}

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
    if (!a.space().compatible(b.space())) throw shape_error("subspace spaces differ");
    Subspace out = a;
    for (const auto& r : b.echelon().rows()) out.echelon().insert(r);
    return out;
}

bool member(const Jet& x, const Subspace& s) {
    if (!x.space().compatible(s.space())) throw shape_error("jet outside subspace's space");
    return s.echelon().contains(x.coords());
}

int quotient_dim(const Subspace& a, const Subspace& b) {
    if (!a.contains(b)) throw containment_error("quotient_dim: B not contained in A");
    return a.dim() - b.dim();
}

Subspace kernel_of_map(const JetSpace& source,
                       const std::function<SparseVec(int)>& image_of_basis,
                       const Subspace& target_subspace) {
    int n_target = target_subspace.space().dim();
    // augmented rows [residual(image of e_i) | e_i]; combinations with zero
    // target part are exactly the kernel modulo the target subspace
    Echelon work;
    for (int i = 0; i < source.dim(); ++i) {
        SparseVec img = target_subspace.echelon().reduce(image_of_basis(i));
        img.emplace_back(n_target + i, Rat(1));
        work.insert(std::move(img));
    }
    Subspace out(source);
    for (const auto& r : work.rows()) {
        if (r.front().first < n_target) continue;
        SparseVec v;
        v.reserve(r.size());
        for (const auto& [col, val] : r) v.emplace_back(col - n_target, val);
        out.echelon().insert(std::move(v));
    }
    return out;
}

Subspace kernel_of_substitution(const std::map<std::string, Series>& images,
                                const JetSpace& source, const Subspace& target_subspace) {
    const JetSpace& tspace = target_subspace.space();
    for (const auto& [name, s] : images) {
        if (s.vars() != tspace.vars())
            throw shape_error("substitution image variables differ from target space");
        if (s.precision() < tspace.truncation())
            throw precision_error("substitution image precision below target truncation");
    }
    auto image = [&](int col) -> SparseVec {
        Poly mono = Poly::monomial(source.vars(), source.basis_monomial(col), Rat(1));
        Series img = substitute(mono, images);
        return poly_to_vec(tspace, img.body());
    };
    return kernel_of_map(source, image, target_subspace);
}

}  // namespace valext
