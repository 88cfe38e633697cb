#include "valext/group.hpp"

#include <sstream>

#include "valext/errors.hpp"

namespace valext {

GroupElement GroupElement::lex(std::vector<long> components) {
    if (components.empty()) throw shape_error("lex element needs rank >= 1");
    GroupElement g;
    g.kind_ = Kind::lex;
    g.comps_ = std::move(components);
    return g;
}

GroupElement GroupElement::quad(Rat a, Rat b) {
    GroupElement g;
    g.kind_ = Kind::quad;
    g.qa_ = std::move(a);
    g.qb_ = std::move(b);
    return g;
}

GroupElement GroupElement::zero_like(const GroupElement& g) {
    if (g.kind_ == Kind::lex) return lex(std::vector<long>(g.comps_.size(), 0));
    return quad(Rat(0), Rat(0));
}

int GroupElement::rank() const {
    return kind_ == Kind::lex ? static_cast<int>(comps_.size()) : 1;
}

bool GroupElement::is_zero() const {
    if (kind_ == Kind::lex) {
        for (long c : comps_)
            if (c != 0) return false;
        return true;
    }
    return qa_ == 0 && qb_ == 0;
}

const std::vector<long>& GroupElement::components() const {
    if (kind_ != Kind::lex) throw shape_error("components(): not a lex element");
    return comps_;
}

std::string GroupElement::str() const {
    std::ostringstream os;
    if (kind_ == Kind::lex) {
        os << "(";
        for (size_t i = 0; i < comps_.size(); ++i) {
            if (i) os << ",";
            os << comps_[i];
        }
        os << ")";
    } else {
        os << rat_str(qa_) << " + " << rat_str(qb_) << "*sqrt2";
    }
    return os.str();
}

namespace {

void check_shape(const GroupElement& a, const GroupElement& b) {
    if (a.kind() != b.kind()) throw shape_error("mixed group variants");
    if (a.kind() == GroupElement::Kind::lex && a.rank() != b.rank())
        throw shape_error("mismatched lex ranks");
}

// sign of a + b*sqrt(2), decided exactly: case split on the signs of a and b,
// then compare a^2 against 2 b^2 (sqrt(2) irrational, so 0 only at a = b = 0).
int quad_sign(const Rat& a, const Rat& b) {
    int sa = sgn(a), sb = sgn(b);
    if (sa == 0 && sb == 0) return 0;
    if (sa >= 0 && sb >= 0) return 1;
    if (sa <= 0 && sb <= 0) return -1;
    Rat a2 = a * a, b2 = 2 * b * b;
    if (sa > 0) return a2 > b2 ? 1 : -1;  // sb < 0
    return b2 > a2 ? 1 : -1;              // sa < 0, sb > 0
}

}  // namespace

Ordering cmp(const GroupElement& a, const GroupElement& b) {
    check_shape(a, b);
    if (a.kind() == GroupElement::Kind::lex) {
        const auto& x = a.components();
        const auto& y = b.components();
        for (size_t i = 0; i < x.size(); ++i) {
            if (x[i] < y[i]) return Ordering::less;
            if (x[i] > y[i]) return Ordering::greater;
        }
        return Ordering::equal;
    }
    int s = quad_sign(a.qa() - b.qa(), a.qb() - b.qb());
    if (s < 0) return Ordering::less;
    if (s > 0) return Ordering::greater;
    return Ordering::equal;
}

bool operator==(const GroupElement& a, const GroupElement& b) {
    return cmp(a, b) == Ordering::equal;
}

bool group_le(const GroupElement& a, const GroupElement& b) {
    return cmp(a, b) != Ordering::greater;
}

bool group_lt(const GroupElement& a, const GroupElement& b) {
    return cmp(a, b) == Ordering::less;
}

GroupElement add(const GroupElement& a, const GroupElement& b) {
    check_shape(a, b);
    if (a.kind() == GroupElement::Kind::lex) {
        std::vector<long> out = a.components();
        const auto& y = b.components();
        for (size_t i = 0; i < out.size(); ++i) out[i] += y[i];
        return GroupElement::lex(std::move(out));
    }
    return GroupElement::quad(a.qa() + b.qa(), a.qb() + b.qb());
}

GroupElement neg(const GroupElement& a) {
    if (a.kind() == GroupElement::Kind::lex) {
        std::vector<long> out = a.components();
        for (auto& c : out) c = -c;
        return GroupElement::lex(std::move(out));
    }
    return GroupElement::quad(-a.qa(), -a.qb());
}

GroupElement sub(const GroupElement& a, const GroupElement& b) { return add(a, neg(b)); }

GroupElement scale(const GroupElement& a, long k) {
    if (a.kind() == GroupElement::Kind::lex) {
        std::vector<long> out = a.components();
        for (auto& c : out) c *= k;
        return GroupElement::lex(std::move(out));
    }
    return GroupElement::quad(Rat(k) * a.qa(), Rat(k) * a.qb());
}

IsolatedLevel isolated_level(const GroupElement& g) {
    if (g.kind() != GroupElement::Kind::lex)
        throw shape_error("isolated_level: rank-one quad group has only the trivial chain");
    int l = 0;
    for (long c : g.components()) {
        if (c != 0) break;
        ++l;
    }
    return IsolatedLevel{l};
}

bool in_isolated_subgroup(const GroupElement& g, int level) {
    if (g.kind() != GroupElement::Kind::lex) return level == 0;
    if (level < 0 || level > g.rank()) throw shape_error("isolated level out of range");
    const auto& c = g.components();
    for (int i = 0; i < level; ++i)
        if (c[i] != 0) return false;
    return true;
}

GroupElement project_mod(const GroupElement& g, int level) {
    if (g.kind() != GroupElement::Kind::lex) throw shape_error("project_mod: lex only");
    if (level < 0 || level >= g.rank()) throw shape_error("project_mod: level out of range");
    const auto& c = g.components();
    return GroupElement::lex(std::vector<long>(c.begin(), c.begin() + level + 1));
}

}  // namespace valext
