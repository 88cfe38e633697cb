#pragma once

#include <string>
#include <vector>

#include "valext/rational.hpp"

namespace valext {

enum class Ordering { less, equal, greater };

// Element of an ordered abelian value group.  Two variants:
//   lex:  Z^r with lexicographic order, first component most significant;
//   quad: a + b*sqrt(2) with exact rational a, b, ordered by the real embedding.
class GroupElement {
public:
    enum class Kind { lex, quad };

    static GroupElement lex(std::vector<long> components);
    static GroupElement quad(Rat a, Rat b);
    static GroupElement zero_like(const GroupElement& g);

    Kind kind() const { return kind_; }
    int rank() const;
    bool is_zero() const;

    const std::vector<long>& components() const;
    const Rat& qa() const { return qa_; }
    const Rat& qb() const { return qb_; }

    std::string str() const;

private:
    GroupElement() = default;
    Kind kind_ = Kind::lex;
    std::vector<long> comps_;
    Rat qa_, qb_;
};

Ordering cmp(const GroupElement& a, const GroupElement& b);
bool operator==(const GroupElement& a, const GroupElement& b);
inline bool operator!=(const GroupElement& a, const GroupElement& b) { return !(a == b); }
bool group_le(const GroupElement& a, const GroupElement& b);
bool group_lt(const GroupElement& a, const GroupElement& b);

GroupElement add(const GroupElement& a, const GroupElement& b);
GroupElement neg(const GroupElement& a);
GroupElement sub(const GroupElement& a, const GroupElement& b);
GroupElement scale(const GroupElement& a, long k);

// Isolated subgroup bookkeeping for the lex variant.  Level l identifies
// Delta_l = { first l components zero }; Delta_0 is the whole group and
// Delta_rank = (0).
struct IsolatedLevel {
    int level = 0;
};

// Largest l such that the first l components of g vanish (rank for g = 0).
IsolatedLevel isolated_level(const GroupElement& g);

bool in_isolated_subgroup(const GroupElement& g, int level);

// Image of g in Gamma / Delta_{l+1}: the lex tuple of the first l+1 components.
GroupElement project_mod(const GroupElement& g, int level);

}  // namespace valext
