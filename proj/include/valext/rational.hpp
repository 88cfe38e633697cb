#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace valext {

using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Canonical text form, e.g. "3", "-5/7".
inline std::string rat_str(const Rat& r) { return r.get_str(); }

inline Rat rat_parse(const std::string& s) {
    Rat r(s);
    r.canonicalize();
    return r;
}

inline int rat_sign(const Rat& r) { return sgn(r); }

}  // namespace valext
