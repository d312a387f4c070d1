#pragma once

#include <gmpxx.h>

#include <string>

namespace treewalk {

// Exact rational arithmetic. Step weights, kernel values and truncated power
// series coefficients are all kept exact; doubles only enter in the curve
// solver and the float oracle fast path.
using Rat = mpq_class;

// accepts "p/q" or "p" (integers may be signed); canonicalizes
Rat parse_rational(const std::string& s);

std::string rat_str(const Rat& r);

inline double rat_double(const Rat& r) { return r.get_d(); }

}  // namespace treewalk
