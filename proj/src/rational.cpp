#include "treewalk/rational.hpp"

#include "treewalk/errors.hpp"

namespace treewalk {

Rat parse_rational(const std::string& s) {
    if (s.empty()) throw ConfigError("empty rational");
    try {
        Rat r(s);  // gmp accepts "p/q" and "p"
        r.canonicalize();
        if (r.get_den() == 0) throw ConfigError("rational with zero denominator: " + s);
        return r;
    } catch (const std::invalid_argument&) {
        throw ConfigError("malformed rational: " + s);
    }
}

std::string rat_str(const Rat& r) { return r.get_str(); }

}  // namespace treewalk
