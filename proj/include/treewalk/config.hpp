#pragma once

#include <iosfwd>
#include <string>

#include "treewalk/measure.hpp"

namespace treewalk {

// Everything a run needs, loaded from a small sectioned text file:
//
//   [group]
//   factor = invol a
//   factor = free x
//
//   [measure]
//   atom = a 1/3
//   atom = ax^ 1/6
//
//   [options]
//   tol = 1e-10
//   nmax = 16
//   seed = 1
//
// Words use one letter per symbol, with a caret suffix for the inverse half
// of a Z factor ("x^"); weights are exact rationals "p/q". dump() re-emits
// the canonical form, so dump(load(dump(cfg))) == dump(cfg) byte for byte.
struct RunConfig {
    GroupSpec group;
    StepMeasure measure;

    double tol = 1e-10;
    int nmax = 16;
    unsigned long seed = 1;
    std::string dot_path;  // optional default output targets; CLI flags override
    std::string csv_path;

    std::string dump() const;
};

RunConfig load_config(const std::string& path);
RunConfig parse_config(std::istream& in, const std::string& origin);

}  // namespace treewalk
