#include <sstream>
#include <string>

#include "doctest.h"
#include "helpers.hpp"

#ifndef TREEWALK_CONFIG_DIR
#error "TREEWALK_CONFIG_DIR must point at the shipped example configs"
#endif

namespace {

std::string cfg_path(const char* name) {
    return std::string(TREEWALK_CONFIG_DIR) + "/" + name;
}

tw::RunConfig parse_text(const std::string& text) {
    std::istringstream in(text);
    return tw::parse_config(in, "inline");
}

std::string error_of(const std::string& text) {
    try {
        parse_text(text);
    } catch (const tw::ConfigError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("the shipped configs load") {
    tw::RunConfig nn3 = tw::load_config(cfg_path("nn3.cfg"));
    CHECK(nn3.group.factors.size() == 3);
    CHECK(nn3.group.valence() == 3);
    CHECK(nn3.measure.atoms.size() == 3);
    CHECK(nn3.measure.range_k == 1);
    CHECK(nn3.tol == 1e-10);
    CHECK(nn3.nmax == 16);
    CHECK(nn3.seed == 1);

    CHECK(tw::load_config(cfg_path("w1.cfg")).measure.atoms.size() == 4);
    CHECK(tw::load_config(cfg_path("w2.cfg")).measure.range_k == 2);
    CHECK(tw::load_config(cfg_path("w3.cfg")).measure.range_k == 2);

    tw::RunConfig f2 = tw::load_config(cfg_path("f2.cfg"));
    CHECK(f2.group.valence() == 4);
    CHECK(f2.measure.atoms.size() == 4);
    CHECK(f2.measure.is_radial());

    CHECK_THROWS_AS(tw::load_config(cfg_path("missing.cfg")), tw::ConfigError);
}

TEST_CASE("dump is a parse fixpoint") {
    for (const char* name : {"nn3.cfg", "w1.cfg", "w2.cfg", "w3.cfg", "f2.cfg"}) {
        tw::RunConfig cfg = tw::load_config(cfg_path(name));
        std::string once = cfg.dump();
        tw::RunConfig redo = parse_text(once);
        CHECK(redo.dump() == once);
        CHECK(redo.measure.atoms == cfg.measure.atoms);
        CHECK(redo.tol == cfg.tol);
        CHECK(redo.nmax == cfg.nmax);
        CHECK(redo.seed == cfg.seed);
    }
}

TEST_CASE("comments, spacing and path options survive") {
    tw::RunConfig cfg = parse_text(
        "# walk on three involutions\n"
        "[group]\n"
        "factor = invol a   # first\n"
        "factor = invol b\n"
        "factor = invol c\n"
        "\n[measure]\n"
        "atom =   a   1/3\n"
        "atom = b 1/3\n"
        "atom = c 1/3\n"
        "[options]\n"
        "dot = out/graph.dot\n"
        "csv = out/table.csv\n");
    CHECK(cfg.measure.atoms.size() == 3);
    CHECK(cfg.dot_path == "out/graph.dot");
    CHECK(cfg.csv_path == "out/table.csv");
    CHECK(cfg.tol == 1e-10);  // defaults untouched
    // dump round-trips the paths
    tw::RunConfig redo = parse_text(cfg.dump());
    CHECK(redo.dot_path == cfg.dot_path);
    CHECK(redo.csv_path == cfg.csv_path);
}

TEST_CASE("errors carry the origin and line number") {
    CHECK(error_of("[group\n").find("inline:1") != std::string::npos);
    CHECK(error_of("[group]\nfactor = invol a\nwat\n").find("inline:3") != std::string::npos);
    CHECK(error_of("[orbit]\n").find("unknown section 'orbit'") != std::string::npos);
    CHECK(error_of("x = 1\n").find("before any section") != std::string::npos);
    CHECK(error_of("[group]\nfactor = cyclic a\n").find("'invol' or 'free'") !=
          std::string::npos);
    CHECK(error_of("[group]\nfactor = invol ab\n").find("one lowercase letter") !=
          std::string::npos);
    CHECK(error_of("[group]\nfactor = invol a b\n").find("trailing input") !=
          std::string::npos);
    CHECK(error_of("[group]\nkey = 1\n").find("in [group]") != std::string::npos);

    std::string base =
        "[group]\nfactor = invol a\nfactor = invol b\nfactor = invol c\n[measure]\n";
    CHECK(error_of(base + "atom = a 1/3\natom = b 2/3\natom = c 1/3\n")
              .find("measure not stochastic") != std::string::npos);
    CHECK(error_of(base + "atom = d 1\n").find("unknown letter") != std::string::npos);
    CHECK(error_of(base + "atom = a\n").find("atom needs") != std::string::npos);
    CHECK(error_of(base + "atom = a 1/3 x\n").find("trailing input") != std::string::npos);

    std::string good = base + "atom = a 1/3\natom = b 1/3\natom = c 1/3\n[options]\n";
    CHECK(error_of(good + "tol = fast\n").find("malformed value for 'tol'") !=
          std::string::npos);
    CHECK(error_of(good + "tol = -1\n").find("tol must be positive") != std::string::npos);
    CHECK(error_of(good + "nmax = 0\n").find("nmax must be >= 1") != std::string::npos);
    CHECK(error_of(good + "speed = 9\n").find("unknown option 'speed'") != std::string::npos);
    CHECK(error_of(good + "tol = 1e-9\ntol = 1e-8\n").find("duplicate option") !=
          std::string::npos);
    CHECK(error_of(good + "nmax = 7\nnmax = 7\n").find("inline:11") != std::string::npos);
}

TEST_CASE("the valence pre-check names the problem") {
    std::string thin = "[group]\nfactor = invol a\nfactor = invol b\n"
                       "[measure]\natom = a 1/2\natom = b 1/2\n";
    std::string err = error_of(thin);
    CHECK(err.find("valence < 3") != std::string::npos);
}
