#include "treewalk/config.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "treewalk/errors.hpp"

namespace treewalk {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& what) {
    throw ConfigError(origin + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

RunConfig parse_config(std::istream& in, const std::string& origin) {
    std::vector<GroupSpec::Factor> factors;
    std::vector<std::pair<std::string, std::string>> atom_texts;  // (word, weight) as written
    struct Opt {
        std::string value;
        int line;
    };
    std::map<std::string, Opt> options;
    int atoms_line = 0;

    std::string section, raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        if (size_t h = line.find('#'); h != std::string::npos) line.erase(h);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(origin, lineno, "unterminated section header");
            section = line.substr(1, line.size() - 2);
            if (section != "group" && section != "measure" && section != "options")
                fail(origin, lineno, "unknown section '" + section + "'");
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string::npos) fail(origin, lineno, "expected 'key = value'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) fail(origin, lineno, "expected 'key = value'");

        if (section == "group") {
            if (key != "factor") fail(origin, lineno, "unknown key '" + key + "' in [group]");
            std::istringstream vs(value);
            std::string kind, name;
            vs >> kind >> name;
            std::string rest;
            if (vs >> rest) fail(origin, lineno, "trailing input after factor '" + rest + "'");
            if (kind != "invol" && kind != "free")
                fail(origin, lineno, "factor kind must be 'invol' or 'free', got '" + kind + "'");
            if (name.size() != 1 || !std::islower(static_cast<unsigned char>(name[0])))
                fail(origin, lineno, "factor name must be one lowercase letter, got '" + name + "'");
            factors.push_back({name[0], kind == "invol"});
        } else if (section == "measure") {
            if (key != "atom") fail(origin, lineno, "unknown key '" + key + "' in [measure]");
            std::istringstream vs(value);
            std::string word, weight;
            vs >> word >> weight;
            std::string rest;
            if (weight.empty()) fail(origin, lineno, "atom needs '<word> <p/q>'");
            if (vs >> rest) fail(origin, lineno, "trailing input after atom '" + rest + "'");
            atom_texts.emplace_back(word, weight);
            atoms_line = lineno;
        } else if (section == "options") {
            if (options.count(key)) fail(origin, lineno, "duplicate option '" + key + "'");
            options[key] = {value, lineno};
        } else {
            fail(origin, lineno, "entry before any section header");
        }
    }

    if (factors.empty()) fail(origin, lineno, "[group] must declare at least one factor");
    int valence = 0;
    for (const auto& f : factors) valence += f.invol ? 1 : 2;
    if (valence < 3)
        throw ConfigError(origin + ": valence < 3 (the walk requires a tree in which every "
                          "vertex has at least three neighbours)");
    RunConfig cfg;
    cfg.group = GroupSpec::make(factors);

    if (atom_texts.empty()) fail(origin, lineno, "[measure] must declare at least one atom");
    std::vector<std::pair<Word, Rat>> entries;
    Rat total = 0;
    for (auto& [wtext, ptext] : atom_texts) {
        Word w = parse_word(cfg.group, wtext);
        Rat wt = parse_rational(ptext);
        total += wt;
        entries.emplace_back(std::move(w), std::move(wt));
    }
    if (total != 1)
        throw ConfigError(origin + ":" + std::to_string(atoms_line) +
                          ": measure not stochastic (weights sum to " + rat_str(total) + ")");
    cfg.measure = StepMeasure::make(cfg.group, std::move(entries));

    for (auto& [key, opt] : options) {
        try {
            if (key == "tol") {
                cfg.tol = std::stod(opt.value);
                if (!(cfg.tol > 0)) fail(origin, opt.line, "tol must be positive");
            } else if (key == "nmax") {
                cfg.nmax = std::stoi(opt.value);
                if (cfg.nmax < 1) fail(origin, opt.line, "nmax must be >= 1");
            } else if (key == "seed") {
                cfg.seed = std::stoul(opt.value);
            } else if (key == "dot") {
                cfg.dot_path = opt.value;
            } else if (key == "csv") {
                cfg.csv_path = opt.value;
            } else {
                fail(origin, opt.line, "unknown option '" + key + "'");
            }
        } catch (const std::invalid_argument&) {
            fail(origin, opt.line, "malformed value for '" + key + "': '" + opt.value + "'");
        } catch (const std::out_of_range&) {
            fail(origin, opt.line, "value out of range for '" + key + "': '" + opt.value + "'");
        }
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    return parse_config(in, path);
}

std::string RunConfig::dump() const {
    std::ostringstream out;
    out << "[group]\n";
    for (const auto& f : group.factors)
        out << "factor = " << (f.invol ? "invol" : "free") << ' ' << f.name << '\n';
    out << "\n[measure]\n";
    for (const auto& [w, wt] : measure.atoms)
        out << "atom = " << word_str(group, w) << ' ' << rat_str(wt) << '\n';
    out << "\n[options]\n";
    std::ostringstream tols;
    tols << tol;
    out << "tol = " << tols.str() << '\n';
    out << "nmax = " << nmax << '\n';
    out << "seed = " << seed << '\n';
    if (!dot_path.empty()) out << "dot = " << dot_path << '\n';
    if (!csv_path.empty()) out << "csv = " << csv_path << '\n';
    return out.str();
}

}  // namespace treewalk
