#include "treewalk/group.hpp"

#include <algorithm>
#include <deque>

#include "treewalk/errors.hpp"

namespace treewalk {

GroupSpec GroupSpec::make(const std::vector<Factor>& factors) {
    GroupSpec g;
    g.factors = factors;
    if (factors.empty()) throw ConfigError("group: no factors");
    for (size_t i = 0; i < factors.size(); ++i) {
        const Factor& f = factors[i];
        if (f.name < 'a' || f.name > 'z')
            throw ConfigError(std::string("group: factor name must be a lowercase letter, got '") +
                              f.name + "'");
        for (size_t j = 0; j < i; ++j)
            if (factors[j].name == f.name)
                throw ConfigError(std::string("group: duplicate factor name '") + f.name + "'");
        g.sid_name.push_back(f.name);
        g.sid_inverse_mark.push_back(false);
        g.sid_factor.push_back(static_cast<int>(i));
        if (f.invol) {
            g.sid_inv.push_back(static_cast<int>(g.sid_inv.size()));  // self-inverse
        } else {
            int a = static_cast<int>(g.sid_inv.size());
            g.sid_inv.push_back(a + 1);
            g.sid_name.push_back(f.name);
            g.sid_inverse_mark.push_back(true);
            g.sid_factor.push_back(static_cast<int>(i));
            g.sid_inv.push_back(a);
        }
    }
    if (g.n_sids() < 3)
        throw ConfigError("group: valence < 3 (every tree vertex needs at least three "
                          "neighbours: three involutions, or one Z factor plus another factor)");
    return g;
}

Word reduce(const GroupSpec& g, const Word& letters) {
    Word out;
    out.reserve(letters.size());
    for (char c : letters) {
        if (!out.empty() && g.inverse(static_cast<unsigned char>(out.back())) ==
                                static_cast<int>(static_cast<unsigned char>(c)))
            out.pop_back();
        else
            out.push_back(c);
    }
    return out;
}

Word inverse_word(const GroupSpec& g, const Word& w) {
    Word out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it)
        out.push_back(static_cast<char>(g.inverse(static_cast<unsigned char>(*it))));
    return out;
}

Word multiply(const GroupSpec& g, const Word& u, const Word& v) {
    size_t i = u.size(), j = 0;
    while (i > 0 && j < v.size() &&
           g.inverse(static_cast<unsigned char>(u[i - 1])) ==
               static_cast<int>(static_cast<unsigned char>(v[j]))) {
        --i;
        ++j;
    }
    Word out = u.substr(0, i);
    out.append(v, j, Word::npos);
    return out;
}

int distance(const GroupSpec& g, const Word& u, const Word& v) {
    // |u^-1 v| = |u| + |v| - 2 * (length of common prefix)
    size_t c = 0;
    while (c < u.size() && c < v.size() && u[c] == v[c]) ++c;
    (void)g;
    return static_cast<int>(u.size() + v.size() - 2 * c);
}

std::vector<Word> geodesic(const GroupSpec& g, const Word& u, const Word& v) {
    size_t c = 0;
    while (c < u.size() && c < v.size() && u[c] == v[c]) ++c;
    std::vector<Word> path;
    path.reserve(u.size() + v.size() - 2 * c + 1);
    for (size_t i = u.size(); i > c; --i) path.push_back(u.substr(0, i));
    for (size_t i = c; i <= v.size(); ++i) path.push_back(v.substr(0, i));
    (void)g;
    return path;
}

std::vector<Word> ball(const GroupSpec& g, const Word& center, int r) {
    std::vector<Word> out{kEpsilon};
    std::vector<Word> sphere{kEpsilon};
    for (int rad = 1; rad <= r; ++rad) {
        std::vector<Word> next;
        for (const Word& w : sphere)
            for (int s = 0; s < g.n_sids(); ++s) {
                if (!w.empty() &&
                    g.inverse(static_cast<unsigned char>(w.back())) == s)
                    continue;
                Word child = w;
                child.push_back(static_cast<char>(s));
                next.push_back(std::move(child));
            }
        std::sort(next.begin(), next.end());
        out.insert(out.end(), next.begin(), next.end());
        sphere = std::move(next);
    }
    if (!center.empty())
        for (Word& w : out) w = multiply(g, center, w);
    return out;
}

bool on_geodesic(const GroupSpec& g, const Word& u, const Word& m, const Word& v) {
    return distance(g, u, m) + distance(g, m, v) == distance(g, u, v);
}

bool shadow_contains(const GroupSpec& g, const Word& x, const Word& y, const Word& v) {
    if (distance(g, x, y) != 1) throw ComputeError("shadow_contains: x, y not adjacent");
    return distance(g, v, x) < distance(g, v, y);
}

bool is_visible(const GroupSpec& g, const Word& x, const Word& y,
                const Word& x0, const Word& y0) {
    if (distance(g, x, y) != 1 || distance(g, x0, y0) != 1)
        throw ComputeError("is_visible: arguments must be edges");
    return on_geodesic(g, x, x0, y0) && on_geodesic(g, x, y, y0);
}

Word find_visible_translate(const GroupSpec& g, const Word& x, const Word& y,
                            const Word& x0, const Word& y0) {
    if (distance(g, x, y) != 1 || distance(g, x0, y0) != 1)
        throw ComputeError("find_visible_translate: arguments must be edges");
    // Choose w in the shadow of x0 behind y0 and aim for t*y = w, t*x = w*l
    // with l = y^-1 x; that works iff appending l to w moves away from y0,
    // i.e. w*l is still in the shadow. Valence >= 3 gives at every depth a
    // child whose last letter is not l^-1, so a small BFS always succeeds.
    const Word l = multiply(g, inverse_word(g, y), x);
    std::deque<Word> queue{x0};
    while (!queue.empty()) {
        Word w = queue.front();
        queue.pop_front();
        const Word wl = multiply(g, w, l);
        if (distance(g, wl, y0) == distance(g, w, y0) + 1) {
            const Word t = multiply(g, w, inverse_word(g, y));
            if (!is_visible(g, multiply(g, t, x), multiply(g, t, y), x0, y0))
                throw InvariantViolation("find_visible_translate: candidate not visible");
            return t;
        }
        if (distance(g, w, x0) >= 2) continue;  // depth 2 is always enough
        for (int s = 0; s < g.n_sids(); ++s) {
            Word child = multiply(g, w, Word(1, static_cast<char>(s)));
            if (distance(g, child, y0) == distance(g, w, y0) + 1)
                queue.push_back(std::move(child));
        }
    }
    throw ComputeError("find_visible_translate: no translate found");
}

std::vector<Word> canonicalize(const GroupSpec& g, const std::vector<Word>& tuple,
                               size_t anchor) {
    if (anchor >= tuple.size()) throw ComputeError("canonicalize: anchor out of range");
    const Word t = inverse_word(g, tuple[anchor]);
    std::vector<Word> out;
    out.reserve(tuple.size());
    for (const Word& w : tuple) out.push_back(multiply(g, t, w));
    return out;
}

std::string word_str(const GroupSpec& g, const Word& w) {
    if (w.empty()) return "e";
    std::string out;
    for (char c : w) {
        int sid = static_cast<unsigned char>(c);
        out.push_back(g.sid_name[static_cast<size_t>(sid)]);
        if (g.sid_inverse_mark[static_cast<size_t>(sid)]) out.push_back('^');
    }
    return out;
}

Word parse_word(const GroupSpec& g, const std::string& text) {
    if (text == "e") return kEpsilon;
    Word w;
    for (size_t i = 0; i < text.size(); ++i) {
        char name = text[i];
        bool inv = i + 1 < text.size() && text[i + 1] == '^';
        if (inv) ++i;
        int sid = -1;
        for (int s = 0; s < g.n_sids(); ++s)
            if (g.sid_name[static_cast<size_t>(s)] == name &&
                g.sid_inverse_mark[static_cast<size_t>(s)] == inv) {
                sid = s;
                break;
            }
        if (sid < 0) {
            if (inv) throw ConfigError(std::string("word '") + text + "': letter '" + name +
                                       "^' is not an inverse of a Z factor");
            throw ConfigError(std::string("word '") + text + "': unknown letter '" + name + "'");
        }
        w.push_back(static_cast<char>(sid));
    }
    if (reduce(g, w) != w)
        throw ConfigError(std::string("word '") + text + "' is not reduced");
    return w;
}

}  // namespace treewalk
