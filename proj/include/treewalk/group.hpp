#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace treewalk {

// Free product of finitely many factors, each Z/2Z ("invol") or Z ("free").
// Elements are reduced words over signed letters; the Cayley graph w.r.t.
// the letters is a regular tree of valence (#invol + 2*#free) >= 3.
//
// Letters get small integer ids ("sids"): an involution contributes one sid
// that is its own inverse, a free factor contributes a pair (x, x^-1).
struct GroupSpec {
    struct Factor {
        char name;   // single lowercase letter
        bool invol;  // Z/2Z if true, Z if false
    };

    std::vector<Factor> factors;

    // derived letter table
    std::vector<char> sid_name;     // display name per sid
    std::vector<bool> sid_inverse_mark;  // true for the x^-1 half of a Z factor
    std::vector<int> sid_inv;       // inverse sid per sid
    std::vector<int> sid_factor;    // owning factor index per sid

    static GroupSpec make(const std::vector<Factor>& factors);

    int n_sids() const { return static_cast<int>(sid_name.size()); }
    int valence() const { return n_sids(); }
    int inverse(int sid) const { return sid_inv[static_cast<size_t>(sid)]; }
};

// A reduced word; byte i holds the sid of letter i. Empty = identity.
// std::string gives cheap hashing, comparison and deterministic ordering.
using Word = std::string;

inline const Word kEpsilon{};

// stack reduction of an arbitrary letter sequence
Word reduce(const GroupSpec& g, const Word& letters);

Word inverse_word(const GroupSpec& g, const Word& w);

// u * v with cancellation at the seam (u, v already reduced)
Word multiply(const GroupSpec& g, const Word& u, const Word& v);

// word metric d(u,v) = |u^-1 v|
int distance(const GroupSpec& g, const Word& u, const Word& v);

// the unique geodesic u = w_0, w_1, ..., w_d = v
std::vector<Word> geodesic(const GroupSpec& g, const Word& u, const Word& v);

// all vertices within distance r of center, ordered by (distance, lex)
std::vector<Word> ball(const GroupSpec& g, const Word& center, int r);

inline long long ball_size(const GroupSpec& g, int r) {
    long long total = 1, sphere = g.n_sids();
    for (int i = 1; i <= r; ++i) {
        total += sphere;
        sphere *= g.n_sids() - 1;
    }
    return total;
}

// x adjacent to y; true iff v lies in the shadow of x behind y, i.e. the
// geodesic [v,y] passes through x
bool shadow_contains(const GroupSpec& g, const Word& x, const Word& y, const Word& v);

// true iff m lies on [u,v]
bool on_geodesic(const GroupSpec& g, const Word& u, const Word& m, const Word& v);

// edge (x,y) visible from edge (x0,y0): the shadow of x behind y is contained
// in the shadow of x0 behind y0, equivalently x0 and y both lie on [x,y0]
bool is_visible(const GroupSpec& g, const Word& x, const Word& y,
                const Word& x0, const Word& y0);

// some translation t with (t*x, t*y) visible from (x0, y0); always exists
// because the valence is >= 3
Word find_visible_translate(const GroupSpec& g, const Word& x, const Word& y,
                            const Word& x0, const Word& y0);

// left-translate every word of tuple so that tuple[anchor] becomes epsilon
std::vector<Word> canonicalize(const GroupSpec& g, const std::vector<Word>& tuple,
                               size_t anchor);

// display / parsing:  involution letters print as their name, the inverse
// half of a Z factor as name + '^'.  "e" denotes the identity.
std::string word_str(const GroupSpec& g, const Word& w);
Word parse_word(const GroupSpec& g, const std::string& text);  // must be reduced

}  // namespace treewalk
