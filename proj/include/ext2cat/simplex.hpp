#pragma once

#include <optional>
#include <string>
#include <vector>

namespace ext2cat {

/* Monotone map [n_src] -> [n_dst] between finite ordinals. */
struct MonotoneMap {
    int n_src = 0;
    int n_dst = 0;
    std::vector<int> vals;  // size n_src + 1, nondecreasing, in [0, n_dst]

    MonotoneMap() = default;
    MonotoneMap(int src, int dst, std::vector<int> v);

    static MonotoneMap identity(int n);
    static MonotoneMap constant(int src, int dst, int value);
    /* initial segment [m] -> [n], i |-> i */
    static MonotoneMap initial_seg(int m, int n);
    /* terminal segment [m] -> [n], i |-> i + (n - m) */
    static MonotoneMap terminal_seg(int m, int n);
    /* vertex embedding [0] -> [n] onto value v */
    static MonotoneMap vertex(int n, int v);

    int operator()(int i) const { return vals[i]; }
    bool operator==(const MonotoneMap& o) const
    {
        return n_src == o.n_src && n_dst == o.n_dst && vals == o.vals;
    }
    bool operator<(const MonotoneMap& o) const;
    std::string to_string() const;
};

MonotoneMap compose(const MonotoneMap& g, const MonotoneMap& f);  // g after f
std::vector<MonotoneMap> all_monotone(int n_src, int n_dst);
bool is_special(const MonotoneMap& f);  // f(0) == 0
bool is_injective(const MonotoneMap& f);
bool is_surjective_map(const MonotoneMap& f);

/* Object <[m], f> of the (truncated) category of simplices of [n]. */
struct SimplexObj {
    int m = 0;
    MonotoneMap f;  // [m] -> [n]

    SimplexObj() = default;
    SimplexObj(MonotoneMap map) : m(map.n_src), f(std::move(map)) {}
    bool operator==(const SimplexObj& o) const { return f == o.f; }
    bool operator<(const SimplexObj& o) const { return f < o.f; }
    std::string to_string() const { return f.to_string(); }
};

/* Does f: [m] -> [n] land in the image of the Segal comparison for the cut
 * at l, i.e. factor through the initial segment [l] or the terminal
 * segment [n-l]? */
bool in_image_b_l_n(const MonotoneMap& f, int l);

/* Truncated category of simplices of [n] (all objects of dimension
 * <= d_max), with membership flags for the subcategories used by the
 * Segal gluing argument:
 *   lower(o):    o factors through an end segment (cut at l)
 *   upper(o):    l lies in the image of o
 *   diamond(o):  union of the two */
struct TruncCat {
    int n = 0;
    int l = 0;  // the cut; only meaningful when flags are used
    int d_max = 0;
    std::vector<SimplexObj> objects;

    int index_of(const SimplexObj& o) const;
    bool lower(int idx) const;
    bool upper(int idx) const;
    bool diamond(int idx) const { return lower(idx) || upper(idx); }

    /* arrows o -> o' are monotone g with o'.f . g = o.f */
    std::vector<MonotoneMap> arrows(int src_idx, int dst_idx) const;
};
TruncCat trunc_simplex_cat(int n, int l, int d_max);

/* V-shaped cofinal diagram of an object with l in its image: initial part,
 * constant middle, terminal part, with the two connecting arrows into the
 * outer objects. */
struct VDiagram {
    SimplexObj left, middle, right;
    MonotoneMap mid_to_left;   // [q-p] -> [q]
    MonotoneMap mid_to_right;  // [q-p] -> [m-p]
};
VDiagram v_diagram(const SimplexObj& obj, int l);

/* Tight factorizations of <[m], f> with l not in the image of f: insert a
 * block of k+1 preimages of l at the unique monotone position. ins_pos is
 * the index in [m+k+1] where the block starts; emb is the complementary
 * embedding [m] -> [m+k+1]. */
struct TightFactorization {
    int k = 0;
    SimplexObj obj;       // <[m+k+1], f_plus>
    MonotoneMap emb;      // e: [m] -> [m+k+1], injective
    int ins_pos = 0;
};
std::vector<TightFactorization> tight_factorizations(const SimplexObj& obj, int l, int k_max);
/* the functor on [k] -> [k'] induced between tight factorizations */
MonotoneMap tight_transition(const TightFactorization& a, const TightFactorization& b,
                             const MonotoneMap& g);

/* Finite category, stored extensionally. */
struct FinCat {
    int n_obj = 0;
    struct Arrow {
        int src, dst;
        int id;  // index into arrows
    };
    std::vector<Arrow> arrows;
    std::vector<int> identity;            // object -> arrow id
    std::vector<std::vector<int>> comp;   // comp[g][f] = g . f (or -1)

    int compose_arrows(int g, int f) const { return comp[g][f]; }
    bool is_identity(int a) const { return identity[arrows[a].src] == a && arrows[a].src == arrows[a].dst; }
};
FinCat ordinal_category(int n);  // the poset [n]
FinCat point_category();

/* Twisted arrow category with its two projections. Objects are the arrows
 * of I; a morphism (u: i -> i') -> (v: j -> j') is a pair (p: j -> i,
 * q: i' -> j') with v = q . u . p. */
struct TwistedArrows {
    FinCat tw;
    std::vector<int> sigma;  // object of tw -> source object in I
    std::vector<int> tau;    // object of tw -> target object in I
};
TwistedArrows twisted_arrows(const FinCat& i);

/* Truncated nerve: n-simplices are functors [n] -> I, i.e. composable
 * chains of n arrows. */
struct Nerve {
    int d_max = 0;
    std::vector<std::vector<std::vector<int>>> simplices;  // [n] -> list of arrow chains
    /* index of the simplex obtained by acting with f: [a] -> [b] on the
     * b-dimensional simplex of index s */
    int act(const MonotoneMap& f, int s) const;
    const FinCat* cat = nullptr;
};
Nerve nerve(const FinCat& i, int d_max);
bool nerve_segal(const Nerve& nv);  // Segal comparison is bijective

}  // namespace ext2cat
