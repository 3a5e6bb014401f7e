#pragma once

#include <map>
#include <memory>

#include "ext2cat/zmod.hpp"

namespace ext2cat {

/* Length-2 chain complex M1 -> M0 in homological degrees 1, 0. */
class Complex2 {
public:
    Complex2() = default;
    Complex2(ZModule m1, ZModule m0, ModMap d);
    static Complex2 zero_diff(const ZModule& m1, const ZModule& m0);

    const ZModule& m1() const { return m1_; }
    const ZModule& m0() const { return m0_; }
    const ModMap& d() const { return d_; }

    bool operator==(const Complex2& o) const { return m1_ == o.m1_ && m0_ == o.m0_ && d_ == o.d_; }
    bool operator!=(const Complex2& o) const { return !(*this == o); }
    bool operator<(const Complex2& o) const;
    std::string to_string() const;

private:
    ZModule m1_, m0_;
    ModMap d_;
};

/* Homology of a length-2 complex with its witness maps:
 * 0 -> H1 -> M1 -> M0 -> H0 -> 0 is exact. */
struct Homology {
    ZModule h1;
    ModMap incl;  // H1 -> M1
    ZModule h0;
    ModMap proj;  // M0 -> H0
};
const Homology& homology(const Complex2& m);  // memoized per complex
bool four_term_exact(const Complex2& m);      // verifies exactness of the witness sequence

struct ChainMap2 {
    Complex2 src, dst;
    ModMap f1, f0;

    ChainMap2() = default;
    ChainMap2(Complex2 s, Complex2 d, ModMap m1map, ModMap m0map);
    static ChainMap2 identity(const Complex2& m);

    bool operator==(const ChainMap2& o) const
    {
        return src == o.src && dst == o.dst && f1 == o.f1 && f0 == o.f0;
    }
};

ChainMap2 compose(const ChainMap2& g, const ChainMap2& f);

ModMap h1_map(const ChainMap2& f);
ModMap h0_map(const ChainMap2& f);

bool is_quasi_iso(const ChainMap2& f);
/* For termwise descriptions with surjective f1: quasi-iso iff the square is
 * cocartesian and H1(f) is injective. Used as a cross-check, never as the
 * sole authority. */
bool quasi_iso_cocartesian_criterion(const ChainMap2& f);
bool is_tight(const ChainMap2& f);

/* M . f for f: H1(M) -> N, with identification witnesses for the homology
 * of the result. */
struct ComposePost {
    Complex2 result;
    ModMap quot;      // M1 (+) N -> result.M1
    DirectSum sum;    // M1 (+) N
    ModMap h1_ident;  // N -> H1(result), iso
    ModMap h0_ident;  // H0(M) -> H0(result), iso
};
ComposePost compose_post(const Complex2& m, const ModMap& f, int sign_convention = -1);

/* g . M for g: N -> H0(M). */
struct ComposePre {
    Complex2 result;
    PullbackResult pb;  // result.M0 = M0 x_{H0} N
    ModMap h1_ident;    // H1(M) -> H1(result), iso
    ModMap h0_ident;    // H0(result) -> N, iso
};
ComposePre compose_pre(const ModMap& g, const Complex2& m);

/* direct sum of complexes, with homology identifications */
struct ComplexSum {
    Complex2 total;
    ChainMap2 inj_a, inj_b, proj_a, proj_b;
    ModMap h1_ident;  // H1(A) (+) H1(B) -> H1(total), iso
    ModMap h0_ident;  // H0(A) (+) H0(B) -> H0(total), iso
    DirectSum h1_sum, h0_sum;
};
ComplexSum direct_sum_cx(const Complex2& a, const Complex2& b);

/* termwise pullback of (f: A -> C, g: B -> C), a subcomplex of A (+) B */
struct ComplexPullback {
    Complex2 total;
    ChainMap2 to_a, to_b;
};
ComplexPullback pullback_cx(const ChainMap2& f, const ChainMap2& g);

/* termwise kernel of a chain map, with the inclusion */
struct ComplexKernel {
    Complex2 total;
    ChainMap2 incl;
};
ComplexKernel kernel_cx(const ChainMap2& f);

/* Truncated simplicial module: levels 0..n_max with the full contravariant
 * action of monotone maps between them. */
struct SimplicialModule {
    int n_max = 0;
    std::vector<ZModule> level;
    /* action of monotone f: [a] -> [b], a map level[b] -> level[a];
     * keyed by (a, b, values of f) */
    std::map<std::vector<i64>, ModMap> act;

    const ModMap& action(const std::vector<i64>& key) const;
    static std::vector<i64> key_of(int a, int b, const std::vector<int>& vals);
};

SimplicialModule dk_simplicial(const Complex2& m, int n_max);
Complex2 dk_normalize(const SimplicialModule& s);
bool simplicial_functorial(const SimplicialModule& s);   // action respects composition
bool simplicial_segal(const SimplicialModule& s);        // Segal squares are pullbacks

}  // namespace ext2cat
