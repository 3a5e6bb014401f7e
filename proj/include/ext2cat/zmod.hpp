#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ext2cat/intmat.hpp"

namespace ext2cat {

struct budget_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct mismatch_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/* Enumeration budget, counted in items produced. Exceeding it is a hard
 * error, never silent truncation. */
struct Budget {
    i64 limit = 1'000'000;
    void charge(i64 n) const
    {
        if (n > limit || n < 0)
            throw budget_error("enumeration budget exceeded (" + std::to_string(n) + " > " +
                               std::to_string(limit) + ")");
    }
};

const Budget& default_budget();

struct Ring {
    i64 m = 0;
    explicit Ring(i64 mod = 0) : m(mod)
    {
        if (mod != 0 && mod < 2) throw std::invalid_argument("Ring: modulus must be >= 2");
    }
    bool operator==(const Ring& o) const { return m == o.m; }
};

/* Finite Z/m-module in invariant-factor form: factors f0 | f1 | ... with
 * 1 < fi and fi | m. The empty list is the zero module. Two modules are
 * isomorphic iff their factor lists are equal. */
class ZModule {
public:
    ZModule() = default;
    ZModule(Ring ring, std::vector<i64> factors);

    static ZModule zero(Ring ring) { return ZModule(ring, {}); }
    static ZModule free_module(Ring ring, int rank);
    static ZModule cyclic(Ring ring, i64 d) { return ZModule(ring, {d}); }

    const Ring& ring() const { return ring_; }
    const std::vector<i64>& factors() const { return fac_; }
    int rank() const { return static_cast<int>(fac_.size()); }
    bool is_zero() const { return fac_.empty(); }
    i64 order() const;       // saturates at a large sentinel instead of overflowing
    bool order_exceeds(i64 cap) const;

    bool operator==(const ZModule& o) const { return ring_ == o.ring_ && fac_ == o.fac_; }
    bool operator!=(const ZModule& o) const { return !(*this == o); }
    bool operator<(const ZModule& o) const { return fac_ < o.fac_; }

    std::string to_string() const;

private:
    Ring ring_{};
    std::vector<i64> fac_;
};

using Vec = std::vector<i64>;

Vec vec_reduce(const ZModule& mod, Vec v);
Vec vec_add(const ZModule& mod, const Vec& x, const Vec& y);
Vec vec_sub(const ZModule& mod, const Vec& x, const Vec& y);
Vec vec_neg(const ZModule& mod, const Vec& x);
Vec vec_scale(const ZModule& mod, i64 c, const Vec& x);
bool vec_is_zero(const Vec& v);
Vec unit_vec(const ZModule& mod, int i);
i64 element_order(const ZModule& mod, const Vec& v);

/* Morphism of Z/m-modules, stored as a matrix over representatives:
 * entry (i, j) is reduced mod dst factor i and satisfies the congruence
 * a[i][j] = 0 mod fi / gcd(fi, gj) that makes generator images
 * well-defined. */
class ModMap {
public:
    ModMap() = default;
    ModMap(ZModule src, ZModule dst, IntMat a);

    static ModMap zero(const ZModule& src, const ZModule& dst);
    static ModMap identity(const ZModule& a);
    /* columns are images of the source generators */
    static ModMap from_columns(const ZModule& src, const ZModule& dst, const std::vector<Vec>& cols);

    const ZModule& src() const { return src_; }
    const ZModule& dst() const { return dst_; }
    const IntMat& matrix() const { return a_; }

    Vec apply(const Vec& x) const;
    Vec column(int j) const;

    ModMap operator+(const ModMap& o) const;
    ModMap operator-(const ModMap& o) const;
    ModMap operator-() const;
    bool operator==(const ModMap& o) const;
    bool operator!=(const ModMap& o) const { return !(*this == o); }
    bool operator<(const ModMap& o) const;  // canonical ordering for tie-breaking

    bool is_zero_map() const;
    std::string to_string() const;

private:
    ZModule src_, dst_;
    IntMat a_;
};

ModMap compose(const ModMap& g, const ModMap& f);  // g after f

/* --- canonical forms ------------------------------------------------- */

/* Cokernel of (Z/m)^cols -> (Z/m)^rows in invariant-factor form, with
 * invertible transforms over Z/m witnessing the diagonalization:
 * u * a * v = diag over Z/m. Rows of `proj` give the projection from
 * (Z/m)^rows onto the cokernel. */
struct SmithZResult {
    ZModule coker;
    IntMat u, v;          // invertible mod m
    std::vector<i64> diag;  // divisors of m, divisibility chain, length = rows
    ModMap proj;           // (Z/m)^rows -> coker
};
SmithZResult smith_normal_form(const IntMat& a, Ring ring);

/* Canonical form of a direct sum of cyclic modules of the given orders
 * (each dividing m, 1s allowed and dropped). to_canon/from_canon convert
 * coordinates between the raw list and the canonical module. */
struct CanonForm {
    ZModule module;
    std::vector<i64> raw_orders;
    IntMat u, uinv;  // y = u x over Z, x = uinv y
    Vec to_canon(const Vec& raw) const;
    Vec from_canon(const Vec& canon) const;
};
CanonForm canonicalize(Ring ring, const std::vector<i64>& orders);

/* --- kernels, cokernels, images -------------------------------------- */

struct KernelResult {
    ZModule module;
    ModMap incl;  // injective, f . incl = 0, universal
};
KernelResult kernel(const ModMap& f);

struct CokernelResult {
    ZModule module;
    ModMap proj;  // surjective, proj . f = 0, universal
};
CokernelResult cokernel(const ModMap& f);

struct ImageResult {
    ZModule module;
    ModMap surj;  // src -> image
    ModMap incl;  // image -> dst, incl . surj = f
};
ImageResult image(const ModMap& f);

bool is_injective(const ModMap& f);
bool is_surjective(const ModMap& f);
bool is_iso(const ModMap& f);

/* --- sums, pullbacks, pushouts ---------------------------------------- */

struct DirectSum {
    ZModule module;
    std::vector<ModMap> inj;   // part i -> sum
    std::vector<ModMap> proj;  // sum -> part i
};
DirectSum direct_sum(const std::vector<ZModule>& parts);
DirectSum direct_sum(const ZModule& a, const ZModule& b);

struct PullbackResult {
    ZModule module;
    ModMap to_a, to_b;
    ModMap incl;  // into a (+) b
    DirectSum sum;
};
PullbackResult pullback(const ModMap& f, const ModMap& g);  // f: A->C, g: B->C
ModMap into_pullback(const PullbackResult& pb, const ModMap& u, const ModMap& v);

struct PushoutResult {
    ZModule module;
    ModMap from_a, from_b;
    ModMap proj;  // from a (+) b
    DirectSum sum;
};
PushoutResult pushout(const ModMap& f, const ModMap& g);  // f: C->A, g: C->B
ModMap from_pushout(const PushoutResult& po, const ModMap& u, const ModMap& v);

/* --- solving ----------------------------------------------------------- */

std::optional<Vec> solve(const ModMap& f, const Vec& y);  // any x with f(x) = y

/* g with incl . g = f, for injective incl (nullopt if f misses the image) */
std::optional<ModMap> factor_through_injection(const ModMap& f, const ModMap& incl);
/* g with g . proj = f, for surjective proj (nullopt unless f kills ker proj) */
std::optional<ModMap> factor_through_surjection(const ModMap& f, const ModMap& proj);
ModMap inverse(const ModMap& f);  // f must be iso

/* Hom from generating-set images: gens generate X, h(gens[t]) = vals[t].
 * nullopt when no well-defined homomorphism exists. */
std::optional<ModMap> hom_from_generator_images(const ZModule& x, const std::vector<Vec>& gens,
                                                const ZModule& y, const std::vector<Vec>& vals);

/* --- Hom modules -------------------------------------------------------- */

/* Hom(A, B) as a finite Z/m-module: one cyclic slot of order
 * gcd(a_j, b_i) per generator pair, trivial slots dropped. Provides the
 * coordinate <-> matrix dictionary used by all linear solves over maps. */
class HomModule {
public:
    HomModule() = default;
    HomModule(ZModule a, ZModule b);

    const ZModule& source() const { return a_; }
    const ZModule& target() const { return b_; }
    const ZModule& as_module() const { return canon_.module; }

    ModMap to_map(const Vec& coords) const;     // coords in as_module()
    Vec from_map(const ModMap& f) const;

    i64 count() const { return as_module().order(); }

private:
    ZModule a_, b_;
    std::vector<std::pair<int, int>> slots_;  // (i, j) with nontrivial gcd
    std::vector<i64> slot_ord_;
    CanonForm canon_;
    Vec raw_from_map(const ModMap& f) const;
    friend ModMap hom_postcompose(const HomModule& src, const HomModule& dst, const ModMap& h);
    friend ModMap hom_precompose(const HomModule& src, const HomModule& dst, const ModMap& h);
};

/* Hom(A,B) -> Hom(A,B') induced by h: B -> B' */
ModMap hom_postcompose(const HomModule& src, const HomModule& dst, const ModMap& h);
/* Hom(A,B) -> Hom(A',B) induced by h: A' -> A */
ModMap hom_precompose(const HomModule& src, const HomModule& dst, const ModMap& h);

/* --- enumeration -------------------------------------------------------- */

std::vector<ModMap> enumerate_homs(const ZModule& a, const ZModule& b,
                                   const Budget& budget = default_budget());
std::vector<Vec> enumerate_elements(const ZModule& a, const Budget& budget = default_budget());
std::vector<ZModule> enumerate_modules_of_order(Ring ring, i64 n,
                                                const Budget& budget = default_budget());
std::vector<ModMap> enumerate_isos(const ZModule& a, const ZModule& b,
                                   const Budget& budget = default_budget());

}  // namespace ext2cat
