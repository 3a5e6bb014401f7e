#include "ext2cat/zmod.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace ext2cat {

namespace {

constexpr i64 kOrderSat = 4'000'000'000'000'000'000LL;

i64 mod_reduce(i64 v, i64 m)
{
    if (m <= 0) return v;
    v %= m;
    if (v < 0) v += m;
    return v;
}

i64 ext_gcd(i64 a, i64 b, i64& x, i64& y)
{
    if (b == 0) {
        x = 1;
        y = 0;
        return a;
    }
    i64 x1, y1;
    i64 g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

i64 unit_inverse(i64 u, i64 m)
{
    i64 x, y;
    i64 g = ext_gcd(mod_reduce(u, m), m, x, y);
    if (g != 1) throw std::invalid_argument("unit_inverse: not a unit");
    return mod_reduce(x, m);
}

/* d = unit * gcd(d, m) mod m; returns the unit. */
i64 unit_cofactor(i64 d, i64 m)
{
    d = mod_reduce(d, m);
    if (d == 0) return 1;
    i64 g = gcd_i64(d, m);
    i64 t = d / g;
    i64 step = m / g;
    i64 u = t;
    while (gcd_i64(u, m) != 1) u += step;
    return mod_reduce(u, m);
}

}  // namespace

const Budget& default_budget()
{
    static const Budget b{};
    return b;
}

/* --- ZModule ----------------------------------------------------------- */

ZModule::ZModule(Ring ring, std::vector<i64> factors) : ring_(ring), fac_(std::move(factors))
{
    i64 prev = 1;
    for (i64 f : fac_) {
        if (f <= 1 || ring_.m % f != 0 || f % prev != 0)
            throw std::invalid_argument("ZModule: factors must form a divisor chain of m");
        prev = f;
    }
}

ZModule ZModule::free_module(Ring ring, int rank)
{
    return ZModule(ring, std::vector<i64>(rank, ring.m));
}

i64 ZModule::order() const
{
    i64 o = 1;
    for (i64 f : fac_) {
        if (o > kOrderSat / f) return kOrderSat;
        o *= f;
    }
    return o;
}

bool ZModule::order_exceeds(i64 cap) const
{
    i64 o = 1;
    for (i64 f : fac_) {
        if (o > cap / f) return true;
        o *= f;
    }
    return o > cap;
}

std::string ZModule::to_string() const
{
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < fac_.size(); ++i) {
        os << fac_[i];
        if (i + 1 < fac_.size()) os << ",";
    }
    os << "]";
    return os.str();
}

/* --- element helpers ----------------------------------------------------- */

Vec vec_reduce(const ZModule& mod, Vec v)
{
    assert(static_cast<int>(v.size()) == mod.rank());
    for (int i = 0; i < mod.rank(); ++i) v[i] = mod_reduce(v[i], mod.factors()[i]);
    return v;
}

Vec vec_add(const ZModule& mod, const Vec& x, const Vec& y)
{
    Vec r(x.size());
    for (size_t i = 0; i < x.size(); ++i) r[i] = mod_reduce(x[i] + y[i], mod.factors()[i]);
    return r;
}

Vec vec_sub(const ZModule& mod, const Vec& x, const Vec& y)
{
    Vec r(x.size());
    for (size_t i = 0; i < x.size(); ++i) r[i] = mod_reduce(x[i] - y[i], mod.factors()[i]);
    return r;
}

Vec vec_neg(const ZModule& mod, const Vec& x)
{
    Vec r(x.size());
    for (size_t i = 0; i < x.size(); ++i) r[i] = mod_reduce(-x[i], mod.factors()[i]);
    return r;
}

Vec vec_scale(const ZModule& mod, i64 c, const Vec& x)
{
    Vec r(x.size());
    for (size_t i = 0; i < x.size(); ++i) r[i] = mod_reduce(c * x[i], mod.factors()[i]);
    return r;
}

bool vec_is_zero(const Vec& v)
{
    for (i64 x : v)
        if (x != 0) return false;
    return true;
}

Vec unit_vec(const ZModule& mod, int i)
{
    Vec v(mod.rank(), 0);
    v[i] = 1;
    return v;
}

i64 element_order(const ZModule& mod, const Vec& v)
{
    i64 ord = 1;
    for (int i = 0; i < mod.rank(); ++i) {
        i64 f = mod.factors()[i];
        i64 o = f / gcd_i64(f, v[i]);
        ord = ord / gcd_i64(ord, o) * o;
    }
    return ord;
}

/* --- ModMap -------------------------------------------------------------- */

ModMap::ModMap(ZModule src, ZModule dst, IntMat a) : src_(std::move(src)), dst_(std::move(dst)), a_(std::move(a))
{
    if (src_.ring().m != dst_.ring().m) throw mismatch_error("ModMap: ring mismatch");
    if (a_.rows != dst_.rank() || a_.cols != src_.rank()) throw mismatch_error("ModMap: shape mismatch");
    for (int i = 0; i < a_.rows; ++i) {
        i64 fi = dst_.factors()[i];
        for (int j = 0; j < a_.cols; ++j) {
            a_.at(i, j) = mod_reduce(a_.at(i, j), fi);
            i64 need = fi / gcd_i64(fi, src_.factors()[j]);
            if (a_.at(i, j) % need != 0)
                throw std::invalid_argument("ModMap: entry violates well-definedness congruence");
        }
    }
}

ModMap ModMap::zero(const ZModule& src, const ZModule& dst)
{
    return ModMap(src, dst, IntMat(dst.rank(), src.rank()));
}

ModMap ModMap::identity(const ZModule& a)
{
    return ModMap(a, a, IntMat::identity(a.rank()));
}

ModMap ModMap::from_columns(const ZModule& src, const ZModule& dst, const std::vector<Vec>& cols)
{
    IntMat m(dst.rank(), src.rank());
    assert(static_cast<int>(cols.size()) == src.rank());
    for (int j = 0; j < src.rank(); ++j)
        for (int i = 0; i < dst.rank(); ++i) m.at(i, j) = cols[j][i];
    return ModMap(src, dst, m);
}

Vec ModMap::apply(const Vec& x) const
{
    assert(static_cast<int>(x.size()) == src_.rank());
    Vec y(dst_.rank(), 0);
    for (int i = 0; i < dst_.rank(); ++i) {
        i64 acc = 0;
        for (int j = 0; j < src_.rank(); ++j) acc += a_.at(i, j) * mod_reduce(x[j], src_.factors()[j]);
        y[i] = mod_reduce(acc, dst_.factors()[i]);
    }
    return y;
}

Vec ModMap::column(int j) const
{
    Vec y(dst_.rank());
    for (int i = 0; i < dst_.rank(); ++i) y[i] = a_.at(i, j);
    return y;
}

ModMap ModMap::operator+(const ModMap& o) const
{
    if (src_ != o.src_ || dst_ != o.dst_) throw mismatch_error("ModMap+: shape mismatch");
    return ModMap(src_, dst_, mat_add(a_, o.a_));
}

ModMap ModMap::operator-(const ModMap& o) const
{
    if (src_ != o.src_ || dst_ != o.dst_) throw mismatch_error("ModMap-: shape mismatch");
    return ModMap(src_, dst_, mat_sub(a_, o.a_));
}

ModMap ModMap::operator-() const { return ModMap(src_, dst_, mat_neg(a_)); }

bool ModMap::operator==(const ModMap& o) const
{
    return src_ == o.src_ && dst_ == o.dst_ && a_ == o.a_;
}

bool ModMap::operator<(const ModMap& o) const
{
    if (src_.factors() != o.src_.factors()) return src_.factors() < o.src_.factors();
    if (dst_.factors() != o.dst_.factors()) return dst_.factors() < o.dst_.factors();
    return a_.a < o.a_.a;
}

bool ModMap::is_zero_map() const
{
    for (i64 v : a_.a)
        if (v != 0) return false;
    return true;
}

std::string ModMap::to_string() const
{
    return src_.to_string() + "->" + dst_.to_string() + " " + a_.to_string();
}

ModMap compose(const ModMap& g, const ModMap& f)
{
    if (f.dst() != g.src()) throw mismatch_error("compose: middle object mismatch");
    return ModMap(f.src(), g.dst(), mat_mul(g.matrix(), f.matrix()));
}

/* --- Smith normal form over Z/m ------------------------------------------ */

SmithZResult smith_normal_form(const IntMat& a, Ring ring)
{
    const i64 m = ring.m;
    IntMat lifted = a;
    for (auto& v : lifted.a) v = mod_reduce(v, m);
    SnfResult s = smith_form(lifted);

    const int n = std::min(a.rows, a.cols);
    std::vector<i64> diag(a.rows, m);  // rows beyond the diagonal contribute Z/m
    IntMat u = s.u;
    for (int i = 0; i < n; ++i) {
        i64 d = mod_reduce(s.d.at(i, i), m);
        i64 g = d == 0 ? m : gcd_i64(d, m);
        diag[i] = g;
        i64 unit = unit_cofactor(s.d.at(i, i), m);
        if (unit != 1) {
            i64 inv = unit_inverse(unit, m);
            for (int c = 0; c < u.cols; ++c) u.at(i, c) = mod_reduce(inv * u.at(i, c), m);
        }
    }
    for (auto& v : u.a) v = mod_reduce(v, m);
    IntMat v = s.v;
    for (auto& x : v.a) x = mod_reduce(x, m);

    std::vector<i64> kept;
    std::vector<int> kept_rows;
    for (int i = 0; i < a.rows; ++i)
        if (diag[i] > 1) {
            kept.push_back(diag[i]);
            kept_rows.push_back(i);
        }
    ZModule coker(ring, kept);
    IntMat pm(coker.rank(), a.rows);
    for (int r = 0; r < coker.rank(); ++r)
        for (int c = 0; c < a.rows; ++c) pm.at(r, c) = mod_reduce(u.at(kept_rows[r], c), kept[r]);
    ModMap proj(ZModule::free_module(ring, a.rows), coker, pm);
    return SmithZResult{coker, u, v, diag, proj};
}

/* --- canonical form of a cyclic-order list -------------------------------- */

CanonForm canonicalize(Ring ring, const std::vector<i64>& orders)
{
    const int k = static_cast<int>(orders.size());
    for (i64 o : orders)
        if (o < 1 || ring.m % o != 0)
            throw std::invalid_argument("canonicalize: orders must divide the modulus");

    auto is_chain = [](const std::vector<i64>& v) {
        for (size_t i = 1; i < v.size(); ++i)
            if (v[i] % v[i - 1] != 0) return false;
        return true;
    };

    CanonForm cf;
    cf.raw_orders = orders;

    if (is_chain(orders)) {
        cf.u = IntMat::identity(k);
        cf.uinv = IntMat::identity(k);
        std::vector<i64> kept;
        for (i64 o : orders)
            if (o > 1) kept.push_back(o);
        cf.module = ZModule(ring, kept);
        return cf;
    }

    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(), [&](int x, int y) { return orders[x] < orders[y]; });
    std::vector<i64> sorted(k);
    for (int i = 0; i < k; ++i) sorted[i] = orders[perm[i]];
    if (is_chain(sorted)) {
        cf.u = IntMat(k, k);
        cf.uinv = IntMat(k, k);
        for (int i = 0; i < k; ++i) {
            cf.u.at(i, perm[i]) = 1;
            cf.uinv.at(perm[i], i) = 1;
        }
        std::vector<i64> kept;
        for (i64 o : sorted)
            if (o > 1) kept.push_back(o);
        cf.module = ZModule(ring, kept);
        return cf;
    }

    SnfResult s = smith_form(IntMat::diag(orders));
    std::vector<i64> kept;
    for (int i = 0; i < k; ++i) {
        i64 d = s.d.at(i, i);
        assert(d > 0 && ring.m % d == 0);
        if (d > 1) kept.push_back(d);
    }
    cf.module = ZModule(ring, kept);
    cf.u = s.u;
    cf.uinv = s.uinv;
    return cf;
}

Vec CanonForm::to_canon(const Vec& raw) const
{
    const int k = static_cast<int>(raw_orders.size());
    assert(static_cast<int>(raw.size()) == k);
    Vec full(k, 0);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) full[i] += u.at(i, j) * raw[j];
    // canonical orders form an ascending chain, so the trivial slots sit in
    // front; keep the tail that matches the module factors
    Vec out;
    int dropped = k - module.rank();
    for (int i = dropped; i < k; ++i) {
        i64 f = module.factors()[i - dropped];
        i64 v = full[i] % f;
        if (v < 0) v += f;
        out.push_back(v);
    }
    return out;
}

Vec CanonForm::from_canon(const Vec& canon) const
{
    const int k = static_cast<int>(raw_orders.size());
    assert(static_cast<int>(canon.size()) == module.rank());
    Vec full(k, 0);
    int dropped = k - module.rank();
    for (int i = 0; i < module.rank(); ++i) full[dropped + i] = canon[i];
    Vec raw(k, 0);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) raw[i] += uinv.at(i, j) * full[j];
        raw[i] = mod_reduce(raw[i], raw_orders[i]);
    }
    return raw;
}

/* --- kernels, cokernels, images ------------------------------------------ */

namespace {

/* Lattice of x in Z^s with f(x) = 0 in dst: generated by the projected
 * integer kernel of [F | D_dst] together with D_src. Returned as the
 * canonical triangular basis. */
IntMat kernel_lattice_basis(const ModMap& f)
{
    const int s = f.src().rank();
    IntMat big = hstack(f.matrix(), IntMat::diag(f.dst().factors()));
    IntMat kb = lattice_kernel(big);
    IntMat gens(s, kb.cols + s);
    for (int i = 0; i < s; ++i) {
        for (int j = 0; j < kb.cols; ++j) gens.at(i, j) = kb.at(i, j);
        gens.at(i, kb.cols + i) = f.src().factors()[i];
    }
    return hnf_basis(gens);
}

}  // namespace

KernelResult kernel(const ModMap& f)
{
    const Ring ring = f.src().ring();
    const int s = f.src().rank();
    if (s == 0) {
        ZModule k = ZModule::zero(ring);
        return KernelResult{k, ModMap::zero(k, f.src())};
    }
    IntMat h = kernel_lattice_basis(f);
    auto rel = solve_lower_triangular_mat(h, IntMat::diag(f.src().factors()));
    assert(rel);
    SnfResult s2 = smith_form(*rel);
    IntMat gen = mat_mul(h, s2.uinv);
    std::vector<i64> kept;
    std::vector<int> kept_cols;
    for (int i = 0; i < s; ++i) {
        i64 c = s2.d.at(i, i);
        assert(c > 0 && ring.m % c == 0);
        if (c > 1) {
            kept.push_back(c);
            kept_cols.push_back(i);
        }
    }
    ZModule k(ring, kept);
    IntMat incl(s, k.rank());
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < k.rank(); ++j) incl.at(i, j) = gen.at(i, kept_cols[j]);
    return KernelResult{k, ModMap(k, f.src(), incl)};
}

CokernelResult cokernel(const ModMap& f)
{
    const Ring ring = f.dst().ring();
    const int r = f.dst().rank();
    IntMat big = hstack(f.matrix(), IntMat::diag(f.dst().factors()));
    SnfResult s = smith_form(big);
    std::vector<i64> kept;
    std::vector<int> kept_rows;
    for (int i = 0; i < r; ++i) {
        i64 c = s.d.at(i, i);
        assert(c > 0 && ring.m % c == 0);
        if (c > 1) {
            kept.push_back(c);
            kept_rows.push_back(i);
        }
    }
    ZModule q(ring, kept);
    IntMat pm(q.rank(), r);
    for (int i = 0; i < q.rank(); ++i)
        for (int j = 0; j < r; ++j) pm.at(i, j) = mod_reduce(s.u.at(kept_rows[i], j), kept[i]);
    return CokernelResult{q, ModMap(f.dst(), q, pm)};
}

ImageResult image(const ModMap& f)
{
    const Ring ring = f.dst().ring();
    const int r = f.dst().rank();
    if (r == 0) {
        ZModule img = ZModule::zero(ring);
        return ImageResult{img, ModMap::zero(f.src(), img), ModMap::zero(img, f.dst())};
    }
    IntMat big = hstack(f.matrix(), IntMat::diag(f.dst().factors()));
    IntMat h = hnf_basis(big);
    auto rel = solve_lower_triangular_mat(h, IntMat::diag(f.dst().factors()));
    assert(rel);
    SnfResult s = smith_form(*rel);
    IntMat gen = mat_mul(h, s.uinv);
    std::vector<i64> kept;
    std::vector<int> kept_cols;
    for (int i = 0; i < r; ++i) {
        i64 c = s.d.at(i, i);
        assert(c > 0 && ring.m % c == 0);
        if (c > 1) {
            kept.push_back(c);
            kept_cols.push_back(i);
        }
    }
    ZModule img(ring, kept);
    IntMat incl(r, img.rank());
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < img.rank(); ++j) incl.at(i, j) = gen.at(i, kept_cols[j]);
    // coordinates of f(e_j) in the h basis, then in canonical coordinates
    auto coords = solve_lower_triangular_mat(h, f.matrix());
    assert(coords);
    IntMat sm = mat_mul(s.u, *coords);
    IntMat surj(img.rank(), f.src().rank());
    for (int i = 0; i < img.rank(); ++i)
        for (int j = 0; j < f.src().rank(); ++j) surj.at(i, j) = mod_reduce(sm.at(kept_cols[i], j), kept[i]);
    ImageResult res{img, ModMap(f.src(), img, surj), ModMap(img, f.dst(), incl)};
    assert(compose(res.incl, res.surj) == f);
    return res;
}

bool is_injective(const ModMap& f) { return kernel(f).module.is_zero(); }
bool is_surjective(const ModMap& f) { return cokernel(f).module.is_zero(); }
bool is_iso(const ModMap& f) { return f.src().factors() == f.dst().factors() && is_surjective(f); }

/* --- direct sums ----------------------------------------------------------- */

DirectSum direct_sum(const std::vector<ZModule>& parts)
{
    if (parts.empty()) throw std::invalid_argument("direct_sum: need at least one part");
    Ring ring = parts[0].ring();
    std::vector<i64> orders;
    std::vector<int> offset;
    for (const auto& p : parts) {
        if (p.ring().m != ring.m) throw mismatch_error("direct_sum: ring mismatch");
        offset.push_back(static_cast<int>(orders.size()));
        for (i64 f : p.factors()) orders.push_back(f);
    }
    CanonForm cf = canonicalize(ring, orders);
    DirectSum ds;
    ds.module = cf.module;
    const int k = static_cast<int>(orders.size());
    for (size_t p = 0; p < parts.size(); ++p) {
        const ZModule& part = parts[p];
        IntMat inj(ds.module.rank(), part.rank());
        for (int j = 0; j < part.rank(); ++j) {
            Vec raw(k, 0);
            raw[offset[p] + j] = 1;
            Vec c = cf.to_canon(raw);
            for (int i = 0; i < ds.module.rank(); ++i) inj.at(i, j) = c[i];
        }
        ds.inj.emplace_back(part, ds.module, inj);
        IntMat proj(part.rank(), ds.module.rank());
        for (int j = 0; j < ds.module.rank(); ++j) {
            Vec c = cf.from_canon(unit_vec(ds.module, j));
            for (int i = 0; i < part.rank(); ++i) proj.at(i, j) = c[offset[p] + i];
        }
        ds.proj.emplace_back(ds.module, part, proj);
    }
    return ds;
}

DirectSum direct_sum(const ZModule& a, const ZModule& b) { return direct_sum(std::vector<ZModule>{a, b}); }

/* --- pullback / pushout ------------------------------------------------------ */

PullbackResult pullback(const ModMap& f, const ModMap& g)
{
    if (f.dst() != g.dst()) throw mismatch_error("pullback: cospan mismatch");
    DirectSum ds = direct_sum(f.src(), g.src());
    ModMap diff = compose(f, ds.proj[0]) - compose(g, ds.proj[1]);
    KernelResult k = kernel(diff);
    PullbackResult pb;
    pb.module = k.module;
    pb.incl = k.incl;
    pb.to_a = compose(ds.proj[0], k.incl);
    pb.to_b = compose(ds.proj[1], k.incl);
    pb.sum = ds;
    return pb;
}

ModMap into_pullback(const PullbackResult& pb, const ModMap& u, const ModMap& v)
{
    ModMap w = compose(pb.sum.inj[0], u) + compose(pb.sum.inj[1], v);
    auto g = factor_through_injection(w, pb.incl);
    if (!g) throw std::invalid_argument("into_pullback: square does not commute");
    return *g;
}

PushoutResult pushout(const ModMap& f, const ModMap& g)
{
    if (f.src() != g.src()) throw mismatch_error("pushout: span mismatch");
    DirectSum ds = direct_sum(f.dst(), g.dst());
    ModMap diff = compose(ds.inj[0], f) - compose(ds.inj[1], g);
    CokernelResult c = cokernel(diff);
    PushoutResult po;
    po.module = c.module;
    po.proj = c.proj;
    po.from_a = compose(c.proj, ds.inj[0]);
    po.from_b = compose(c.proj, ds.inj[1]);
    po.sum = ds;
    return po;
}

ModMap from_pushout(const PushoutResult& po, const ModMap& u, const ModMap& v)
{
    ModMap w = compose(u, po.sum.proj[0]) + compose(v, po.sum.proj[1]);
    auto g = factor_through_surjection(w, po.proj);
    if (!g) throw std::invalid_argument("from_pushout: square does not commute");
    return *g;
}

/* --- solving ------------------------------------------------------------------ */

std::optional<Vec> solve(const ModMap& f, const Vec& y)
{
    const int s = f.src().rank();
    const int r = f.dst().rank();
    IntMat big = hstack(f.matrix(), IntMat::diag(f.dst().factors()));
    Vec lift(y.begin(), y.end());
    auto z = solve_int(big, lift);
    if (!z) return std::nullopt;
    Vec x(s);
    for (int i = 0; i < s; ++i) x[i] = mod_reduce((*z)[i], f.src().factors()[i]);
    (void)r;
    return x;
}

std::optional<ModMap> factor_through_injection(const ModMap& f, const ModMap& incl)
{
    if (f.dst() != incl.dst()) throw mismatch_error("factor_through_injection: target mismatch");
    std::vector<Vec> cols;
    for (int j = 0; j < f.src().rank(); ++j) {
        auto y = solve(incl, f.column(j));
        if (!y) return std::nullopt;
        cols.push_back(*y);
    }
    ModMap g = ModMap::from_columns(f.src(), incl.src(), cols);
    assert(compose(incl, g) == f);
    return g;
}

std::optional<ModMap> factor_through_surjection(const ModMap& f, const ModMap& proj)
{
    if (f.src() != proj.src()) throw mismatch_error("factor_through_surjection: source mismatch");
    // f must kill ker proj
    KernelResult k = kernel(proj);
    if (!compose(f, k.incl).is_zero_map()) return std::nullopt;
    std::vector<Vec> cols;
    for (int j = 0; j < proj.dst().rank(); ++j) {
        auto x = solve(proj, unit_vec(proj.dst(), j));
        assert(x);
        cols.push_back(f.apply(*x));
    }
    ModMap g = ModMap::from_columns(proj.dst(), f.dst(), cols);
    assert(compose(g, proj) == f);
    return g;
}

ModMap inverse(const ModMap& f)
{
    if (f.src().factors() != f.dst().factors()) throw std::invalid_argument("inverse: not an iso");
    std::vector<Vec> cols;
    for (int j = 0; j < f.dst().rank(); ++j) {
        auto x = solve(f, unit_vec(f.dst(), j));
        if (!x) throw std::invalid_argument("inverse: not surjective");
        cols.push_back(*x);
    }
    ModMap g = ModMap::from_columns(f.dst(), f.src(), cols);
    assert(compose(g, f) == ModMap::identity(f.src()));
    assert(compose(f, g) == ModMap::identity(f.dst()));
    return g;
}

std::optional<ModMap> hom_from_generator_images(const ZModule& x, const std::vector<Vec>& gens,
                                                const ZModule& y, const std::vector<Vec>& vals)
{
    assert(gens.size() == vals.size());
    const Ring ring = x.ring();
    const int k = static_cast<int>(gens.size());
    ZModule freek = ZModule::free_module(ring, k);
    IntMat gm(x.rank(), k);
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < x.rank(); ++i) gm.at(i, j) = gens[j][i];
    ModMap span(freek, x, gm);

    auto apply_combo = [&](const std::vector<i64>& c) {
        Vec img(y.rank(), 0);
        for (int t = 0; t < k; ++t)
            for (int i = 0; i < y.rank(); ++i) img[i] += c[t] * vals[t][i];
        return vec_reduce(y, img);
    };

    if (k > 0) {
        // every relation among the generators must map to zero in y
        IntMat h = kernel_lattice_basis(span);
        for (int j = 0; j < h.cols; ++j) {
            std::vector<i64> c(k);
            for (int t = 0; t < k; ++t) c[t] = h.at(t, j);
            if (!vec_is_zero(apply_combo(c))) return std::nullopt;
        }
    }
    std::vector<Vec> cols;
    for (int i = 0; i < x.rank(); ++i) {
        auto c = solve(span, unit_vec(x, i));
        if (!c) return std::nullopt;  // gens do not generate x
        cols.push_back(apply_combo(*c));
    }
    ModMap g = ModMap::from_columns(x, y, cols);
    for (int t = 0; t < k; ++t) assert(g.apply(gens[t]) == vec_reduce(y, Vec(vals[t])));
    return g;
}

/* --- Hom modules ----------------------------------------------------------------- */

HomModule::HomModule(ZModule a, ZModule b) : a_(std::move(a)), b_(std::move(b))
{
    std::vector<i64> orders;
    for (int i = 0; i < b_.rank(); ++i)
        for (int j = 0; j < a_.rank(); ++j) {
            i64 g = gcd_i64(b_.factors()[i], a_.factors()[j]);
            if (g > 1) {
                slots_.emplace_back(i, j);
                slot_ord_.push_back(g);
            }
        }
    canon_ = canonicalize(a_.ring(), slot_ord_);
}

ModMap HomModule::to_map(const Vec& coords) const
{
    Vec raw = canon_.from_canon(coords);
    IntMat m(b_.rank(), a_.rank());
    for (size_t s = 0; s < slots_.size(); ++s) {
        auto [i, j] = slots_[s];
        i64 bi = b_.factors()[i];
        m.at(i, j) = mod_reduce(raw[s] * (bi / slot_ord_[s]), bi);
    }
    return ModMap(a_, b_, m);
}

Vec HomModule::raw_from_map(const ModMap& f) const
{
    assert(f.src() == a_ && f.dst() == b_);
    Vec raw(slots_.size(), 0);
    for (size_t s = 0; s < slots_.size(); ++s) {
        auto [i, j] = slots_[s];
        i64 bi = b_.factors()[i];
        i64 scale = bi / slot_ord_[s];
        assert(f.matrix().at(i, j) % scale == 0);
        raw[s] = mod_reduce(f.matrix().at(i, j) / scale, slot_ord_[s]);
    }
    return raw;
}

Vec HomModule::from_map(const ModMap& f) const { return canon_.to_canon(raw_from_map(f)); }

ModMap hom_postcompose(const HomModule& src, const HomModule& dst, const ModMap& h)
{
    if (h.src() != src.target() || h.dst() != dst.target() || src.source() != dst.source())
        throw mismatch_error("hom_postcompose: shape mismatch");
    std::vector<Vec> cols;
    const ZModule& sm = src.as_module();
    for (int j = 0; j < sm.rank(); ++j) cols.push_back(dst.from_map(compose(h, src.to_map(unit_vec(sm, j)))));
    return ModMap::from_columns(sm, dst.as_module(), cols);
}

ModMap hom_precompose(const HomModule& src, const HomModule& dst, const ModMap& h)
{
    if (h.dst() != src.source() || h.src() != dst.source() || src.target() != dst.target())
        throw mismatch_error("hom_precompose: shape mismatch");
    std::vector<Vec> cols;
    const ZModule& sm = src.as_module();
    for (int j = 0; j < sm.rank(); ++j) cols.push_back(dst.from_map(compose(src.to_map(unit_vec(sm, j)), h)));
    return ModMap::from_columns(sm, dst.as_module(), cols);
}

/* --- enumeration -------------------------------------------------------------------- */

namespace {

bool odometer_next(Vec& v, const std::vector<i64>& orders)
{
    for (size_t i = 0; i < v.size(); ++i) {
        if (++v[i] < orders[i]) return true;
        v[i] = 0;
    }
    return false;
}

}  // namespace

std::vector<ModMap> enumerate_homs(const ZModule& a, const ZModule& b, const Budget& budget)
{
    HomModule hm(a, b);
    std::vector<i64> orders;
    i64 count = 1;
    for (int i = 0; i < hm.as_module().rank(); ++i) {
        i64 o = hm.as_module().factors()[i];
        orders.push_back(o);
        if (count > budget.limit / o + 1) budget.charge(budget.limit + 1);
        count *= o;
    }
    budget.charge(count);
    std::vector<ModMap> out;
    out.reserve(count);
    Vec v(orders.size(), 0);
    do {
        out.push_back(hm.to_map(v));
    } while (odometer_next(v, orders));
    return out;
}

std::vector<Vec> enumerate_elements(const ZModule& a, const Budget& budget)
{
    i64 count = 1;
    for (i64 f : a.factors()) {
        if (count > budget.limit / f + 1) budget.charge(budget.limit + 1);
        count *= f;
    }
    budget.charge(count);
    std::vector<Vec> out;
    out.reserve(count);
    Vec v(a.rank(), 0);
    do {
        out.push_back(v);
    } while (odometer_next(v, a.factors()));
    return out;
}

std::vector<ZModule> enumerate_modules_of_order(Ring ring, i64 n, const Budget& budget)
{
    if (n < 1) throw std::invalid_argument("enumerate_modules_of_order: n >= 1 required");
    std::vector<i64> divisors;
    for (i64 d = 2; d <= ring.m; ++d)
        if (ring.m % d == 0) divisors.push_back(d);

    std::set<std::vector<i64>> seen;
    std::vector<ZModule> out;
    std::vector<i64> cur;
    i64 produced = 0;
    // nondecreasing factor tuples with the right product, then canonicalized
    auto rec = [&](auto&& self, i64 rem, size_t from) -> void {
        if (rem == 1) {
            CanonForm cf = canonicalize(ring, cur);
            if (seen.insert(cf.module.factors()).second) {
                budget.charge(++produced);
                out.push_back(cf.module);
            }
            return;
        }
        for (size_t i = from; i < divisors.size(); ++i) {
            if (rem % divisors[i] != 0) continue;
            cur.push_back(divisors[i]);
            self(self, rem / divisors[i], i);
            cur.pop_back();
        }
    };
    rec(rec, n, 0);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<ModMap> enumerate_isos(const ZModule& a, const ZModule& b, const Budget& budget)
{
    std::vector<ModMap> out;
    if (a.factors() != b.factors()) return out;
    for (auto& f : enumerate_homs(a, b, budget))
        if (is_iso(f)) out.push_back(f);
    return out;
}

}  // namespace ext2cat
