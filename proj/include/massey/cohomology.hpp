#pragma once

// Inhomogeneous cochains C^n(G, M) = Map(G^n, M) for a finite group G and a
// finite-dimensional F_p[G]-module M, with the differential
//
//   (df)(g1,...,g_{n+1}) = g1.f(g2,...,g_{n+1})
//                          + sum_{i=1..n} (-1)^i f(g1,...,g_i g_{i+1},...,g_{n+1})
//                          + (-1)^{n+1} f(g1,...,g_n)
//
// Cochains are full (non-normalized) tables. A tuple (g1,...,gn) is stored at
// index g1*N^(n-1) + ... + gn, N = |G|, and each entry is a vector of length dim M.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "massey/error.hpp"
#include "massey/groups.hpp"
#include "massey/linalg.hpp"

namespace massey {

struct CohomologyBudget {
    std::size_t table_entries = std::size_t{1} << 22;     // |G|^n * dim for any materialized cochain
    std::size_t matrix_entries = std::size_t{1} << 28;    // rows * cols of a dense coboundary matrix
    std::size_t streamed_entries = std::size_t{1} << 29;  // |G|^(n+1) * dim for streamed cocycle checks
};

namespace detail {

inline std::size_t checked_power(std::size_t base, std::size_t exp, std::size_t factor, std::size_t budget,
                                 const char* what) {
    std::size_t r = factor;
    for (std::size_t i = 0; i < exp; ++i) {
        if (base != 0 && r > budget / base) throw BudgetExceeded(what, budget + 1, budget);
        r *= base;
    }
    if (r > budget) throw BudgetExceeded(what, r, budget);
    return r;
}

inline std::size_t int_pow(std::size_t base, std::size_t exp) {
    std::size_t r = 1;
    for (std::size_t i = 0; i < exp; ++i) r *= base;
    return r;
}

}  // namespace detail

/// A finite-dimensional F_p-space with a linear action of G: g.m = action(g) * m.
class GModule {
public:
    static GModule trivial(GroupPtr g, std::uint32_t p, std::size_t dim = 1) {
        check_modulus(p);
        std::vector<Mat> act(g->order(), Mat::identity(p, dim));
        return GModule(std::move(g), p, dim, std::move(act), true);
    }

    /// Validates that every matrix is invertible and that g -> action[g] is a homomorphism.
    static GModule from_action(GroupPtr g, std::uint32_t p, std::size_t dim, std::vector<Mat> action) {
        check_modulus(p);
        if (action.size() != g->order()) throw DimensionMismatch("module action table", g->order(), action.size());
        for (const auto& a : action) {
            if (a.rows() != dim || a.cols() != dim) throw DimensionMismatch("module action matrix", dim, a.rows());
            if (a.modulus() != p) throw InputError("module action matrix has wrong modulus");
            if (!is_invertible(a)) throw InputError("module action matrix is not invertible");
        }
        if (!(action[g->identity()] == Mat::identity(p, dim))) throw PreconditionFailed("identity does not act trivially");
        for (Elem x = 0; x < g->order(); ++x)
            for (Elem y = 0; y < g->order(); ++y)
                if (!(action[g->mul(x, y)] == action[x] * action[y]))
                    throw PreconditionFailed("module action is not a homomorphism at (" + std::to_string(x) + ", " +
                                             std::to_string(y) + ")");
        bool triv = true;
        for (const auto& a : action) triv = triv && a == Mat::identity(p, dim);
        return GModule(std::move(g), p, dim, std::move(action), triv);
    }

    /// The module over h.source() on which x acts as h(x) acts on m.
    static GModule pullback(const GModule& m, const GroupHom& h) {
        if (!(*h.target() == *m.group_)) throw InputError("pullback along a homomorphism into a different group");
        std::vector<Mat> act(h.source()->order());
        for (Elem x = 0; x < act.size(); ++x) act[x] = m.action_[h(x)];
        return GModule(h.source(), m.p_, m.dim_, std::move(act), m.trivial_);
    }

    /// Restriction to a subgroup, realized over the given standalone copy of it (see Subgroup::as_group).
    static GModule restrict_to(const GModule& m, const Subgroup& s, GroupPtr sub) {
        if (!(*s.parent() == *m.group_)) throw InputError("subgroup of a different group");
        if (sub->order() != s.order()) throw InputError("subgroup copy has the wrong order");
        std::vector<Mat> act(s.order());
        for (std::size_t i = 0; i < act.size(); ++i) act[i] = m.action_[s.members()[i]];
        return GModule(std::move(sub), m.p_, m.dim_, std::move(act), m.trivial_);
    }

    const GroupPtr& group() const noexcept { return group_; }
    std::uint32_t modulus() const noexcept { return p_; }
    std::size_t dim() const noexcept { return dim_; }
    const Mat& action(Elem g) const { return action_.at(g); }
    const std::vector<Mat>& actions() const noexcept { return action_; }
    bool is_trivial() const noexcept { return trivial_; }

    friend bool operator==(const GModule& a, const GModule& b) {
        return a.p_ == b.p_ && a.dim_ == b.dim_ && (a.group_ == b.group_ || *a.group_ == *b.group_) &&
               a.action_ == b.action_;
    }

private:
    GModule(GroupPtr g, std::uint32_t p, std::size_t dim, std::vector<Mat> action, bool trivial)
        : group_(std::move(g)), p_(p), dim_(dim), action_(std::move(action)), trivial_(trivial) {}

    GroupPtr group_;
    std::uint32_t p_;
    std::size_t dim_;
    std::vector<Mat> action_;
    bool trivial_;
};

using ModulePtr = std::shared_ptr<const GModule>;

inline ModulePtr make_module(GModule m) { return std::make_shared<const GModule>(std::move(m)); }

inline ModulePtr trivial_module(GroupPtr g, std::uint32_t p, std::size_t dim = 1) {
    return make_module(GModule::trivial(std::move(g), p, dim));
}

class Cochain {
public:
    static Cochain zero(ModulePtr m, std::size_t degree, const CohomologyBudget& budget = {}) {
        const auto entries = detail::checked_power(m->group()->order(), degree, m->dim(), budget.table_entries,
                                                   "cochain table");
        return Cochain(std::move(m), degree, std::vector<std::uint8_t>(entries, 0));
    }

    /// Builds a cochain from a flat vector of length |G|^degree * dim.
    static Cochain from_vec(ModulePtr m, std::size_t degree, const Vec& flat) {
        const auto expected = detail::int_pow(m->group()->order(), degree) * m->dim();
        if (flat.dim() != expected) throw DimensionMismatch("cochain table", expected, flat.dim());
        if (flat.modulus() != m->modulus()) throw InputError("cochain modulus mismatch");
        return Cochain(std::move(m), degree, flat.data());
    }

    static Cochain from_function(ModulePtr m, std::size_t degree,
                                 const std::function<Vec(std::span<const Elem>)>& fn,
                                 const CohomologyBudget& budget = {}) {
        Cochain c = zero(std::move(m), degree, budget);
        const auto n = c.group().order();
        const auto d = c.dim();
        std::vector<Elem> t(degree, 0);
        for (std::size_t idx = 0; idx < c.tuple_count(); ++idx) {
            std::size_t rest = idx;
            for (std::size_t j = degree; j-- > 0;) {
                t[j] = static_cast<Elem>(rest % n);
                rest /= n;
            }
            Vec v = fn(t);
            if (v.dim() != d) throw DimensionMismatch("cochain value", d, v.dim());
            std::copy(v.data().begin(), v.data().end(), c.values_.begin() + idx * d);
        }
        return c;
    }

    /// A degree-1 cochain with values in a one-dimensional module, from its scalar table.
    static Cochain scalar_1cochain(ModulePtr m, const std::vector<std::int64_t>& values) {
        if (m->dim() != 1) throw InputError("scalar cochain needs a one-dimensional module");
        return from_vec(m, 1, Vec(m->modulus(), values));
    }

    std::size_t degree() const noexcept { return degree_; }
    const ModulePtr& module_ptr() const noexcept { return module_; }
    const GModule& module() const noexcept { return *module_; }
    const FiniteGroup& group() const noexcept { return *module_->group(); }
    std::uint32_t modulus() const noexcept { return module_->modulus(); }
    std::size_t dim() const noexcept { return module_->dim(); }
    std::size_t tuple_count() const noexcept { return values_.size() / module_->dim(); }

    std::size_t tuple_index(std::span<const Elem> t) const {
        if (t.size() != degree_) throw DimensionMismatch("cochain argument", degree_, t.size());
        std::size_t idx = 0;
        for (auto g : t) idx = idx * group().order() + g;
        return idx;
    }

    std::uint8_t entry(std::size_t tuple, std::size_t coord) const { return values_[tuple * dim() + coord]; }

    Vec value(std::span<const Elem> t) const { return value_at(tuple_index(t)); }

    Vec value_at(std::size_t tuple) const {
        Vec v(modulus(), dim());
        std::copy(values_.begin() + tuple * dim(), values_.begin() + (tuple + 1) * dim(), v.data().begin());
        return v;
    }

    /// Scalar value of a degree-1 cochain with one-dimensional coefficients.
    std::uint8_t operator()(Elem g) const { return values_.at(std::size_t(g) * dim()); }

    Vec flat() const {
        Vec v(modulus(), values_.size());
        v.data() = values_;
        return v;
    }

    const std::vector<std::uint8_t>& raw() const noexcept { return values_; }

    bool is_zero() const {
        return std::all_of(values_.begin(), values_.end(), [](std::uint8_t x) { return x == 0; });
    }

    Cochain& operator+=(const Cochain& o) { return axpy(1, o); }
    Cochain& operator-=(const Cochain& o) { return axpy(modulus() - 1, o); }
    friend Cochain operator+(Cochain a, const Cochain& b) { return a += b; }
    friend Cochain operator-(Cochain a, const Cochain& b) { return a -= b; }
    Cochain operator-() const { return scaled(modulus() - 1); }

    Cochain scaled(std::uint32_t c) const {
        Cochain r = *this;
        for (auto& x : r.values_) x = detail::mul_mod(x, c % modulus(), modulus());
        return r;
    }

    Cochain& axpy(std::uint32_t c, const Cochain& o) {
        check_compatible(o);
        const auto p = modulus();
        c %= p;
        for (std::size_t i = 0; i < values_.size(); ++i)
            if (o.values_[i]) values_[i] = static_cast<std::uint8_t>((values_[i] + c * o.values_[i]) % p);
        return *this;
    }

    friend bool operator==(const Cochain& a, const Cochain& b) {
        return a.degree_ == b.degree_ && a.values_ == b.values_ &&
               (a.module_ == b.module_ || *a.module_ == *b.module_);
    }

    void check_compatible(const Cochain& o) const {
        if (o.degree_ != degree_) throw DimensionMismatch("cochain degree", degree_, o.degree_);
        if (o.module_ != module_ && !(*o.module_ == *module_)) throw InputError("cochains over different modules");
    }

private:
    Cochain(ModulePtr m, std::size_t degree, std::vector<std::uint8_t> values)
        : module_(std::move(m)), degree_(degree), values_(std::move(values)) {}

    ModulePtr module_;
    std::size_t degree_;
    std::vector<std::uint8_t> values_;
};

namespace detail {

/// Visits (df)(t) for every tuple t of G^(n+1) in index order without storing df.
/// The sink receives (tuple index, value span) and returns false to stop early.
template <class Sink>
void stream_coboundary(const Cochain& f, Sink&& sink) {
    const auto& m = f.module();
    const auto& g = f.group();
    const std::size_t N = g.order(), n = f.degree(), d = m.dim();
    const std::uint32_t p = m.modulus();
    const std::size_t out_tuples = int_pow(N, n + 1);
    const auto& vals = f.raw();
    std::vector<std::size_t> pw(n + 2);
    for (std::size_t k = 0; k < pw.size(); ++k) pw[k] = int_pow(N, k);
    std::vector<Elem> t(n + 1, 0);
    std::vector<std::size_t> prefix(n + 2), suffix(n + 2);
    std::vector<std::uint32_t> acc(d);
    for (std::size_t idx = 0; idx < out_tuples; ++idx) {
        std::size_t rest = idx;
        for (std::size_t j = n + 1; j-- > 0;) {
            t[j] = static_cast<Elem>(rest % N);
            rest /= N;
        }
        // prefix[k] = index of t[0..k), suffix[k] = index of t[k..n]
        prefix[0] = 0;
        for (std::size_t k = 0; k <= n; ++k) prefix[k + 1] = prefix[k] * N + t[k];
        suffix[n + 1] = 0;
        for (std::size_t k = n + 1; k-- > 0;) suffix[k] = suffix[k + 1] + t[k] * pw[n - k];
        std::fill(acc.begin(), acc.end(), 0u);
        // g1 . f(g2..g_{n+1})
        {
            const std::size_t src = suffix[1];
            const auto* fv = vals.data() + src * d;
            if (m.is_trivial()) {
                for (std::size_t r = 0; r < d; ++r) acc[r] += fv[r];
            } else {
                const Mat& a = m.action(t[0]);
                for (std::size_t r = 0; r < d; ++r)
                    for (std::size_t c = 0; c < d; ++c) acc[r] += std::uint32_t(a(r, c)) * fv[c];
            }
        }
        // (-1)^i f(..., g_i g_{i+1}, ...), merging positions i-1 and i (0-based)
        for (std::size_t i = 1; i <= n; ++i) {
            const Elem merged = g.mul(t[i - 1], t[i]);
            const std::size_t src = (prefix[i - 1] * N + merged) * pw[n - i] + suffix[i + 1];
            const auto* fv = vals.data() + src * d;
            const bool negative = (i % 2) == 1;
            for (std::size_t r = 0; r < d; ++r) acc[r] += negative ? (p - fv[r]) % p : fv[r];
        }
        // (-1)^{n+1} f(g1..gn)
        {
            const std::size_t src = prefix[n];
            const auto* fv = vals.data() + src * d;
            const bool negative = ((n + 1) % 2) == 1;
            for (std::size_t r = 0; r < d; ++r) acc[r] += negative ? (p - fv[r]) % p : fv[r];
        }
        for (auto& x : acc) x %= p;
        if (!sink(idx, std::span<const std::uint32_t>(acc))) return;
    }
}

}  // namespace detail

inline Cochain coboundary(const Cochain& f, const CohomologyBudget& budget = {}) {
    Cochain out = Cochain::zero(f.module_ptr(), f.degree() + 1, budget);
    const auto d = f.dim();
    std::vector<std::int64_t> buf(out.tuple_count() * d);
    detail::stream_coboundary(f, [&](std::size_t idx, std::span<const std::uint32_t> v) {
        for (std::size_t r = 0; r < d; ++r) buf[idx * d + r] = v[r];
        return true;
    });
    return Cochain::from_vec(f.module_ptr(), f.degree() + 1, Vec(f.modulus(), buf));
}

/// df == 0, checked without materializing df.
inline bool is_cocycle(const Cochain& f, const CohomologyBudget& budget = {}) {
    detail::checked_power(f.group().order(), f.degree() + 1, f.dim(), budget.streamed_entries, "cocycle check");
    bool ok = true;
    detail::stream_coboundary(f, [&](std::size_t, std::span<const std::uint32_t> v) {
        for (auto x : v)
            if (x) ok = false;
        return ok;
    });
    return ok;
}

/// (f u g)(x1..xk, y1..yl) = f(x1..xk) * g(y1..yl), for trivial one-dimensional coefficients.
inline Cochain cup(const Cochain& f, const Cochain& g, const CohomologyBudget& budget = {}) {
    if (!f.module().is_trivial() || !g.module().is_trivial() || f.dim() != 1 || g.dim() != 1)
        throw InputError("cup product is only supported for trivial one-dimensional coefficients");
    if (f.module_ptr() != g.module_ptr() && !(f.module() == g.module()))
        throw InputError("cup product of cochains over different modules");
    Cochain out = Cochain::zero(f.module_ptr(), f.degree() + g.degree(), budget);
    const auto p = f.modulus();
    const std::size_t ng = g.tuple_count();
    std::vector<std::int64_t> buf(out.tuple_count());
    for (std::size_t i = 0; i < f.tuple_count(); ++i) {
        const std::uint32_t a = f.raw()[i];
        if (!a) continue;
        for (std::size_t j = 0; j < ng; ++j) buf[i * ng + j] = (a * g.raw()[j]) % p;
    }
    return Cochain::from_vec(f.module_ptr(), out.degree(), Vec(p, buf));
}

/// Dense matrix of d: C^n -> C^(n+1). Column t*dim+c is the image of the unit
/// cochain supported at tuple t, coordinate c.
inline Mat coboundary_matrix(const ModulePtr& m, std::size_t n, const CohomologyBudget& budget = {}) {
    const std::size_t N = m->group()->order(), d = m->dim();
    const auto rows = detail::checked_power(N, n + 1, d, budget.table_entries, "coboundary matrix rows");
    const auto cols = detail::int_pow(N, n) * d;
    if (cols != 0 && rows > budget.matrix_entries / cols)
        throw BudgetExceeded("coboundary matrix", rows * cols, budget.matrix_entries);
    const auto p = m->modulus();
    const auto& g = *m->group();
    Mat out(p, rows, cols);
    auto& data = out.data();
    auto bump = [&](std::size_t r, std::size_t c, std::uint32_t v) {
        auto& x = data[r * cols + c];
        x = static_cast<std::uint8_t>((x + v) % p);
    };
    std::vector<Elem> t(n + 1);
    const std::size_t tail = detail::int_pow(N, n);
    for (std::size_t idx = 0; idx < rows / d; ++idx) {
        std::size_t rest = idx;
        for (std::size_t j = n + 1; j-- > 0;) {
            t[j] = static_cast<Elem>(rest % N);
            rest /= N;
        }
        const Mat& a = m->action(t[0]);
        const std::size_t first = idx % tail;
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = 0; c < d; ++c)
                if (a(r, c)) bump(idx * d + r, first * d + c, a(r, c));
        for (std::size_t i = 1; i <= n; ++i) {
            std::size_t src = 0;
            for (std::size_t k = 0; k <= n; ++k) {
                if (k == i) continue;
                const Elem x = (k == i - 1) ? g.mul(t[i - 1], t[i]) : t[k];
                src = src * N + x;
            }
            const std::uint32_t sign = (i % 2) ? p - 1 : 1;
            for (std::size_t r = 0; r < d; ++r) bump(idx * d + r, src * d + r, sign);
        }
        const std::size_t last = idx / N;
        const std::uint32_t sign = ((n + 1) % 2) ? p - 1 : 1;
        for (std::size_t r = 0; r < d; ++r) bump(idx * d + r, last * d + r, sign);
    }
    return out;
}

namespace detail {

/// The crossed-homomorphism equations x.f(s) - f(xs) + f(x) = 0 at (e, e) and at
/// (x, s) for s in the generating set. Their solutions are exactly Z^1: with
/// c = df, the cocycle identity for c gives c(g, hs) = c(g, h) and c(g, e) = g.c(e, e).
inline Mat crossed_hom_generator_system(const ModulePtr& m, const CohomologyBudget& budget) {
    const auto& g = *m->group();
    const std::size_t N = g.order(), d = m->dim();
    const auto p = m->modulus();
    std::vector<std::pair<Elem, Elem>> pairs{{g.identity(), g.identity()}};
    for (Elem x = 0; x < N; ++x)
        for (auto s : g.generators()) pairs.emplace_back(x, s);
    const std::size_t rows = pairs.size() * d, cols = N * d;
    if (rows > budget.matrix_entries / cols) throw BudgetExceeded("crossed homomorphism system", rows * cols, budget.matrix_entries);
    Mat out(p, rows, cols);
    auto& data = out.data();
    auto bump = [&](std::size_t r, std::size_t c, std::uint32_t v) {
        auto& x = data[r * cols + c];
        x = static_cast<std::uint8_t>((x + v) % p);
    };
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        const auto [x, s] = pairs[k];
        const Mat& a = m->action(x);
        for (std::size_t r = 0; r < d; ++r) {
            for (std::size_t c = 0; c < d; ++c)
                if (a(r, c)) bump(k * d + r, s * d + c, a(r, c));
            bump(k * d + r, g.mul(x, s) * d + r, p - 1);
            bump(k * d + r, x * d + r, 1);
        }
    }
    return out;
}

/// A matrix whose kernel is Z^n: the full coboundary matrix when it fits the
/// budget, otherwise (n == 1 only) the generator system above.
inline Mat cocycle_equations(std::size_t n, const ModulePtr& m, const CohomologyBudget& budget) {
    if (n != 1) return coboundary_matrix(m, n, budget);
    try {
        return coboundary_matrix(m, 1, budget);
    } catch (const BudgetExceeded&) {
        return crossed_hom_generator_system(m, budget);
    }
}

}  // namespace detail

/// A cohomology class, carried by a representative cocycle. Classes have no
/// canonical representative; compare them with a CoboundarySolver.
struct CohomClass {
    Cochain representative;
    bool certified_cocycle = false;

    std::size_t degree() const noexcept { return representative.degree(); }
};

inline CohomClass make_class(Cochain z, const CohomologyBudget& budget = {}) {
    if (!is_cocycle(z, budget)) throw PreconditionFailed("cochain is not a cocycle");
    return CohomClass{std::move(z), true};
}

/// Decides whether degree-n cocycles are coboundaries, produces witnesses, and
/// gives every class a canonical coordinate vector (its normal form).
///
/// For n == 2 only the equations at (e, e) and at pairs (g, s), s in the
/// generating set of G, are used: if z is a cocycle and a satisfies da = z on
/// those pairs, the cocycle identity for c = z - da gives c(g, hs) = c(g, h) and
/// c(g, e) = g.c(e, e) = 0, so da = z everywhere. The system has
/// (|G| * |S| + 1) * dim rows instead of |G|^2 * dim.
class CoboundarySolver {
public:
    CoboundarySolver(ModulePtr m, std::size_t degree, const CohomologyBudget& budget = {})
        : module_(std::move(m)), degree_(degree), budget_(budget), space_(module_->modulus(), 0) {
        const auto& g = *module_->group();
        const std::size_t N = g.order(), d = module_->dim();
        const auto p = module_->modulus();
        if (degree_ == 0) {
            space_ = RowSpace(p, N * d);
            return;
        }
        if (degree_ == 2) {
            row_pairs_.emplace_back(g.identity(), g.identity());
            for (Elem x = 0; x < N; ++x)
                for (auto s : g.generators()) row_pairs_.emplace_back(x, s);
            const std::size_t rows = row_pairs_.size() * d;
            const std::size_t cols = N * d;
            if (rows > budget_.matrix_entries / cols)
                throw BudgetExceeded("coboundary solver system", rows * cols, budget_.matrix_entries);
            std::vector<Vec> columns(cols, Vec(p, rows));
            // (da)(x, s) = x.a(s) - a(xs) + a(x)
            for (std::size_t k = 0; k < row_pairs_.size(); ++k) {
                const auto [x, s] = row_pairs_[k];
                const std::size_t row0 = k * d;
                const Mat& a = module_->action(x);
                for (std::size_t r = 0; r < d; ++r) {
                    for (std::size_t c = 0; c < d; ++c)
                        if (a(r, c)) bump(columns[s * d + c], row0 + r, a(r, c));
                    bump(columns[g.mul(x, s) * d + r], row0 + r, p - 1);
                    bump(columns[x * d + r], row0 + r, 1);
                }
            }
            build(columns, rows);
        } else {
            Mat full = coboundary_matrix(module_, degree_ - 1, budget_);
            std::vector<Vec> columns;
            columns.reserve(full.cols());
            for (std::size_t c = 0; c < full.cols(); ++c) columns.push_back(full.column(c));
            build(columns, full.rows());
        }
    }

    const ModulePtr& module_ptr() const noexcept { return module_; }
    std::size_t degree() const noexcept { return degree_; }

    /// Length of normal-form vectors.
    std::size_t coordinate_dim() const noexcept { return space_.ambient_dim(); }

    /// Canonical coordinates of the class of z; equal exactly when classes are equal.
    /// The map is linear in z.
    Vec normal_form(const CohomClass& z) const {
        check_input(z);
        return space_.normal_form(restricted_rows(z.representative));
    }

    Vec normal_form(const Cochain& z) const { return normal_form(certify(z)); }

    bool is_zero(const CohomClass& z) const { return normal_form(z).is_zero(); }

    bool equal(const CohomClass& a, const CohomClass& b) const {
        return normal_form(a) == normal_form(b);
    }

    /// A cochain w of degree n-1 with dw = z, or nothing if z is not a coboundary.
    std::optional<Cochain> witness(const CohomClass& z) const {
        check_input(z);
        if (degree_ == 0) throw InputError("degree-0 cochains have no coboundary witnesses");
        auto red = space_.reduce(restricted_rows(z.representative));
        if (!red.remainder.is_zero()) return std::nullopt;
        Cochain w = Cochain::from_vec(module_, degree_ - 1, red.tag);
        if (!(coboundary(w, budget_) == z.representative))
            throw std::logic_error("coboundary witness failed verification");
        return w;
    }

    std::optional<Cochain> witness(const Cochain& z) const { return witness(certify(z)); }

    CohomClass certify(const Cochain& z) const {
        if (!is_cocycle(z, budget_)) throw PreconditionFailed("input is not a cocycle");
        return CohomClass{z, true};
    }

private:
    static void bump(Vec& v, std::size_t i, std::uint32_t x) { v.set(i, std::int64_t(v[i]) + x); }

    void build(const std::vector<Vec>& columns, std::size_t rows) {
        space_ = RowSpace(module_->modulus(), rows, columns.size());
        for (std::size_t c = 0; c < columns.size(); ++c)
            space_.insert(columns[c], Vec::unit(module_->modulus(), columns.size(), c));
    }

    void check_input(const CohomClass& z) const {
        if (z.degree() != degree_) throw DimensionMismatch("coboundary solver degree", degree_, z.degree());
        if (z.representative.module_ptr() != module_ && !(z.representative.module() == *module_))
            throw InputError("class over a different module");
        if (!z.certified_cocycle && !is_cocycle(z.representative, budget_))
            throw PreconditionFailed("input is not a cocycle");
    }

    Vec restricted_rows(const Cochain& z) const {
        if (degree_ != 2) return z.flat();
        const std::size_t N = module_->group()->order(), d = module_->dim();
        Vec out(module_->modulus(), row_pairs_.size() * d);
        for (std::size_t k = 0; k < row_pairs_.size(); ++k)
            for (std::size_t r = 0; r < d; ++r)
                out.data()[k * d + r] = z.entry(std::size_t(row_pairs_[k].first) * N + row_pairs_[k].second, r);
        return out;
    }

    ModulePtr module_;
    std::size_t degree_;
    CohomologyBudget budget_;
    std::vector<std::pair<Elem, Elem>> row_pairs_;
    RowSpace space_;
};

inline std::optional<Cochain> is_coboundary(const Cochain& z, const CohomologyBudget& budget = {}) {
    if (z.degree() == 0) {
        if (!is_cocycle(z, budget)) throw PreconditionFailed("input is not a cocycle");
        return std::nullopt;
    }
    CoboundarySolver solver(z.module_ptr(), z.degree(), budget);
    return solver.witness(z);
}

inline std::optional<Cochain> is_coboundary(const CohomClass& z, const CohomologyBudget& budget = {}) {
    if (z.degree() == 0) return is_coboundary(z.representative, budget);
    CoboundarySolver solver(z.representative.module_ptr(), z.degree(), budget);
    return solver.witness(z);
}

/// Basis of Z^n = ker(d: C^n -> C^(n+1)).
inline std::vector<Cochain> cocycle_space(std::size_t n, const ModulePtr& m, const CohomologyBudget& budget = {}) {
    std::vector<Cochain> out;
    for (auto& v : kernel_basis(detail::cocycle_equations(n, m, budget))) out.push_back(Cochain::from_vec(m, n, v));
    return out;
}

/// Basis of B^n = im(d: C^(n-1) -> C^n); empty for n == 0.
inline std::vector<Cochain> coboundary_space(std::size_t n, const ModulePtr& m, const CohomologyBudget& budget = {}) {
    std::vector<Cochain> out;
    if (n == 0) return out;
    auto d = coboundary_matrix(m, n - 1, budget);
    auto red = rref(d.transpose());
    for (std::size_t i = 0; i < red.rank; ++i) out.push_back(Cochain::from_vec(m, n, red.reduced.row(i)));
    return out;
}

/// dim H^n(G, M) = dim Z^n - dim B^n.
inline std::size_t h_dim(std::size_t n, const ModulePtr& m, const CohomologyBudget& budget = {}) {
    const auto cn = detail::checked_power(m->group()->order(), n, m->dim(), budget.table_entries, "cochain space");
    const auto z = cn - rank(detail::cocycle_equations(n, m, budget));
    const auto b = n == 0 ? 0 : rank(coboundary_matrix(m, n - 1, budget));
    return z - b;
}

/// Representatives of a basis of H^n(G, M): cocycles spanning a complement of B^n in Z^n.
inline std::vector<CohomClass> cohomology_basis(std::size_t n, const ModulePtr& m, const CohomologyBudget& budget = {}) {
    const auto cn = detail::checked_power(m->group()->order(), n, m->dim(), budget.table_entries, "cochain space");
    RowSpace span(m->modulus(), cn);
    for (const auto& b : coboundary_space(n, m, budget)) span.insert(b.flat());
    std::vector<CohomClass> out;
    for (auto& z : cocycle_space(n, m, budget))
        if (span.insert(z.flat())) out.push_back(CohomClass{std::move(z), true});
    return out;
}

/// Restriction of cochains to a subgroup, realized over a standalone copy of the subgroup.
class Restriction {
public:
    Restriction(const ModulePtr& m, const Subgroup& s)
        : subgroup_(s), group_(s.as_group()), module_(make_module(GModule::restrict_to(*m, s, group_))), source_(m) {}

    const GroupPtr& group() const noexcept { return group_; }
    const ModulePtr& module() const noexcept { return module_; }
    const Subgroup& subgroup() const noexcept { return subgroup_; }

    Cochain operator()(const Cochain& f) const {
        if (f.module_ptr() != source_ && !(f.module() == *source_)) throw InputError("restriction of a foreign cochain");
        const auto& members = subgroup_.members();
        const std::size_t k = members.size(), N = f.group().order(), n = f.degree(), d = f.dim();
        Cochain out = Cochain::zero(module_, n);
        std::vector<std::int64_t> buf(out.tuple_count() * d);
        std::vector<Elem> t(n);
        for (std::size_t idx = 0; idx < out.tuple_count(); ++idx) {
            std::size_t rest = idx, src = 0, pw = 1;
            for (std::size_t j = n; j-- > 0;) {
                src += members[rest % k] * pw;
                pw *= N;
                rest /= k;
            }
            for (std::size_t r = 0; r < d; ++r) buf[idx * d + r] = f.entry(src, r);
        }
        return Cochain::from_vec(module_, n, Vec(f.modulus(), buf));
    }

    CohomClass operator()(const CohomClass& c) const { return CohomClass{(*this)(c.representative), c.certified_cocycle}; }

private:
    Subgroup subgroup_;
    GroupPtr group_;
    ModulePtr module_;
    ModulePtr source_;
};

inline Cochain restrict_to(const Cochain& f, const Subgroup& s) { return Restriction(f.module_ptr(), s)(f); }

inline CohomClass restrict_to(const CohomClass& c, const Subgroup& s) {
    return Restriction(c.representative.module_ptr(), s)(c);
}

/// Basis (as classes) of the kernel of H^n(G, M) -> prod_i H^n(S_i, M).
inline std::vector<CohomClass> restriction_kernel(std::size_t n, const ModulePtr& m, const std::vector<Subgroup>& subgroups,
                                                  const CohomologyBudget& budget = {}) {
    for (const auto& s : subgroups)
        if (s.order() == m->group()->order()) return {};
    const auto basis = cohomology_basis(n, m, budget);
    const auto p = m->modulus();
    if (basis.empty()) return {};
    // Column i holds the concatenated normal forms of the restrictions of basis[i].
    std::vector<Vec> columns(basis.size());
    std::size_t rows = 0;
    std::vector<std::vector<Vec>> parts(basis.size());
    for (const auto& s : subgroups) {
        Restriction res(m, s);
        CoboundarySolver solver(res.module(), n, budget);
        for (std::size_t i = 0; i < basis.size(); ++i) parts[i].push_back(solver.normal_form(res(basis[i])));
        rows += parts[0].back().dim();
    }
    for (std::size_t i = 0; i < basis.size(); ++i) {
        Vec col(p, rows);
        std::size_t off = 0;
        for (const auto& part : parts[i]) {
            std::copy(part.data().begin(), part.data().end(), col.data().begin() + off);
            off += part.dim();
        }
        columns[i] = std::move(col);
    }
    std::vector<CohomClass> out;
    for (const auto& lambda : kernel_basis(Mat::from_columns(p, rows, columns))) {
        Cochain z = Cochain::zero(m, n, budget);
        for (std::size_t i = 0; i < basis.size(); ++i) z.axpy(lambda[i], basis[i].representative);
        out.push_back(CohomClass{std::move(z), true});
    }
    return out;
}

/// H^1_*(G, M): classes of H^1 restricting to zero on every cyclic subgroup.
inline std::vector<CohomClass> h1_star(const ModulePtr& m, const CohomologyBudget& budget = {}) {
    return restriction_kernel(1, m, cyclic_subgroups(m->group()), budget);
}

}  // namespace massey
