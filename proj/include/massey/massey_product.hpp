#pragma once

// Defining systems and Massey products for 1-dimensional classes with trivial
// F_p coefficients. A defining system for <a_1, ..., a_n> is a family of
// 1-cochains a_ij, 1 <= i < j <= n+1, (i, j) != (1, n+1), with
//
//     a_{i,i+1} representing a_i,    d a_ij = sum_{i<l<j} a_il u a_lj,
//
// and its value is the class of sum_{1<k<n+1} a_1k u a_{k,n+1}.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "massey/cohomology.hpp"
#include "massey/error.hpp"
#include "massey/groups.hpp"
#include "massey/linalg.hpp"
#include "massey/unipotent.hpp"

namespace massey {

class DefiningSystem {
public:
    /// The all-zero system of fold n over the given trivial one-dimensional module.
    DefiningSystem(ModulePtr m, std::size_t n) : module_(std::move(m)), n_(n) {
        if (!module_->is_trivial() || module_->dim() != 1)
            throw InputError("defining systems need trivial one-dimensional coefficients");
        if (n < 2) throw InputError("Massey products need at least two inputs");
        entries_.assign(slot_count(), Cochain::zero(module_, 1));
    }

    std::size_t n() const noexcept { return n_; }
    const ModulePtr& module_ptr() const noexcept { return module_; }
    std::uint32_t modulus() const noexcept { return module_->modulus(); }

    bool has(std::size_t i, std::size_t j) const noexcept {
        return 1 <= i && i < j && j <= n_ + 1 && !(i == 1 && j == n_ + 1);
    }

    const Cochain& at(std::size_t i, std::size_t j) const { return entries_[slot(i, j)]; }

    void set(std::size_t i, std::size_t j, Cochain c) {
        if (c.degree() != 1) throw DimensionMismatch("defining system entry degree", 1, c.degree());
        c.check_compatible(entries_[slot(i, j)]);
        entries_[slot(i, j)] = std::move(c);
    }

    /// sum_{i<l<j} a_il u a_lj, the cochain d a_ij must equal; also defined for (1, n+1).
    Cochain cup_sum(std::size_t i, std::size_t j) const {
        Cochain s = Cochain::zero(module_, 2);
        for (std::size_t l = i + 1; l < j; ++l) s += cup(at(i, l), at(l, j));
        return s;
    }

    friend bool operator==(const DefiningSystem& a, const DefiningSystem& b) {
        return a.n_ == b.n_ && a.entries_ == b.entries_;
    }

private:
    std::size_t slot_count() const { return (n_ + 1) * n_ / 2 - 1; }

    std::size_t slot(std::size_t i, std::size_t j) const {
        if (!has(i, j)) throw InputError("no defining-system entry (" + std::to_string(i) + "," + std::to_string(j) + ")");
        // Row-major over i < j, with (1, n+1) skipped.
        std::size_t k = 0;
        for (std::size_t r = 1; r < i; ++r) k += n_ + 1 - r;
        k += j - i - 1;
        return i == 1 ? k : k - 1;
    }

    ModulePtr module_;
    std::size_t n_;
    std::vector<Cochain> entries_;
};

struct Validation {
    bool ok = true;
    int condition = 0;  // 1: a_{i,i+1} does not represent the input; 2: d a_ij != cup sum
    std::size_t i = 0, j = 0;
    std::string message;
};

namespace detail {

inline void check_trivial_class(const CohomClass& c, const ModulePtr& m) {
    if (c.degree() != 1) throw InputError("Massey inputs must be degree-1 classes");
    const auto& cm = c.representative.module();
    if (!(c.representative.module_ptr() == m || cm == *m)) throw InputError("Massey inputs over different modules");
    if (!c.certified_cocycle && !is_cocycle(c.representative)) throw PreconditionFailed("Massey input is not a cocycle");
}

}  // namespace detail

/// Checks condition (2) for every entry off the superdiagonal and that every
/// superdiagonal entry is a cocycle. Reports the first failure in (j - i, i) order.
inline Validation validate(const DefiningSystem& ds) {
    const auto n = ds.n();
    for (std::size_t i = 1; i <= n; ++i)
        if (!is_cocycle(ds.at(i, i + 1)))
            return {false, 1, i, i + 1, "entry (" + std::to_string(i) + "," + std::to_string(i + 1) + ") is not a cocycle"};
    for (std::size_t len = 2; len <= n; ++len)
        for (std::size_t i = 1; i + len <= n + 1; ++i) {
            const std::size_t j = i + len;
            if (!ds.has(i, j)) continue;
            if (!(coboundary(ds.at(i, j)) == ds.cup_sum(i, j)))
                return {false, 2, i, j,
                        "d a(" + std::to_string(i) + "," + std::to_string(j) + ") differs from the cup sum"};
        }
    return {};
}

/// Both conditions, with condition (1) against the given input classes.
inline Validation validate(const DefiningSystem& ds, const std::vector<CohomClass>& inputs) {
    if (inputs.size() != ds.n()) throw DimensionMismatch("Massey inputs", ds.n(), inputs.size());
    for (const auto& c : inputs) detail::check_trivial_class(c, ds.module_ptr());
    for (std::size_t i = 1; i <= ds.n(); ++i) {
        const Cochain diff = ds.at(i, i + 1) - inputs[i - 1].representative;
        if (!is_cocycle(diff) || !is_coboundary(diff))
            return {false, 1, i, i + 1,
                    "entry (" + std::to_string(i) + "," + std::to_string(i + 1) + ") does not represent input " +
                        std::to_string(i)};
    }
    return validate(ds);
}

/// The class of sum_k a_1k u a_{k,n+1}; throws if ds is not a defining system.
inline CohomClass value(const DefiningSystem& ds) {
    const auto v = validate(ds);
    if (!v.ok) throw PreconditionFailed("invalid defining system: " + v.message);
    return make_class(ds.cup_sum(1, ds.n() + 1));
}

/// Why a triple product is undefined: the pair (1,2) or (2,3) whose cup is nonzero.
struct UndefinedWitness {
    std::size_t first = 0;  // 1 for chi1 u chi2, 2 for chi2 u chi3
    CohomClass cup;
};

/// The value set of <chi1, chi2, chi3> as particular + span(indeterminacy_basis).
class MasseyValueCoset {
public:
    const CohomClass& particular() const noexcept { return particular_; }
    /// Linearly independent in H^2.
    const std::vector<CohomClass>& indeterminacy_basis() const noexcept { return basis_; }
    const DefiningSystem& particular_system() const noexcept { return system_; }
    const CoboundarySolver& solver() const noexcept { return *solver_; }
    std::shared_ptr<const CoboundarySolver> solver_ptr() const noexcept { return solver_; }

    bool contains(const CohomClass& c) const {
        const Vec v = solver_->normal_form(c) - solver_->normal_form(particular_);
        return span_.contains(v);
    }

    bool contains_zero() const { return zero_system().has_value(); }

    /// A defining system (with the same superdiagonal) whose value is zero, if any.
    std::optional<DefiningSystem> zero_system() const {
        auto red = span_.reduce(solver_->normal_form(particular_).scaled(solver_->module_ptr()->modulus() - 1));
        if (!red.remainder.is_zero()) return std::nullopt;
        DefiningSystem ds = system_;
        Cochain a13 = ds.at(1, 3), a24 = ds.at(2, 4);
        for (std::size_t k = 0; k < sources_.size(); ++k) {
            const auto c = red.tag[k];
            if (!c) continue;
            if (sources_[k].first == 0)
                a24.axpy(c, h1_[sources_[k].second]);
            else
                a13.axpy(c, h1_[sources_[k].second]);
        }
        ds.set(1, 3, a13);
        ds.set(2, 4, a24);
        return ds;
    }

    /// Normal forms of the indeterminacy basis, in solver coordinates.
    std::vector<Vec> indeterminacy_normal_forms() const {
        std::vector<Vec> out;
        for (const auto& b : basis_) out.push_back(solver_->normal_form(b));
        return out;
    }

private:
    friend std::variant<MasseyValueCoset, UndefinedWitness> triple_massey(const CohomClass&, const CohomClass&,
                                                                          const CohomClass&, const CohomologyBudget&);

    MasseyValueCoset(CohomClass particular, DefiningSystem system, std::shared_ptr<const CoboundarySolver> solver)
        : particular_(std::move(particular)), system_(std::move(system)), solver_(std::move(solver)),
          span_(solver_->module_ptr()->modulus(), solver_->coordinate_dim()) {}

    CohomClass particular_;
    DefiningSystem system_;
    std::shared_ptr<const CoboundarySolver> solver_;
    std::vector<CohomClass> basis_;
    std::vector<Cochain> h1_;
    // Generator k of the indeterminacy is chi1 u h1_[s] (first == 0) or h1_[s] u chi3 (first == 1).
    std::vector<std::pair<int, std::size_t>> sources_;
    RowSpace span_;
};

/// <chi1, chi2, chi3>: undefined (with a nonzero cup witness) or the exact coset
/// particular + (chi1 u H^1 + H^1 u chi3).
inline std::variant<MasseyValueCoset, UndefinedWitness> triple_massey(const CohomClass& chi1, const CohomClass& chi2,
                                                                      const CohomClass& chi3,
                                                                      const CohomologyBudget& budget = {}) {
    const ModulePtr m = chi1.representative.module_ptr();
    for (const auto* c : {&chi1, &chi2, &chi3}) detail::check_trivial_class(*c, m);
    auto solver = std::make_shared<const CoboundarySolver>(m, 2, budget);
    const Cochain c12 = cup(chi1.representative, chi2.representative);
    const Cochain c23 = cup(chi2.representative, chi3.representative);
    auto a13 = solver->witness(CohomClass{c12, true});
    if (!a13) return UndefinedWitness{1, CohomClass{c12, true}};
    auto a24 = solver->witness(CohomClass{c23, true});
    if (!a24) return UndefinedWitness{2, CohomClass{c23, true}};

    DefiningSystem ds(m, 3);
    ds.set(1, 2, chi1.representative);
    ds.set(2, 3, chi2.representative);
    ds.set(3, 4, chi3.representative);
    ds.set(1, 3, *a13);
    ds.set(2, 4, *a24);
    MasseyValueCoset out(CohomClass{ds.cup_sum(1, 4), true}, ds, solver);

    // Z^1 with trivial coefficients is Hom(G, F_p); B^1 = 0.
    out.h1_ = cocycle_space(1, m, budget);
    const std::size_t gens = 2 * out.h1_.size();
    out.span_ = RowSpace(m->modulus(), solver->coordinate_dim(), gens);
    std::size_t k = 0;
    for (int side = 0; side < 2; ++side)
        for (std::size_t s = 0; s < out.h1_.size(); ++s, ++k) {
            Cochain g = side == 0 ? cup(chi1.representative, out.h1_[s]) : cup(out.h1_[s], chi3.representative);
            out.sources_.emplace_back(side, s);
            CohomClass cls{std::move(g), true};
            if (out.span_.insert(solver->normal_form(cls), Vec::unit(m->modulus(), gens, k)))
                out.basis_.push_back(std::move(cls));
        }
    return out;
}

inline bool contains_zero(const MasseyValueCoset& c) { return c.contains_zero(); }

// ---------------------------------------------------------------------------
// n-fold vanishing

enum class VanishingStrategy { enumerate, dwyer };

enum class VanishingVerdict { undefined, contains_zero, defined_not_vanishing };

inline const char* to_string(VanishingVerdict v) {
    switch (v) {
        case VanishingVerdict::undefined: return "undefined";
        case VanishingVerdict::contains_zero: return "contains_zero";
        case VanishingVerdict::defined_not_vanishing: return "defined_not_vanishing";
    }
    return "?";
}

inline const char* to_string(VanishingStrategy s) { return s == VanishingStrategy::enumerate ? "enumerate" : "dwyer"; }

struct VanishingResult {
    VanishingVerdict verdict = VanishingVerdict::undefined;
    /// contains_zero: a system with value zero; defined_not_vanishing: some defining system.
    std::optional<DefiningSystem> system;
    /// dwyer + contains_zero: the lift G -> U_{n+1}(F_p) as element codes of UnitriangularArith(n, p, false).
    std::optional<std::vector<std::uint64_t>> lift;
    std::size_t nodes = 0;
};

struct VanishingOptions {
    VanishingStrategy strategy = VanishingStrategy::enumerate;
    std::size_t budget = std::size_t{1} << 20;  // defining systems (enumerate) or search nodes (dwyer)
    CohomologyBudget cohomology{};
};

namespace detail {

inline VanishingResult vanishing_enumerate(const std::vector<CohomClass>& inputs, const VanishingOptions& opt) {
    const auto n = inputs.size();
    const ModulePtr m = inputs[0].representative.module_ptr();
    CoboundarySolver solver(m, 2, opt.cohomology);
    std::vector<Vec> hom_basis;
    for (const auto& h : cocycle_space(1, m, opt.cohomology)) hom_basis.push_back(h.flat());

    DefiningSystem ds(m, n);
    for (std::size_t i = 1; i <= n; ++i) ds.set(i, i + 1, inputs[i - 1].representative);
    // Entries off the superdiagonal, by increasing j - i; each depends only on shorter ones.
    std::vector<std::pair<std::size_t, std::size_t>> order;
    for (std::size_t len = 2; len < n; ++len)
        for (std::size_t i = 1; i + len <= n + 1; ++i) order.emplace_back(i, i + len);

    VanishingResult res;
    std::size_t systems = 0;
    bool stop = false;
    auto rec = [&](auto&& self, std::size_t depth) -> void {
        if (stop) return;
        if (depth == order.size()) {
            if (++systems > opt.budget) throw BudgetExceeded("defining systems", systems, opt.budget);
            const CohomClass v{ds.cup_sum(1, n + 1), true};
            if (!solver.witness(v)) {
                if (!res.system) {
                    res.verdict = VanishingVerdict::defined_not_vanishing;
                    res.system = ds;
                }
                return;
            }
            res.verdict = VanishingVerdict::contains_zero;
            res.system = ds;
            stop = true;
            return;
        }
        ++res.nodes;
        const auto [i, j] = order[depth];
        const auto w = solver.witness(CohomClass{ds.cup_sum(i, j), true});
        if (!w) return;
        AffineEnumerator it(w->flat(), hom_basis, opt.budget);
        while (auto a = it.next()) {
            ds.set(i, j, Cochain::from_vec(m, 1, *a));
            self(self, depth + 1);
            if (stop) return;
        }
        ds.set(i, j, Cochain::zero(m, 1));
    };
    rec(rec, 0);
    return res;
}

/// Image table (as codes) of a homomorphism G -> U_{n+1} or Ubar_{n+1} with the
/// given superdiagonal characters, first in lexicographic generator-image order.
inline std::optional<std::vector<std::uint64_t>> find_unitriangular_hom(const FiniteGroup& g,
                                                                        const std::vector<const Cochain*>& diag,
                                                                        const UnitriangularArith& target,
                                                                        std::size_t budget, std::size_t* nodes) {
    const auto& gens = g.generators();
    std::vector<std::vector<std::uint64_t>> candidates;
    for (auto s : gens) {
        std::vector<std::uint32_t> d;
        for (const auto* c : diag) d.push_back((*c)(s));
        candidates.push_back(target.with_superdiagonal(d));
    }
    std::optional<std::vector<std::uint64_t>> found;
    const auto visited = for_each_homomorphism(
        g, gens, candidates, target,
        [&](const std::vector<std::uint64_t>& table) {
            found = table;
            return false;
        },
        budget);
    if (nodes) *nodes += visited;
    return found;
}

/// The defining system a_ij = -rho_ij of a homomorphism given by codes into Ubar_{n+1} or U_{n+1}.
inline DefiningSystem system_from_codes(const ModulePtr& m, std::size_t n, const UnitriangularArith& arith,
                                        const std::vector<std::uint64_t>& codes) {
    const auto p = m->modulus();
    DefiningSystem ds(m, n);
    std::vector<std::int64_t> vals(codes.size());
    for (std::size_t i = 1; i <= n + 1; ++i)
        for (std::size_t j = i + 1; j <= n + 1; ++j) {
            if (!ds.has(i, j)) continue;
            for (std::size_t g = 0; g < codes.size(); ++g) vals[g] = (p - arith.entry(codes[g], i, j)) % p;
            ds.set(i, j, Cochain::scalar_1cochain(m, vals));
        }
    return ds;
}

inline VanishingResult vanishing_dwyer(const std::vector<CohomClass>& inputs, const VanishingOptions& opt) {
    const auto n = inputs.size();
    const ModulePtr m = inputs[0].representative.module_ptr();
    const auto p = m->modulus();
    const auto& g = *m->group();
    std::vector<Cochain> neg;
    for (const auto& c : inputs) neg.push_back(-c.representative);
    std::vector<const Cochain*> diag;
    for (const auto& c : neg) diag.push_back(&c);

    VanishingResult res;
    UnitriangularArith u(n, p, false);
    if (auto lift = find_unitriangular_hom(g, diag, u, opt.budget, &res.nodes)) {
        res.verdict = VanishingVerdict::contains_zero;
        std::vector<std::uint64_t> bar(lift->size());
        UnitriangularArith ubar(n, p, true);
        for (std::size_t x = 0; x < bar.size(); ++x)
            bar[x] = ubar.encode(UnipotentElement::from_matrix(u.decode((*lift)[x]).matrix(), true));
        res.system = system_from_codes(m, n, ubar, bar);
        res.lift = std::move(lift);
        return res;
    }
    UnitriangularArith ubar(n, p, true);
    if (auto rb = find_unitriangular_hom(g, diag, ubar, opt.budget, &res.nodes)) {
        res.verdict = VanishingVerdict::defined_not_vanishing;
        res.system = system_from_codes(m, n, ubar, *rb);
        return res;
    }
    res.verdict = VanishingVerdict::undefined;
    return res;
}

}  // namespace detail

/// Decides whether <a_1, ..., a_n> is defined and whether it contains zero.
/// enumerate walks every defining system; dwyer searches homomorphisms into
/// U_{n+1}(F_p) and Ubar_{n+1}(F_p) with superdiagonal (-a_1, ..., -a_n).
inline VanishingResult nfold_vanishes(const std::vector<CohomClass>& inputs, const VanishingOptions& opt = {}) {
    if (inputs.size() < 2) throw InputError("Massey products need at least two inputs");
    const ModulePtr m = inputs[0].representative.module_ptr();
    for (const auto& c : inputs) detail::check_trivial_class(c, m);
    if (!m->is_trivial() || m->dim() != 1) throw InputError("Massey inputs need trivial one-dimensional coefficients");
    if (std::all_of(inputs.begin(), inputs.end(), [](const CohomClass& c) { return c.representative.is_zero(); })) {
        VanishingResult r;
        r.verdict = VanishingVerdict::contains_zero;
        r.system = DefiningSystem(m, inputs.size());
        if (opt.strategy == VanishingStrategy::dwyer)
            r.lift = std::vector<std::uint64_t>(m->group()->order(), 0);
        return r;
    }
    return opt.strategy == VanishingStrategy::enumerate ? detail::vanishing_enumerate(inputs, opt)
                                                        : detail::vanishing_dwyer(inputs, opt);
}

}  // namespace massey
