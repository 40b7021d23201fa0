#pragma once

// Weak embedding problems (alpha: G -> Ubar, f: U -> Ubar surjective), the
// correspondence between defining systems and homomorphisms into Ubar_{n+1},
// lift search, the extension-class obstruction, U_4 realizations and the
// restriction-based local-global test.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "massey/cohomology.hpp"
#include "massey/error.hpp"
#include "massey/groups.hpp"
#include "massey/linalg.hpp"
#include "massey/massey_product.hpp"
#include "massey/unipotent.hpp"

namespace massey {

// ---------------------------------------------------------------------------
// Defining systems <-> homomorphisms into Ubar_{n+1}

/// rho_bar with rho_bar_ij = -a_ij; the result is validated as a homomorphism.
inline GroupHom ds_to_hom(const DefiningSystem& ds, const UnipotentGroup& ubar) {
    const auto v = validate(ds);
    if (!v.ok) throw PreconditionFailed("invalid defining system: " + v.message);
    const auto& arith = ubar.arith;
    if (!arith.omits_corner() || arith.n() != ds.n() || arith.modulus() != ds.modulus())
        throw InputError("ds_to_hom needs Ubar_{n+1}(F_p) of matching n and p");
    const auto p = ds.modulus();
    const auto& g = *ds.module_ptr()->group();
    std::vector<Elem> img(g.order());
    for (Elem x = 0; x < g.order(); ++x) {
        UnipotentElement u(ds.n() + 1, p, true);
        for (auto [i, j] : arith.positions()) u.set(i, j, p - ds.at(i, j)(x));
        img[x] = ubar.index(u);
    }
    return GroupHom::from_images(ds.module_ptr()->group(), ubar.group, std::move(img));
}

/// a_ij = -rho_bar_ij. The module defaults to the trivial F_p over the source.
inline DefiningSystem hom_to_ds(const GroupHom& rho_bar, const UnipotentGroup& ubar, ModulePtr m = nullptr) {
    if (!ubar.arith.omits_corner()) throw InputError("hom_to_ds needs Ubar_{n+1}(F_p) as target");
    if (rho_bar.target() != ubar.group && !(*rho_bar.target() == *ubar.group))
        throw InputError("homomorphism target is not the given Ubar_{n+1}(F_p)");
    if (!m) m = trivial_module(rho_bar.source(), ubar.arith.modulus());
    if (m->group() != rho_bar.source() && !(*m->group() == *rho_bar.source()))
        throw InputError("module over a different group");
    std::vector<std::uint64_t> codes(rho_bar.images().begin(), rho_bar.images().end());
    return detail::system_from_codes(m, ubar.arith.n(), ubar.arith, codes);
}

/// Some homomorphism beta: G -> U with f o beta = alpha, first in lexicographic
/// order of generator images, or nothing if none exists.
inline std::optional<GroupHom> lift(const GroupHom& alpha, const GroupHom& f,
                                    std::size_t node_budget = std::size_t{1} << 24) {
    if (alpha.target() != f.target() && !(*alpha.target() == *f.target()))
        throw InputError("lift: alpha and f have different targets");
    const auto& g = *alpha.source();
    std::vector<std::vector<Elem>> fibers(f.target()->order());
    for (Elem u = 0; u < f.source()->order(); ++u) fibers[f(u)].push_back(u);
    std::vector<std::vector<Elem>> candidates;
    for (auto s : g.generators()) candidates.push_back(fibers[alpha(s)]);
    auto table = find_homomorphism(g, g.generators(), candidates, *f.source(), node_budget);
    if (!table) return std::nullopt;
    return GroupHom::from_images(alpha.source(), f.source(), std::move(*table));
}

/// Lift of a homomorphism into Ubar_{n+1} through the quotient U_{n+1} -> Ubar_{n+1}.
inline std::optional<GroupHom> lift(const GroupHom& rho_bar, const UnipotentGroup& u, const UnipotentGroup& ubar) {
    return lift(rho_bar, quotient_hom(u, ubar));
}

// ---------------------------------------------------------------------------
// Weak embedding problems

class WeakEmbeddingProblem {
public:
    /// General problem with an elementary abelian p-group as kernel of f. The
    /// kernel basis defaults to a greedy choice in increasing element order; the
    /// section sends each element of Ubar to the least element of its fiber and
    /// the identity to the identity.
    static WeakEmbeddingProblem make(GroupHom alpha, GroupHom f, std::uint32_t p,
                                     std::vector<Elem> kernel_basis = {}) {
        check_modulus(p);
        if (!f.is_surjective()) throw PreconditionFailed("f is not surjective");
        if (alpha.target() != f.target() && !(*alpha.target() == *f.target()))
            throw InputError("alpha and f have different targets");
        const auto& U = *f.source();
        Subgroup ker = f.kernel();
        for (auto a : ker.members())
            for (auto b : ker.members())
                if (U.mul(a, b) != U.mul(b, a)) throw PreconditionFailed("kernel of f is not abelian");
        for (auto a : ker.members())
            if (U.pow(a, p) != U.identity()) throw PreconditionFailed("kernel of f is not elementary abelian of exponent p");

        if (kernel_basis.empty()) {
            std::vector<Elem> span{U.identity()};
            for (auto a : ker.members()) {
                if (std::find(span.begin(), span.end(), a) != span.end()) continue;
                kernel_basis.push_back(a);
                span = U.closure(kernel_basis);
            }
        }
        WeakEmbeddingProblem ep(std::move(alpha), std::move(f), std::move(ker), std::move(kernel_basis), p);
        return ep;
    }

    /// The problem alpha: G -> F_p^3 against 1 -> A -> U_4(F_p) -> F_p^3 -> 1,
    /// with A in the basis (I+E24, I+E13, I+E14).
    static WeakEmbeddingProblem u4(GroupHom alpha, const UnipotentGroup& u4) {
        if (u4.arith.n() != 3 || u4.arith.omits_corner()) throw InputError("u4 problem needs U_4(F_p)");
        const auto p = u4.arith.modulus();
        const auto fp3 = alpha.target();
        if (fp3->order() != std::size_t(p) * p * p) throw InputError("alpha must map to F_p^3");
        GroupHom f = superdiagonal_hom(u4, fp3);
        std::vector<Elem> basis;
        for (std::size_t k = 0; k < 3; ++k) basis.push_back(u4.index(kernel_a_element(Vec::unit(p, 3, k))));
        return make(std::move(alpha), std::move(f), p, std::move(basis));
    }

    const GroupHom& alpha() const noexcept { return alpha_; }
    const GroupHom& f() const noexcept { return f_; }
    const Subgroup& kernel() const noexcept { return kernel_; }
    const std::vector<Elem>& kernel_basis() const noexcept { return basis_; }
    const ModulePtr& kernel_module() const noexcept { return module_; }
    const std::vector<Elem>& section() const noexcept { return section_; }
    std::uint32_t modulus() const noexcept { return p_; }

    Vec kernel_coords(Elem a) const {
        const auto it = coords_.find(a);
        if (it == coords_.end()) throw InputError("element is not in the kernel");
        return it->second;
    }

    Elem kernel_element(const Vec& c) const {
        if (c.dim() != basis_.size()) throw DimensionMismatch("kernel coordinates", basis_.size(), c.dim());
        const auto& U = *f_.source();
        Elem x = U.identity();
        for (std::size_t k = 0; k < basis_.size(); ++k) x = U.mul(x, U.pow(basis_[k], c[k]));
        return x;
    }

    /// eps(x, y) = s(x) s(y) s(xy)^-1 as a 2-cochain of Ubar with values in the kernel module.
    Cochain extension_cochain() const {
        const auto& U = *f_.source();
        const auto& Ub = *f_.target();
        return Cochain::from_function(module_, 2, [&](std::span<const Elem> t) {
            const Elem e = U.mul(U.mul(section_[t[0]], section_[t[1]]), U.inv(section_[Ub.mul(t[0], t[1])]));
            return kernel_coords(e);
        });
    }

    /// The same extension data with a different alpha (e.g. restricted to a subgroup).
    WeakEmbeddingProblem with_alpha(GroupHom alpha) const {
        if (alpha.target() != f_.target() && !(*alpha.target() == *f_.target()))
            throw InputError("alpha has the wrong target");
        WeakEmbeddingProblem ep = *this;
        ep.alpha_ = std::move(alpha);
        return ep;
    }

    WeakEmbeddingProblem restricted(const Subgroup& s) const { return with_alpha(alpha_.restrict_to(s)); }

private:
    WeakEmbeddingProblem(GroupHom alpha, GroupHom f, Subgroup ker, std::vector<Elem> basis, std::uint32_t p)
        : alpha_(std::move(alpha)), f_(std::move(f)), kernel_(std::move(ker)), basis_(std::move(basis)), p_(p) {
        const auto& U = *f_.source();
        const auto& Ub = *f_.target();
        const std::size_t k = basis_.size();
        for (auto b : basis_)
            if (!kernel_.contains(b)) throw InputError("kernel basis element outside the kernel");
        std::size_t total = 1;
        for (std::size_t i = 0; i < k; ++i) total *= p;
        if (total != kernel_.order()) throw InputError("kernel basis has the wrong size");
        for (std::size_t t = 0; t < total; ++t) {
            Vec c(p, k);
            std::size_t rest = t;
            for (std::size_t i = k; i-- > 0;) {
                c.set(i, rest % p);
                rest /= p;
            }
            coords_.emplace(kernel_element(c), c);
        }
        if (coords_.size() != total) throw InputError("kernel basis is not independent");

        section_.assign(Ub.order(), 0);
        std::vector<bool> seen(Ub.order(), false);
        for (Elem u = 0; u < U.order(); ++u) {
            const Elem x = f_(u);
            if (!seen[x]) {
                seen[x] = true;
                section_[x] = u;
            }
        }
        section_[Ub.identity()] = U.identity();

        std::vector<Mat> act(Ub.order(), Mat(p, k, k));
        for (Elem x = 0; x < Ub.order(); ++x) {
            const Elem s = section_[x], s_inv = U.inv(s);
            for (std::size_t j = 0; j < k; ++j) {
                const Vec c = kernel_coords(U.mul(U.mul(s, basis_[j]), s_inv));
                for (std::size_t i = 0; i < k; ++i) act[x].set(i, j, c[i]);
            }
        }
        module_ = make_module(GModule::from_action(f_.target(), p, k, std::move(act)));
    }

    GroupHom alpha_;
    GroupHom f_;
    Subgroup kernel_;
    std::vector<Elem> basis_;
    std::uint32_t p_;
    std::map<Elem, Vec> coords_;
    std::vector<Elem> section_;
    ModulePtr module_;
};

struct Obstruction {
    CohomClass epsilon;      // in H^2(Ubar, M)
    CohomClass pulled_back;  // alpha^*(epsilon) in H^2(G, M), M acted on through alpha
};

struct ObstructionResult {
    bool solvable = false;
    Obstruction obstruction;
    std::optional<GroupHom> solution;  // built from a coboundary witness of the pullback
};

/// Decides weak solvability by whether alpha^*(eps) is a coboundary. When it is,
/// dw = alpha^*(eps) gives the solution beta(g) = (-w(g)) s(alpha(g)).
inline ObstructionResult hoechsmann_solvable(const WeakEmbeddingProblem& ep, const CohomologyBudget& budget = {}) {
    const auto& alpha = ep.alpha();
    const Cochain eps = ep.extension_cochain();
    if (!is_cocycle(eps, budget)) throw std::logic_error("extension cochain is not a cocycle");
    const ModulePtr pulled = make_module(GModule::pullback(*ep.kernel_module(), alpha));
    const Cochain back = Cochain::from_function(
        pulled, 2, [&](std::span<const Elem> t) { return eps.value(std::array<Elem, 2>{alpha(t[0]), alpha(t[1])}); },
        budget);
    ObstructionResult res{false, Obstruction{CohomClass{eps, true}, make_class(back, budget)}, std::nullopt};
    CoboundarySolver solver(pulled, 2, budget);
    const auto w = solver.witness(res.obstruction.pulled_back);
    if (!w) return res;
    res.solvable = true;
    const auto& G = *alpha.source();
    const auto& U = *ep.f().source();
    std::vector<Elem> beta(G.order());
    for (Elem g = 0; g < G.order(); ++g) {
        const Vec c = w->value(std::array<Elem, 1>{g}).scaled(ep.modulus() - 1);
        beta[g] = U.mul(ep.kernel_element(c), ep.section()[alpha(g)]);
    }
    GroupHom sol = GroupHom::from_images(alpha.source(), ep.f().source(), std::move(beta));
    if (!(sol.then(ep.f()).images() == alpha.images())) throw std::logic_error("constructed solution does not lift alpha");
    res.solution = std::move(sol);
    return res;
}

/// Direct search for a weak solution.
inline std::optional<GroupHom> solve_by_search(const WeakEmbeddingProblem& ep,
                                               std::size_t node_budget = std::size_t{1} << 24) {
    return lift(ep.alpha(), ep.f(), node_budget);
}

// ---------------------------------------------------------------------------
// Surjective realizations G -> U_4(F_p)

enum class RealizationStatus { realized, dependent, cup_nonzero, no_lift, not_surjective };

inline const char* to_string(RealizationStatus s) {
    switch (s) {
        case RealizationStatus::realized: return "realized";
        case RealizationStatus::dependent: return "dependent";
        case RealizationStatus::cup_nonzero: return "cup_nonzero";
        case RealizationStatus::no_lift: return "no_lift";
        case RealizationStatus::not_surjective: return "not_surjective";
    }
    return "?";
}

struct RealizationResult {
    RealizationStatus status = RealizationStatus::no_lift;
    std::optional<GroupHom> hom;
    std::optional<Vec> dependency;       // coefficients of a vanishing combination of the characters
    std::optional<UndefinedWitness> cup;  // the nonzero cup product
    std::size_t lifts_examined = 0;
};

/// A surjective rho: G -> U_4(F_p) with rho_12 = chi1, rho_23 = chi2, rho_34 = chi3,
/// after checking independence and chi1 u chi2 = chi2 u chi3 = 0. Every lift is
/// examined in lexicographic order until a surjective one appears.
inline RealizationResult u4_realization(const CohomClass& chi1, const CohomClass& chi2, const CohomClass& chi3,
                                        const UnipotentGroup& u4, const CohomologyBudget& budget = {}) {
    if (u4.arith.n() != 3 || u4.arith.omits_corner()) throw InputError("u4_realization needs U_4(F_p)");
    const ModulePtr m = chi1.representative.module_ptr();
    for (const auto* c : {&chi1, &chi2, &chi3}) detail::check_trivial_class(*c, m);
    const auto p = m->modulus();
    if (p != u4.arith.modulus()) throw InputError("characters and U_4 over different primes");
    RealizationResult res;

    const auto& G = *m->group();
    const std::vector<const Cochain*> chars{&chi1.representative, &chi2.representative, &chi3.representative};
    std::vector<Vec> cols;
    for (const auto* c : chars) cols.push_back(c->flat());
    const auto dep = kernel_basis(Mat::from_columns(p, G.order(), cols));
    if (!dep.empty()) {
        res.status = RealizationStatus::dependent;
        res.dependency = dep.front();
        return res;
    }
    CoboundarySolver solver(m, 2, budget);
    for (std::size_t k = 0; k < 2; ++k) {
        CohomClass c{cup(*chars[k], *chars[k + 1]), true};
        if (!solver.is_zero(c)) {
            res.status = RealizationStatus::cup_nonzero;
            res.cup = UndefinedWitness{k + 1, std::move(c)};
            return res;
        }
    }

    const auto& gens = G.generators();
    std::vector<std::vector<Elem>> candidates;
    for (auto s : gens) {
        std::vector<Elem> cand;
        for (auto code : u4.arith.with_superdiagonal({(*chars[0])(s), (*chars[1])(s), (*chars[2])(s)}))
            cand.push_back(static_cast<Elem>(code));
        candidates.push_back(std::move(cand));
    }
    for_each_homomorphism(G, gens, candidates, *u4.group, [&](const std::vector<Elem>& table) {
        ++res.lifts_examined;
        GroupHom h = GroupHom::from_images(m->group(), u4.group, table);
        if (!h.is_surjective()) return true;
        res.hom = std::move(h);
        return false;
    });
    if (res.hom)
        res.status = RealizationStatus::realized;
    else
        res.status = res.lifts_examined ? RealizationStatus::not_surjective : RealizationStatus::no_lift;
    return res;
}

// ---------------------------------------------------------------------------
// Restriction to subgroups

struct InjectivityResult {
    bool injective = true;
    std::optional<CohomClass> witness;  // nonzero class of H^2(G, M) restricting to zero everywhere
    std::size_t kernel_dim = 0;
};

/// Whether H^2(G, M) -> prod_i H^2(S_i, M) is injective.
inline InjectivityResult restriction_injective_h2(const ModulePtr& m, const std::vector<Subgroup>& subgroups,
                                                  const CohomologyBudget& budget = {}) {
    for (const auto& s : subgroups)
        if (s.parent() != m->group() && !(*s.parent() == *m->group()))
            throw InputError("subgroup of a different group");
    auto ker = restriction_kernel(2, m, subgroups, budget);
    InjectivityResult res;
    res.kernel_dim = ker.size();
    res.injective = ker.empty();
    if (!ker.empty()) res.witness = std::move(ker.front());
    return res;
}

struct LocalGlobalResult {
    bool contains_zero = false;  // from the triple-product coset
    bool hypothesis_holds = false;
    InjectivityResult injectivity;
    std::vector<bool> local_solvable;
    bool all_local_solvable = false;
    std::optional<bool> predicted;  // solvability of the global problem implied by restriction
    bool obstruction_vanishes = false;
    bool lift_found = false;
    bool consistent = false;  // every computed verdict agrees
};

/// For alpha = (-chi1, -chi2, -chi3): G -> F_p^3 and the U_4 extension: test
/// injectivity of H^2(G, A) -> prod H^2(G_i, A) with A acted on through psi o alpha,
/// solve each restricted problem, and compare the conclusion with the global
/// obstruction, a direct lift search and the triple-product coset.
inline LocalGlobalResult local_global_vanishing(const CohomClass& chi1, const CohomClass& chi2, const CohomClass& chi3,
                                                const std::vector<Subgroup>& subgroups, const UnipotentGroup& u4,
                                                const CohomologyBudget& budget = {}) {
    const auto defined = triple_massey(chi1, chi2, chi3, budget);
    if (std::holds_alternative<UndefinedWitness>(defined))
        throw PreconditionFailed("triple Massey product is undefined: chi" +
                                 std::to_string(std::get<UndefinedWitness>(defined).first) + " u chi" +
                                 std::to_string(std::get<UndefinedWitness>(defined).first + 1) + " is nonzero");
    LocalGlobalResult res;
    res.contains_zero = std::get<MasseyValueCoset>(defined).contains_zero();

    const ModulePtr m = chi1.representative.module_ptr();
    const auto p = m->modulus();
    const GroupPtr G = m->group();
    const GroupPtr fp3 = elementary_abelian_group(p, 3);
    std::vector<Elem> img(G->order());
    for (Elem g = 0; g < G->order(); ++g) {
        const std::array<std::uint32_t, 3> c{(p - chi1.representative(g)) % p, (p - chi2.representative(g)) % p,
                                             (p - chi3.representative(g)) % p};
        img[g] = elementary_abelian_index(p, c);
    }
    const auto ep = WeakEmbeddingProblem::u4(GroupHom::from_images(G, fp3, std::move(img)), u4);

    const ModulePtr a_on_g = make_module(GModule::pullback(*ep.kernel_module(), ep.alpha()));
    res.injectivity = restriction_injective_h2(a_on_g, subgroups, budget);
    res.hypothesis_holds = res.injectivity.injective;
    res.all_local_solvable = true;
    for (const auto& s : subgroups) {
        const bool ok = hoechsmann_solvable(ep.restricted(s), budget).solvable;
        res.local_solvable.push_back(ok);
        res.all_local_solvable = res.all_local_solvable && ok;
    }
    if (res.hypothesis_holds) res.predicted = res.all_local_solvable;
    res.obstruction_vanishes = hoechsmann_solvable(ep, budget).solvable;
    res.lift_found = solve_by_search(ep).has_value();
    res.consistent = res.obstruction_vanishes == res.lift_found && res.lift_found == res.contains_zero &&
                     (!res.predicted || *res.predicted == res.lift_found);
    return res;
}

}  // namespace massey
