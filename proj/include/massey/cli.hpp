#pragma once

// Command dispatch for the command-line front end. run() never throws: every
// outcome maps to an exit code and a report.
//
//   0  computed
//   1  input error
//   2  negative mathematical verdict (undefined product, realization refused)
//   3  budget exceeded

#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "massey/cohomology.hpp"
#include "massey/embed.hpp"
#include "massey/error.hpp"
#include "massey/groups.hpp"
#include "massey/io.hpp"
#include "massey/massey_product.hpp"
#include "massey/unipotent.hpp"

namespace massey::cli {

using io::json;

enum ExitCode : int { kOk = 0, kInputError = 1, kNegative = 2, kBudget = 3 };

struct JobSpec {
    std::string command;
    std::string group_path;
    std::optional<std::uint32_t> p;
    std::optional<std::size_t> n;
    std::string chars;
    std::string module = "trivial";
    std::string subgroups = "all-cyclic";
    std::optional<std::string> strategy;
    std::size_t budget = std::size_t{1} << 20;
    std::string format = "json";
    bool realize = false;
};

struct Outcome {
    int exit_code = kOk;
    std::string report;       // stdout
    std::string diagnostics;  // stderr
};

inline const std::vector<std::string>& commands() {
    static const std::vector<std::string> c{"group-info", "cohomology", "cup",   "massey",
                                            "dwyer",      "embed",      "hstar", "local-global"};
    return c;
}

namespace detail {

inline json header(const std::string& command) {
    return json{{"version", io::kReportVersion}, {"command", command}};
}

inline std::string render_text(const json& j, const std::string& indent = "") {
    std::ostringstream os;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (it.value().is_object() && !it.value().empty()) {
            os << indent << it.key() << ":\n" << render_text(it.value(), indent + "  ");
        } else {
            os << indent << it.key() << ": " << (it.value().is_string() ? it.value().get<std::string>() : it.value().dump())
               << "\n";
        }
    }
    return os.str();
}

inline std::vector<CohomClass> need_chars(const JobSpec& job, const io::GroupDescriptor& g, const ModulePtr& m,
                                          std::size_t min, std::size_t max) {
    if (job.chars.empty()) throw InputError(job.command + " needs --chars");
    auto c = io::resolve_characters(g, m, job.chars);
    if (c.size() < min || c.size() > max)
        throw InputError(job.command + " needs " +
                         (min == max ? std::to_string(min) : std::to_string(min) + " to " + std::to_string(max)) +
                         " characters, got " + std::to_string(c.size()));
    return c;
}

inline VanishingStrategy parse_strategy(const std::string& s) {
    if (s == "enumerate") return VanishingStrategy::enumerate;
    if (s == "dwyer") return VanishingStrategy::dwyer;
    throw InputError("unknown strategy \"" + s + "\"");
}

inline json vanishing_json(const VanishingResult& r, std::size_t n, std::uint32_t p) {
    json out;
    out["defined"] = r.verdict != VanishingVerdict::undefined;
    out["contains_zero"] = r.verdict == VanishingVerdict::undefined ? json(nullptr) : json(r.verdict == VanishingVerdict::contains_zero);
    out["verdict"] = to_string(r.verdict);
    if (r.lift) {
        out["witness_kind"] = "lift";
        UnitriangularArith u(n, p, false);
        json imgs = json::array();
        for (std::size_t g = 0; g < r.lift->size(); ++g) imgs.push_back(io::to_json(u.decode((*r.lift)[g])));
        out["witness"] = json{{"images", imgs}, {"system", io::to_json(*r.system)}};
    } else if (r.system) {
        out["witness_kind"] = "defining_system";
        out["witness"] = io::to_json(*r.system);
    } else {
        out["witness_kind"] = "none";
        out["witness"] = nullptr;
    }
    out["search_nodes"] = r.nodes;
    return out;
}

inline int group_info(const JobSpec&, const io::GroupDescriptor& g, json& out) {
    const auto& G = *g.group;
    out["kind"] = g.kind;
    out["order"] = G.order();
    out["exponent"] = G.exponent();
    out["abelian"] = G.is_abelian();
    out["generator_count"] = G.generators().size();
    json gens = json::array();
    for (auto s : G.generators()) gens.push_back(json{{"index", s}, {"label", G.label(s)}});
    out["generators"] = gens;
    return kOk;
}

inline int cohomology(const JobSpec& job, const io::GroupDescriptor& g, json& out) {
    if (!job.n) throw InputError("cohomology needs --n (the degree)");
    const auto p = io::resolve_prime(g, job.p);
    const auto m = io::resolve_module(g, p, job.module);
    out["p"] = p;
    out["module"] = job.module;
    out["degree"] = *job.n;
    out["dimension"] = h_dim(*job.n, m);
    return kOk;
}

inline int cup_command(const JobSpec& job, const io::GroupDescriptor& g, json& out) {
    const auto p = io::resolve_prime(g, job.p);
    const auto m = trivial_module(g.group, p);
    const auto c = need_chars(job, g, m, 2, 2);
    const Cochain z = cup(c[0].representative, c[1].representative);
    const auto w = is_coboundary(CohomClass{z, true});
    out["p"] = p;
    out["chars"] = job.chars;
    out["zero_in_h2"] = w.has_value();
    out["witness"] = w ? io::to_json(*w) : json(nullptr);
    return kOk;
}

inline int massey_command(const JobSpec& job, const io::GroupDescriptor& g, json& out) {
    const auto p = io::resolve_prime(g, job.p);
    const auto m = trivial_module(g.group, p);
    const auto c = need_chars(job, g, m, 2, 7);
    out["p"] = p;
    out["chars"] = job.chars;
    out["n"] = c.size();
    int code = kOk;
    if (c.size() == 3) {
        const auto r = triple_massey(c[0], c[1], c[2]);
        if (const auto* u = std::get_if<UndefinedWitness>(&r)) {
            out["defined"] = false;
            out["contains_zero"] = nullptr;
            out["witness_kind"] = "nonzero_cup";
            out["witness"] = json{{"pair", json::array({u->first, u->first + 1})},
                                  {"cup", io::to_json(u->cup.representative)}};
            code = kNegative;
        } else {
            const auto& coset = std::get<MasseyValueCoset>(r);
            const auto zero = coset.zero_system();
            out["defined"] = true;
            out["contains_zero"] = zero.has_value();
            out["witness_kind"] = "defining_system";
            out["witness"] = io::to_json(zero ? *zero : coset.particular_system());
            json indet = json::array();
            for (const auto& b : coset.indeterminacy_basis()) indet.push_back(io::to_json(b.representative));
            out["coset"] = json{{"particular", io::to_json(coset.particular().representative)},
                                {"indeterminacy_dim", coset.indeterminacy_basis().size()},
                                {"indeterminacy_basis", indet}};
        }
        if (!job.strategy) return code;
    }
    VanishingOptions opt;
    opt.strategy = parse_strategy(job.strategy.value_or("enumerate"));
    opt.budget = job.budget;
    const auto v = nfold_vanishes(c, opt);
    if (c.size() == 3) {
        out["strategy"] = json{{"name", to_string(opt.strategy)}, {"result", vanishing_json(v, c.size(), p)}};
        return code;
    }
    out["strategy_name"] = to_string(opt.strategy);
    const json vj = vanishing_json(v, c.size(), p);
    for (auto& [k, val] : vj.items()) out[k] = val;
    return v.verdict == VanishingVerdict::undefined ? kNegative : kOk;
}

inline int dwyer_command(const JobSpec& job, const io::GroupDescriptor& g, json& out) {
    const auto p = io::resolve_prime(g, job.p);
    const auto m = trivial_module(g.group, p);
    const auto c = need_chars(job, g, m, 2, 7);
    VanishingOptions opt;
    opt.strategy = VanishingStrategy::dwyer;
    opt.budget = job.budget;
    const auto v = nfold_vanishes(c, opt);
    out["p"] = p;
    out["chars"] = job.chars;
    out["n"] = c.size();
    const json vj = vanishing_json(v, c.size(), p);
    for (auto& [k, val] : vj.items()) out[k] = val;
    return v.verdict == VanishingVerdict::undefined ? kNegative : kOk;
}

inline json hom_images_json(const GroupHom& h, const UnipotentGroup& u) {
    json a = json::array();
    for (auto s : h.source()->generators()) a.push_back(json{{"generator", s}, {"image", io::to_json(u.element(h(s)))}});
    return a;
}

inline int embed_command(const JobSpec& job, const io::GroupDescriptor& g, json& out) {
    const auto p = io::resolve_prime(g, job.p);
    const auto m = trivial_module(g.group, p);
    const auto c = need_chars(job, g, m, 3, 3);
    const auto u4 = u_group(3, p);
    const GroupPtr fp3 = elementary_abelian_group(p, 3);
    std::vector<Elem> img(g.group->order());
    for (Elem x = 0; x < img.size(); ++x) {
        const std::array<std::uint32_t, 3> v{c[0].representative(x), c[1].representative(x), c[2].representative(x)};
        img[x] = elementary_abelian_index(p, v);
    }
    const auto ep = WeakEmbeddingProblem::u4(GroupHom::from_images(g.group, fp3, std::move(img)), u4);
    const auto obs = hoechsmann_solvable(ep);
    const auto direct = solve_by_search(ep, job.budget);
    json alpha = json::array();
    for (auto s : g.group->generators())
        alpha.push_back(json{{"generator", s}, {"image", elementary_abelian_coords(p, 3, ep.alpha()(s))}});
    out["p"] = p;
    out["chars"] = job.chars;
    out["extension"] = "U4";
    out["alpha"] = alpha;
    out["obstruction_vanishes"] = obs.solvable;
    out["lift_found"] = direct.has_value();
    out["agree"] = obs.solvable == direct.has_value();
    out["witness"] = direct ? hom_images_json(*direct, u4) : json(nullptr);
    if (!job.realize) return kOk;
    const auto r = u4_realization(c[0], c[1], c[2], u4);
    json real{{"status", to_string(r.status)}, {"lifts_examined", r.lifts_examined}};
    if (r.hom) real["witness"] = hom_images_json(*r.hom, u4);
    if (r.dependency) real["dependency"] = io::to_json(*r.dependency);
    if (r.cup) real["nonzero_cup"] = json::array({r.cup->first, r.cup->first + 1});
    out["realization"] = real;
    return r.status == RealizationStatus::realized ? kOk : kNegative;
}

inline int hstar_command(const JobSpec& job, const io::GroupDescriptor& g, json& out) {
    const auto p = io::resolve_prime(g, job.p);
    const auto m = io::resolve_module(g, p, job.module);
    const auto basis = h1_star(m);
    json b = json::array();
    for (const auto& c : basis) b.push_back(io::to_json(c.representative));
    out["p"] = p;
    out["module"] = job.module;
    out["dimension"] = basis.size();
    out["basis"] = b;
    return kOk;
}

inline int local_global_command(const JobSpec& job, const io::GroupDescriptor& g, json& out) {
    const auto p = io::resolve_prime(g, job.p);
    const auto m = trivial_module(g.group, p);
    const auto c = need_chars(job, g, m, 3, 3);
    const auto subs = io::resolve_subgroups(g, job.subgroups);
    out["p"] = p;
    out["chars"] = job.chars;
    out["subgroups"] = job.subgroups;
    if (std::holds_alternative<UndefinedWitness>(triple_massey(c[0], c[1], c[2]))) {
        out["defined"] = false;
        return kNegative;
    }
    const auto r = local_global_vanishing(c[0], c[1], c[2], subs, u_group(3, p));
    json local = json::array();
    for (std::size_t i = 0; i < subs.size(); ++i)
        local.push_back(json{{"order", subs[i].order()}, {"solvable", static_cast<bool>(r.local_solvable[i])}});
    out["defined"] = true;
    out["contains_zero"] = r.contains_zero;
    out["injective"] = r.hypothesis_holds;
    out["kernel_dim"] = r.injectivity.kernel_dim;
    out["local"] = local;
    out["all_local_solvable"] = r.all_local_solvable;
    out["predicted"] = r.predicted ? json(*r.predicted) : json(nullptr);
    out["obstruction_vanishes"] = r.obstruction_vanishes;
    out["lift_found"] = r.lift_found;
    out["consistent"] = r.consistent;
    return kOk;
}

}  // namespace detail

inline Outcome run(const JobSpec& job) {
    Outcome res;
    json out = detail::header(job.command);
    try {
        if (job.format != "json" && job.format != "text") throw InputError("unknown format \"" + job.format + "\"");
        if (std::find(commands().begin(), commands().end(), job.command) == commands().end())
            throw InputError("unknown command \"" + job.command + "\"");
        if (job.group_path.empty()) throw InputError(job.command + " needs --group");
        const auto g = io::load_group(job.group_path);
        out["group"] = json{{"kind", g.kind}, {"order", g.group->order()}};
        const auto& c = job.command;
        if (c == "group-info") res.exit_code = detail::group_info(job, g, out);
        else if (c == "cohomology") res.exit_code = detail::cohomology(job, g, out);
        else if (c == "cup") res.exit_code = detail::cup_command(job, g, out);
        else if (c == "massey") res.exit_code = detail::massey_command(job, g, out);
        else if (c == "dwyer") res.exit_code = detail::dwyer_command(job, g, out);
        else if (c == "embed") res.exit_code = detail::embed_command(job, g, out);
        else if (c == "hstar") res.exit_code = detail::hstar_command(job, g, out);
        else res.exit_code = detail::local_global_command(job, g, out);
    } catch (const BudgetExceeded& e) {
        res.exit_code = kBudget;
        out["error"] = json{{"kind", "budget"}, {"message", e.what()}};
    } catch (const std::exception& e) {
        res.exit_code = kInputError;
        out["error"] = json{{"kind", "input"}, {"message", e.what()}};
    }
    if (out.contains("error")) res.diagnostics = out["error"]["message"].get<std::string>() + "\n";
    res.report = job.format == "text" ? detail::render_text(out) : out.dump(2) + "\n";
    return res;
}

}  // namespace massey::cli
