#pragma once

// JSON descriptors for groups, characters, modules and subgroups, and JSON
// encodings of results. Requires nlohmann/json.
//
// Group descriptor (top level carries "version": 1; unknown fields are rejected):
//   {"kind": "cyclic", "n": 4}
//   {"kind": "dihedral", "n": 4}                       order 2n
//   {"kind": "elem_abelian", "p": 2, "k": 3}
//   {"kind": "product", "factors": [G, H, ...]}        folded from the left
//   {"kind": "table", "table": [[...], ...], "labels": [...]}
//   {"kind": "matrix_gens", "p": 3, "d": 3, "gens": [[[1,0,1],[0,1,0],[0,0,1]], ...]}
//   {"kind": "unitriangular", "n": 3, "p": 2, "bar": false}
// Optional "characters": {"name": {"values": [...]}} or
//                        {"name": {"generators": [g, ...], "images": [v, ...]}}.

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "massey/cohomology.hpp"
#include "massey/embed.hpp"
#include "massey/error.hpp"
#include "massey/groups.hpp"
#include "massey/linalg.hpp"
#include "massey/massey_product.hpp"
#include "massey/unipotent.hpp"

namespace massey::io {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kReportVersion = "1.0.0";

struct GroupDescriptor {
    GroupPtr group;
    std::string kind;
    std::optional<std::uint32_t> p;              // prime attached to the construction, if any
    std::optional<std::size_t> elem_abelian_rank;  // k for elem_abelian
    std::vector<Mat> matrices;                   // matrix_gens: the matrix of every element
    std::optional<UnitriangularArith> unitriangular;
    std::map<std::string, json> characters;      // raw character specs, resolved once p is known
};

namespace detail {

inline void only_fields(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
    if (!j.is_object()) throw InputError(where + ": expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || it.key() == a;
        if (!ok) throw InputError(where + ": unknown field \"" + it.key() + "\"");
    }
}

template <class T>
T field(const json& j, const char* name, const std::string& where) {
    if (!j.contains(name)) throw InputError(where + ": missing field \"" + name + "\"");
    try {
        return j.at(name).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw InputError(where + ": field \"" + name + "\" has the wrong type");
    }
}

inline std::uint32_t prime_field(const json& j, const std::string& where) {
    const auto p = field<std::int64_t>(j, "p", where);
    if (p < 2 || p > 251 || !is_prime(static_cast<std::uint64_t>(p)))
        throw InputError(where + ": p must be a prime at most 251");
    return static_cast<std::uint32_t>(p);
}

inline std::size_t positive_field(const json& j, const char* name, const std::string& where) {
    const auto v = field<std::int64_t>(j, name, where);
    if (v < 1) throw InputError(where + ": field \"" + name + "\" must be positive");
    return static_cast<std::size_t>(v);
}

inline Mat parse_matrix(const json& j, std::uint32_t p, std::size_t d, const std::string& where) {
    if (!j.is_array() || j.size() != d) throw InputError(where + ": expected a " + std::to_string(d) + "x" + std::to_string(d) + " matrix");
    std::vector<std::vector<std::int64_t>> rows;
    for (const auto& r : j) {
        if (!r.is_array() || r.size() != d) throw InputError(where + ": malformed matrix row");
        std::vector<std::int64_t> row;
        for (const auto& x : r) {
            if (!x.is_number_integer()) throw InputError(where + ": matrix entries must be integers");
            row.push_back(x.get<std::int64_t>());
        }
        rows.push_back(std::move(row));
    }
    return Mat(p, rows);
}

inline GroupDescriptor parse_group_body(const json& j, const std::string& where, bool top) {
    if (!j.is_object()) throw InputError(where + ": expected an object");
    const auto kind = field<std::string>(j, "kind", where);
    auto allow = [&](std::initializer_list<const char*> extra) {
        std::vector<const char*> all{"kind"};
        if (top) {
            all.push_back("version");
            all.push_back("characters");
        }
        all.insert(all.end(), extra.begin(), extra.end());
        for (auto it = j.begin(); it != j.end(); ++it)
            if (std::find_if(all.begin(), all.end(), [&](const char* a) { return it.key() == a; }) == all.end())
                throw InputError(where + ": unknown field \"" + it.key() + "\" for kind " + kind);
    };
    GroupDescriptor out;
    out.kind = kind;
    if (kind == "cyclic") {
        allow({"n"});
        out.group = cyclic_group(positive_field(j, "n", where));
    } else if (kind == "dihedral") {
        allow({"n"});
        out.group = dihedral_group(positive_field(j, "n", where));
    } else if (kind == "elem_abelian") {
        allow({"p", "k"});
        out.p = prime_field(j, where);
        out.elem_abelian_rank = positive_field(j, "k", where);
        out.group = elementary_abelian_group(*out.p, *out.elem_abelian_rank);
    } else if (kind == "product") {
        allow({"factors"});
        const auto& f = j.contains("factors") ? j.at("factors") : json();
        if (!f.is_array() || f.size() < 2) throw InputError(where + ": product needs at least two factors");
        GroupPtr acc = parse_group_body(f[0], where + ".factors[0]", false).group;
        for (std::size_t i = 1; i < f.size(); ++i)
            acc = direct_product(*acc, *parse_group_body(f[i], where + ".factors[" + std::to_string(i) + "]", false).group);
        out.group = acc;
    } else if (kind == "table") {
        allow({"table", "labels"});
        const auto table = field<std::vector<std::vector<std::int64_t>>>(j, "table", where);
        std::vector<std::vector<Elem>> t;
        for (const auto& row : table) {
            std::vector<Elem> r;
            for (auto x : row) {
                if (x < 0 || static_cast<std::size_t>(x) >= table.size()) throw InputError(where + ": table entry out of range");
                r.push_back(static_cast<Elem>(x));
            }
            t.push_back(std::move(r));
        }
        std::vector<std::string> labels;
        if (j.contains("labels")) labels = field<std::vector<std::string>>(j, "labels", where);
        out.group = make_group(FiniteGroup::from_table(t, std::move(labels)));
    } else if (kind == "matrix_gens") {
        allow({"p", "d", "gens"});
        out.p = prime_field(j, where);
        const auto d = positive_field(j, "d", where);
        const auto& g = j.contains("gens") ? j.at("gens") : json();
        if (!g.is_array()) throw InputError(where + ": gens must be an array of matrices");
        std::vector<Mat> gens;
        for (std::size_t i = 0; i < g.size(); ++i) gens.push_back(parse_matrix(g[i], *out.p, d, where + ".gens"));
        auto mg = from_matrix_generators(*out.p, d, gens);
        out.group = mg.group;
        out.matrices = std::move(mg.matrices);
    } else if (kind == "unitriangular") {
        allow({"n", "p", "bar"});
        out.p = prime_field(j, where);
        const auto n = positive_field(j, "n", where);
        const bool bar = j.contains("bar") ? field<bool>(j, "bar", where) : false;
        auto ug = bar ? ubar_group(n, *out.p) : u_group(n, *out.p);
        out.group = ug.group;
        out.unitriangular = ug.arith;
    } else {
        throw InputError(where + ": unknown group kind \"" + kind + "\"");
    }
    return out;
}

}  // namespace detail

inline GroupDescriptor parse_group(const json& j) {
    if (!j.is_object()) throw InputError("group: expected an object");
    const auto version = detail::field<int>(j, "version", "group");
    if (version != kSchemaVersion) throw InputError("group: unsupported schema version " + std::to_string(version));
    GroupDescriptor out = detail::parse_group_body(j, "group", true);
    if (j.contains("characters")) {
        const auto& c = j.at("characters");
        if (!c.is_object()) throw InputError("group.characters: expected an object");
        for (auto it = c.begin(); it != c.end(); ++it) {
            detail::only_fields(it.value(), {"values", "generators", "images"}, "group.characters." + it.key());
            out.characters.emplace(it.key(), it.value());
        }
    }
    return out;
}

inline json parse_json_text(const std::string& text, const std::string& where) {
    try {
        return json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(where + ": " + e.what());
    }
}

inline GroupDescriptor load_group(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_group(parse_json_text(ss.str(), path));
}

/// The prime to compute with: --p if given (checked against the group's own prime), else the group's prime.
inline std::uint32_t resolve_prime(const GroupDescriptor& g, std::optional<std::uint32_t> flag) {
    if (flag) {
        check_modulus(*flag);
        if (g.p && *g.p != *flag)
            throw InputError("--p " + std::to_string(*flag) + " disagrees with the group's prime " + std::to_string(*g.p));
        return *flag;
    }
    if (g.p) return *g.p;
    throw InputError("this group has no prime attached; pass --p");
}

// ---------------------------------------------------------------------------
// Characters

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

inline std::size_t parse_index(const std::string& s, const std::string& where) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw InputError(where + ": expected a nonnegative integer, got \"" + s + "\"");
    return std::stoull(s);
}

/// One character spec: a name from the group file, "zero", "coord:k"
/// (elem_abelian coordinate, 0-based, most significant first), or "proj:i:j"
/// (unitriangular entry, 1-based). A leading '-' negates.
inline CohomClass resolve_character(const GroupDescriptor& g, const ModulePtr& m, std::string spec) {
    const auto p = m->modulus();
    const std::size_t N = g.group->order();
    bool negate = false;
    if (!spec.empty() && spec[0] == '-') {
        negate = true;
        spec.erase(0, 1);
    }
    std::vector<std::int64_t> vals(N, 0);
    if (spec == "zero") {
    } else if (spec.rfind("coord:", 0) == 0) {
        if (!g.elem_abelian_rank) throw InputError("coord:k characters need an elem_abelian group");
        const auto k = parse_index(spec.substr(6), "character " + spec);
        if (k >= *g.elem_abelian_rank) throw InputError("character " + spec + ": coordinate out of range");
        for (Elem x = 0; x < N; ++x) vals[x] = elementary_abelian_coords(*g.p, *g.elem_abelian_rank, x)[k];
    } else if (spec.rfind("proj:", 0) == 0) {
        if (!g.unitriangular) throw InputError("proj:i:j characters need a unitriangular group");
        const auto parts = split(spec.substr(5), ':');
        if (parts.size() != 2) throw InputError("character " + spec + ": expected proj:i:j");
        const auto i = parse_index(parts[0], "character " + spec), j = parse_index(parts[1], "character " + spec);
        for (Elem x = 0; x < N; ++x) vals[x] = g.unitriangular->entry(x, i, j);
    } else {
        const auto it = g.characters.find(spec);
        if (it == g.characters.end()) throw InputError("unknown character \"" + spec + "\"");
        const json& c = it->second;
        const std::string where = "character " + spec;
        if (c.contains("values")) {
            if (c.contains("generators") || c.contains("images"))
                throw InputError(where + ": give either values or generators/images");
            const auto v = detail::field<std::vector<std::int64_t>>(c, "values", where);
            if (v.size() != N) throw DimensionMismatch(where.c_str(), N, v.size());
            vals = v;
        } else {
            const auto gens = detail::field<std::vector<std::int64_t>>(c, "generators", where);
            const auto imgs = detail::field<std::vector<std::int64_t>>(c, "images", where);
            if (gens.size() != imgs.size()) throw DimensionMismatch(where.c_str(), gens.size(), imgs.size());
            std::vector<Elem> ge;
            for (auto x : gens) {
                if (x < 0 || static_cast<std::size_t>(x) >= N) throw InputError(where + ": generator out of range");
                ge.push_back(static_cast<Elem>(x));
            }
            const GroupPtr target = cyclic_group(p);
            std::vector<Elem> im;
            for (auto v : imgs) im.push_back(static_cast<Elem>(((v % p) + p) % p));
            try {
                const auto hom = GroupHom::from_generators(g.group, target, ge, im);
                for (Elem x = 0; x < N; ++x) vals[x] = hom(x);
            } catch (const PreconditionFailed& e) {
                throw InputError(where + ": " + e.what());
            }
        }
    }
    if (negate)
        for (auto& v : vals) v = -v;
    Cochain chi = Cochain::scalar_1cochain(m, vals);
    if (!is_cocycle(chi)) throw InputError("character " + spec + " is not a homomorphism to F_" + std::to_string(p));
    return CohomClass{std::move(chi), true};
}

inline std::vector<CohomClass> resolve_characters(const GroupDescriptor& g, const ModulePtr& m, const std::string& list) {
    std::vector<CohomClass> out;
    for (const auto& s : split(list, ',')) out.push_back(resolve_character(g, m, s));
    return out;
}

// ---------------------------------------------------------------------------
// Modules and subgroups

/// "trivial", "trivialN" (N-dimensional trivial), "natural" or "colvecN" (a
/// matrix group acting on column vectors), "psi" or "psi_prime" (on F_p^3).
inline ModulePtr resolve_module(const GroupDescriptor& g, std::uint32_t p, const std::string& spec) {
    if (spec == "trivial") return trivial_module(g.group, p);
    if (spec.rfind("trivial", 0) == 0) return trivial_module(g.group, p, parse_index(spec.substr(7), "module " + spec));
    if (spec == "natural" || spec.rfind("colvec", 0) == 0) {
        if (g.matrices.empty()) throw InputError("module " + spec + " needs a matrix_gens group");
        const auto d = g.matrices.front().rows();
        if (spec != "natural" && parse_index(spec.substr(6), "module " + spec) != d)
            throw InputError("module " + spec + " does not match the matrix size " + std::to_string(d));
        return make_module(GModule::from_action(g.group, p, d, g.matrices));
    }
    if (spec == "psi" || spec == "psi_prime") {
        if (g.elem_abelian_rank != std::optional<std::size_t>(3)) throw InputError("module " + spec + " needs elem_abelian with k = 3");
        return spec == "psi" ? psi_module(g.group, p) : psi_prime_module(g.group, p);
    }
    throw InputError("unknown module \"" + spec + "\"");
}

/// "all-cyclic", "whole", "trivial", or subgroups given by generators:
/// "1,2;3" is <1, 2> and <3>.
inline std::vector<Subgroup> resolve_subgroups(const GroupDescriptor& g, const std::string& spec) {
    if (spec == "all-cyclic") return cyclic_subgroups(g.group);
    if (spec == "whole") return {Subgroup::whole(g.group)};
    if (spec == "trivial") return {Subgroup::trivial(g.group)};
    std::vector<Subgroup> out;
    for (const auto& part : split(spec, ';')) {
        std::vector<Elem> gens;
        for (const auto& x : split(part, ',')) {
            const auto idx = parse_index(x, "subgroup spec");
            if (idx >= g.group->order()) throw InputError("subgroup generator " + x + " out of range");
            gens.push_back(static_cast<Elem>(idx));
        }
        out.push_back(Subgroup::generated(g.group, gens));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Encoders

inline json to_json(const Vec& v) {
    json a = json::array();
    for (std::size_t i = 0; i < v.dim(); ++i) a.push_back(v[i]);
    return a;
}

inline json to_json(const Mat& m) {
    json a = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) a.push_back(to_json(m.row(r)));
    return a;
}

/// Degree-1 cochains as their value list; others as {degree, dim, table: [{tuple, value}]} over nonzero entries.
inline json to_json(const Cochain& c) {
    if (c.degree() == 1 && c.dim() == 1) {
        json a = json::array();
        for (Elem g = 0; g < c.group().order(); ++g) a.push_back(c(g));
        return a;
    }
    json rows = json::array();
    const std::size_t N = c.group().order();
    for (std::size_t t = 0; t < c.tuple_count(); ++t) {
        const Vec v = c.value_at(t);
        if (v.is_zero()) continue;
        json tuple = json::array();
        std::vector<std::size_t> digits(c.degree());
        std::size_t rest = t;
        for (std::size_t k = c.degree(); k-- > 0;) {
            digits[k] = rest % N;
            rest /= N;
        }
        for (auto d : digits) tuple.push_back(d);
        rows.push_back(json{{"tuple", tuple}, {"value", to_json(v)}});
    }
    return json{{"degree", c.degree()}, {"dim", c.dim()}, {"table", rows}};
}

inline json to_json(const UnipotentElement& u) {
    json entries = json::array();
    for (std::size_t i = 1; i <= u.size(); ++i)
        for (std::size_t j = i + 1; j <= u.size(); ++j)
            if (u.has(i, j)) entries.push_back(json::array({i, j, u.entry(i, j)}));
    return json{{"size", u.size()}, {"p", u.modulus()}, {"entries", entries}};
}

inline UnipotentElement unipotent_from_json(const json& j, bool omit_corner = false) {
    detail::only_fields(j, {"size", "p", "entries"}, "unipotent element");
    const auto size = detail::positive_field(j, "size", "unipotent element");
    const auto p = detail::prime_field(j, "unipotent element");
    UnipotentElement u(size, p, omit_corner);
    for (const auto& e : detail::field<std::vector<std::vector<std::int64_t>>>(j, "entries", "unipotent element")) {
        if (e.size() != 3 || e[0] < 1 || e[1] < 1) throw InputError("unipotent element: entries are [i, j, v]");
        u.set(static_cast<std::size_t>(e[0]), static_cast<std::size_t>(e[1]), e[2]);
    }
    return u;
}

inline json to_json(const DefiningSystem& ds) {
    json entries = json::array();
    for (std::size_t i = 1; i <= ds.n() + 1; ++i)
        for (std::size_t j = i + 1; j <= ds.n() + 1; ++j)
            if (ds.has(i, j)) entries.push_back(json{{"i", i}, {"j", j}, {"values", to_json(ds.at(i, j))}});
    return json{{"n", ds.n()}, {"entries", entries}};
}

/// A homomorphism as the images of the source's generators.
inline json hom_generator_images(const GroupHom& h) {
    json a = json::array();
    for (auto s : h.source()->generators())
        a.push_back(json{{"generator", s}, {"image", h(s)}, {"label", h.target()->label(h(s))}});
    return a;
}

}  // namespace massey::io
