#pragma once

// Finite groups as validated multiplication tables.
//
// Elements are positional indices 0..order-1. Nothing is identified up to
// isomorphism implicitly: two groups are "the same" only if their tables are.

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "massey/error.hpp"
#include "massey/linalg.hpp"

namespace massey {

using Elem = std::uint32_t;

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

struct GroupLimits {
    std::size_t associativity_check_max = 512;  // full (gh)k = g(hk) check up to this order
    std::size_t table_max_order = 4096;         // largest order for which a table is materialized
    std::size_t closure_max = 1000000;          // cap on matrix-group closure enumeration
};

class FiniteGroup {
public:
    using element_type = Elem;

    /// Validates and builds a group from a square multiplication table.
    /// Rejects tables that are not associative (with a witnessing triple),
    /// lack an identity, or lack inverses.
    static FiniteGroup from_table(const std::vector<std::vector<Elem>>& table, std::vector<std::string> labels = {},
                                  const GroupLimits& limits = {}) {
        const std::size_t n = table.size();
        if (n == 0) throw InputError("group table is empty");
        if (n > limits.table_max_order) throw BudgetExceeded("group table order", n, limits.table_max_order);
        std::vector<Elem> flat;
        flat.reserve(n * n);
        for (const auto& row : table) {
            if (row.size() != n) throw DimensionMismatch("group table row", n, row.size());
            for (auto x : row) {
                if (x >= n) throw InputError("group table entry " + std::to_string(x) + " out of range");
                flat.push_back(x);
            }
        }
        return FiniteGroup(n, std::move(flat), std::move(labels), limits);
    }

    /// Builds from a flat row-major table produced by a trusted constructor; still validated.
    static FiniteGroup from_flat(std::size_t n, std::vector<Elem> flat, std::vector<std::string> labels = {},
                                 const GroupLimits& limits = {}) {
        if (n == 0 || flat.size() != n * n) throw InputError("flat group table has wrong size");
        if (n > limits.table_max_order) throw BudgetExceeded("group table order", n, limits.table_max_order);
        return FiniteGroup(n, std::move(flat), std::move(labels), limits);
    }

    std::size_t order() const noexcept { return n_; }
    Elem identity() const noexcept { return e_; }
    Elem mul(Elem a, Elem b) const { return mul_[std::size_t(a) * n_ + b]; }
    Elem inv(Elem a) const { return inv_[a]; }
    bool has_labels() const noexcept { return !labels_.empty(); }
    std::string label(Elem g) const { return labels_.empty() ? std::to_string(g) : labels_.at(g); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }

    Elem pow(Elem g, std::size_t k) const {
        Elem r = e_;
        for (std::size_t i = 0; i < k; ++i) r = mul(r, g);
        return r;
    }

    std::size_t element_order(Elem g) const {
        std::size_t k = 1;
        for (Elem x = g; x != e_; x = mul(x, g)) ++k;
        return k;
    }

    std::size_t exponent() const {
        std::size_t e = 1;
        for (Elem g = 0; g < n_; ++g) e = std::lcm(e, element_order(g));
        return e;
    }

    bool is_abelian() const {
        for (Elem a = 0; a < n_; ++a)
            for (Elem b = a + 1; b < n_; ++b)
                if (mul(a, b) != mul(b, a)) return false;
        return true;
    }

    /// Sorted elements of the subgroup generated by gens.
    std::vector<Elem> closure(std::span<const Elem> gens) const {
        std::vector<bool> seen(n_, false);
        std::vector<Elem> out{e_};
        seen[e_] = true;
        for (std::size_t i = 0; i < out.size(); ++i)
            for (auto s : gens) {
                auto x = mul(out[i], s);
                if (!seen[x]) {
                    seen[x] = true;
                    out.push_back(x);
                }
            }
        std::sort(out.begin(), out.end());
        return out;
    }

    friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) { return a.n_ == b.n_ && a.mul_ == b.mul_; }

    /// A small generating set, built greedily: each step adds the element that
    /// enlarges the generated subgroup most (smallest index on ties).
    const std::vector<Elem>& generators() const noexcept { return gens_; }

private:
    FiniteGroup(std::size_t n, std::vector<Elem> flat, std::vector<std::string> labels, const GroupLimits& limits)
        : n_(n), mul_(std::move(flat)), labels_(std::move(labels)) {
        if (!labels_.empty() && labels_.size() != n_) throw DimensionMismatch("group labels", n_, labels_.size());
        if (n_ <= limits.associativity_check_max) check_associative();
        find_identity();
        find_inverses();
        choose_generators();
    }

    void check_associative() const {
        for (Elem a = 0; a < n_; ++a)
            for (Elem b = 0; b < n_; ++b) {
                const Elem ab = mul(a, b);
                for (Elem c = 0; c < n_; ++c)
                    if (mul(ab, c) != mul(a, mul(b, c))) {
                        std::ostringstream os;
                        os << "group table is not associative: (" << a << "*" << b << ")*" << c << " != " << a << "*("
                           << b << "*" << c << ")";
                        throw InputError(os.str());
                    }
            }
    }

    void find_identity() {
        for (Elem e = 0; e < n_; ++e) {
            bool ok = true;
            for (Elem x = 0; x < n_ && ok; ++x) ok = mul(e, x) == x && mul(x, e) == x;
            if (ok) {
                e_ = e;
                return;
            }
        }
        throw InputError("group table has no identity element");
    }

    void find_inverses() {
        inv_.assign(n_, 0);
        for (Elem g = 0; g < n_; ++g) {
            bool found = false;
            for (Elem h = 0; h < n_ && !found; ++h)
                if (mul(g, h) == e_ && mul(h, g) == e_) {
                    inv_[g] = h;
                    found = true;
                }
            if (!found) throw InputError("element " + std::to_string(g) + " has no inverse");
        }
    }

    void choose_generators() {
        std::vector<Elem> current{e_};
        while (current.size() < n_) {
            std::vector<bool> in_current(n_, false);
            for (auto x : current) in_current[x] = true;
            std::size_t best_size = 0;
            Elem best = 0;
            for (Elem g = 0; g < n_; ++g) {
                if (in_current[g]) continue;
                auto trial = gens_;
                trial.push_back(g);
                auto sz = closure(trial).size();
                if (sz > best_size) {
                    best_size = sz;
                    best = g;
                    if (sz == n_) break;
                }
            }
            gens_.push_back(best);
            current = closure(gens_);
        }
    }

    std::size_t n_;
    std::vector<Elem> mul_;
    std::vector<std::string> labels_;
    Elem e_ = 0;
    std::vector<Elem> inv_;
    std::vector<Elem> gens_;
};

// ---------------------------------------------------------------------------
// Constructors

inline GroupPtr make_group(FiniteGroup g) { return std::make_shared<const FiniteGroup>(std::move(g)); }

inline GroupPtr cyclic_group(std::size_t n) {
    if (n == 0) throw InputError("cyclic group order must be positive");
    std::vector<Elem> flat(n * n);
    std::vector<std::string> labels(n);
    for (std::size_t a = 0; a < n; ++a) {
        labels[a] = std::to_string(a);
        for (std::size_t b = 0; b < n; ++b) flat[a * n + b] = static_cast<Elem>((a + b) % n);
    }
    return make_group(FiniteGroup::from_flat(n, std::move(flat), std::move(labels)));
}

/// Coordinates of element idx of (Z/p)^k; coordinate 0 is the most significant digit.
inline std::vector<std::uint32_t> elementary_abelian_coords(std::uint32_t p, std::size_t k, Elem idx) {
    std::vector<std::uint32_t> c(k);
    for (std::size_t j = k; j-- > 0;) {
        c[j] = idx % p;
        idx /= p;
    }
    return c;
}

inline Elem elementary_abelian_index(std::uint32_t p, std::span<const std::uint32_t> coords) {
    Elem idx = 0;
    for (auto c : coords) idx = idx * p + (c % p);
    return idx;
}

inline GroupPtr elementary_abelian_group(std::uint32_t p, std::size_t k) {
    check_modulus(p);
    std::size_t n = 1;
    for (std::size_t i = 0; i < k; ++i) n *= p;
    std::vector<Elem> flat(n * n);
    std::vector<std::string> labels(n);
    for (Elem a = 0; a < n; ++a) {
        auto ca = elementary_abelian_coords(p, k, a);
        std::string l = "(";
        for (std::size_t j = 0; j < k; ++j) l += (j ? "," : "") + std::to_string(ca[j]);
        labels[a] = l + ")";
        for (Elem b = 0; b < n; ++b) {
            auto cb = elementary_abelian_coords(p, k, b);
            for (std::size_t j = 0; j < k; ++j) cb[j] = (ca[j] + cb[j]) % p;
            flat[std::size_t(a) * n + b] = elementary_abelian_index(p, cb);
        }
    }
    return make_group(FiniteGroup::from_flat(n, std::move(flat), std::move(labels)));
}

/// G x H with (g, h) stored at index g * |H| + h.
inline GroupPtr direct_product(const FiniteGroup& g, const FiniteGroup& h) {
    const std::size_t n = g.order() * h.order();
    std::vector<Elem> flat(n * n);
    std::vector<std::string> labels(n);
    for (Elem a = 0; a < n; ++a) {
        const Elem ag = a / h.order(), ah = a % h.order();
        labels[a] = "(" + g.label(ag) + "," + h.label(ah) + ")";
        for (Elem b = 0; b < n; ++b) {
            const Elem bg = b / h.order(), bh = b % h.order();
            flat[std::size_t(a) * n + b] = static_cast<Elem>(g.mul(ag, bg) * h.order() + h.mul(ah, bh));
        }
    }
    return make_group(FiniteGroup::from_flat(n, std::move(flat), std::move(labels)));
}

/// Dihedral group of order 2n: element r^i s^j at index i + n*j.
inline GroupPtr dihedral_group(std::size_t n) {
    if (n == 0) throw InputError("dihedral parameter must be positive");
    const std::size_t order = 2 * n;
    std::vector<Elem> flat(order * order);
    std::vector<std::string> labels(order);
    for (std::size_t a = 0; a < order; ++a) {
        const std::size_t i1 = a % n, j1 = a / n;
        labels[a] = "r" + std::to_string(i1) + (j1 ? "s" : "");
        for (std::size_t b = 0; b < order; ++b) {
            const std::size_t i2 = b % n, j2 = b / n;
            // r^i1 s^j1 r^i2 s^j2 = r^(i1 + (-1)^j1 i2) s^(j1 + j2)
            const std::size_t i = j1 ? (i1 + n - i2) % n : (i1 + i2) % n;
            flat[a * order + b] = static_cast<Elem>(i + n * ((j1 + j2) % 2));
        }
    }
    return make_group(FiniteGroup::from_flat(order, std::move(flat), std::move(labels)));
}

struct MatrixGroup {
    GroupPtr group;
    std::vector<Mat> matrices;  // matrices[g] is the matrix of element g; pairwise distinct
};

inline std::string matrix_label(const Mat& m) {
    std::ostringstream os;
    os << m;
    return os.str();
}

/// Closure of a set of invertible d x d matrices over F_p. Element 0 is the identity;
/// further elements appear in breadth-first order of right multiplication by generators.
inline MatrixGroup from_matrix_generators(std::uint32_t p, std::size_t d, const std::vector<Mat>& gens,
                                          const GroupLimits& limits = {}) {
    check_modulus(p);
    for (const auto& g : gens) {
        if (g.rows() != d || g.cols() != d) throw DimensionMismatch("matrix generator", d, g.rows());
        if (g.modulus() != p) throw InputError("matrix generator has wrong modulus");
        if (!is_invertible(g)) throw InputError("matrix generator is not invertible");
    }
    std::map<std::vector<std::uint8_t>, Elem> index;
    std::vector<Mat> elems{Mat::identity(p, d)};
    index.emplace(elems[0].data(), 0);
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (const auto& g : gens) {
            Mat x = elems[i] * g;
            if (index.contains(x.data())) continue;
            if (elems.size() >= limits.closure_max)
                throw BudgetExceeded("matrix group closure", elems.size() + 1, limits.closure_max);
            index.emplace(x.data(), static_cast<Elem>(elems.size()));
            elems.push_back(std::move(x));
        }
    const std::size_t n = elems.size();
    if (n > limits.table_max_order) throw BudgetExceeded("matrix group table order", n, limits.table_max_order);
    std::vector<Elem> flat(n * n);
    std::vector<std::string> labels(n);
    for (std::size_t a = 0; a < n; ++a) {
        labels[a] = matrix_label(elems[a]);
        for (std::size_t b = 0; b < n; ++b) flat[a * n + b] = index.at((elems[a] * elems[b]).data());
    }
    return {make_group(FiniteGroup::from_flat(n, std::move(flat), std::move(labels), limits)), std::move(elems)};
}

// ---------------------------------------------------------------------------
// Subgroups

class Subgroup {
public:
    /// Validates closure; members need not be sorted.
    static Subgroup from_members(GroupPtr parent, std::vector<Elem> members) {
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        Subgroup s(std::move(parent), std::move(members));
        const auto& g = *s.parent_;
        if (!s.contains(g.identity())) throw InputError("subgroup does not contain the identity");
        for (auto a : s.members_) {
            if (a >= g.order()) throw InputError("subgroup member out of range");
            if (!s.contains(g.inv(a))) throw InputError("subgroup not closed under inverses");
            for (auto b : s.members_)
                if (!s.contains(g.mul(a, b))) throw InputError("subgroup not closed under multiplication");
        }
        return s;
    }

    static Subgroup generated(GroupPtr parent, std::span<const Elem> gens) {
        for (auto g : gens)
            if (g >= parent->order()) throw InputError("subgroup generator out of range");
        auto members = parent->closure(gens);
        return Subgroup(std::move(parent), std::move(members));
    }

    static Subgroup whole(GroupPtr parent) {
        std::vector<Elem> all(parent->order());
        for (Elem g = 0; g < all.size(); ++g) all[g] = g;
        return Subgroup(std::move(parent), std::move(all));
    }

    static Subgroup trivial(GroupPtr parent) {
        auto e = parent->identity();
        return Subgroup(std::move(parent), {e});
    }

    const GroupPtr& parent() const noexcept { return parent_; }
    const std::vector<Elem>& members() const noexcept { return members_; }
    std::size_t order() const noexcept { return members_.size(); }
    bool contains(Elem g) const { return std::binary_search(members_.begin(), members_.end(), g); }

    /// Position of a parent element inside members(); this is its index in as_group().
    Elem local_index(Elem g) const {
        auto it = std::lower_bound(members_.begin(), members_.end(), g);
        if (it == members_.end() || *it != g) throw InputError("element is not in the subgroup");
        return static_cast<Elem>(it - members_.begin());
    }

    /// The subgroup as a standalone group; local index i is parent element members()[i].
    GroupPtr as_group() const {
        const std::size_t n = members_.size();
        std::vector<Elem> flat(n * n);
        std::vector<std::string> labels(n);
        for (std::size_t a = 0; a < n; ++a) {
            labels[a] = parent_->label(members_[a]);
            for (std::size_t b = 0; b < n; ++b) flat[a * n + b] = local_index(parent_->mul(members_[a], members_[b]));
        }
        return make_group(FiniteGroup::from_flat(n, std::move(flat), std::move(labels)));
    }

    friend bool operator==(const Subgroup& a, const Subgroup& b) {
        return a.parent_ == b.parent_ && a.members_ == b.members_;
    }

private:
    Subgroup(GroupPtr parent, std::vector<Elem> members) : parent_(std::move(parent)), members_(std::move(members)) {}

    GroupPtr parent_;
    std::vector<Elem> members_;
};

/// The distinct cyclic subgroups <g>, ordered by the first generator index that produces them.
inline std::vector<Subgroup> cyclic_subgroups(const GroupPtr& g) {
    std::set<std::vector<Elem>> seen;
    std::vector<Subgroup> out;
    for (Elem x = 0; x < g->order(); ++x) {
        std::vector<Elem> gen{x};
        auto members = g->closure(gen);
        if (seen.insert(members).second) out.push_back(Subgroup::generated(g, gen));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Homomorphisms

/// Anything with an element type, an identity and a multiplication can be a
/// homomorphism target: table groups, or arithmetic groups too large to tabulate.
template <class T>
concept GroupLike = requires(const T& t, typename T::element_type a) {
    { t.identity() } -> std::convertible_to<typename T::element_type>;
    { t.mul(a, a) } -> std::convertible_to<typename T::element_type>;
};

namespace detail {

/// Breadth-first evaluation of the map determined by generator images on the
/// subgroup generated by gens. Every Cayley-graph edge h -> h*s is checked, which
/// is exactly the homomorphism condition on that subgroup.
template <GroupLike Target>
bool extend_on_generators(const FiniteGroup& src, std::span<const Elem> gens,
                          std::span<const typename Target::element_type> images, const Target& tgt,
                          std::vector<typename Target::element_type>& out, std::vector<bool>& defined,
                          std::pair<Elem, Elem>* conflict = nullptr) {
    out.assign(src.order(), tgt.identity());
    defined.assign(src.order(), false);
    std::vector<Elem> queue{src.identity()};
    defined[src.identity()] = true;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        const Elem h = queue[qi];
        for (std::size_t i = 0; i < gens.size(); ++i) {
            const Elem k = src.mul(h, gens[i]);
            auto val = tgt.mul(out[h], images[i]);
            if (!defined[k]) {
                defined[k] = true;
                out[k] = std::move(val);
                queue.push_back(k);
            } else if (!(out[k] == val)) {
                if (conflict) *conflict = {h, gens[i]};
                return false;
            }
        }
    }
    return true;
}

}  // namespace detail

/// Full image table of the homomorphism with the given generator images, or
/// nothing if the assignment does not extend to a homomorphism.
template <GroupLike Target>
std::optional<std::vector<typename Target::element_type>> extend_homomorphism(
    const FiniteGroup& src, std::span<const Elem> gens, std::span<const typename Target::element_type> images,
    const Target& tgt) {
    if (gens.size() != images.size()) throw DimensionMismatch("generator images", gens.size(), images.size());
    std::vector<typename Target::element_type> out;
    std::vector<bool> defined;
    if (!detail::extend_on_generators(src, gens, images, tgt, out, defined)) return std::nullopt;
    if (std::find(defined.begin(), defined.end(), false) != defined.end())
        throw InputError("elements do not generate the source group");
    return out;
}

/// Depth-first search over generator images. candidates[i] lists the allowed
/// images of gens[i], tried in order; partial assignments are pruned as soon as
/// they fail the homomorphism condition on the subgroup generated so far. The
/// visitor receives each full image table and returns false to stop.
/// Returns the number of search nodes visited; throws when node_budget is exceeded.
template <GroupLike Target, class Visitor>
std::size_t for_each_homomorphism(const FiniteGroup& src, std::span<const Elem> gens,
                                  const std::vector<std::vector<typename Target::element_type>>& candidates,
                                  const Target& tgt, Visitor&& visit, std::size_t node_budget = std::size_t{1} << 24) {
    using T = typename Target::element_type;
    if (candidates.size() != gens.size()) throw DimensionMismatch("candidate lists", gens.size(), candidates.size());
    std::vector<T> chosen;
    std::vector<T> table;
    std::vector<bool> defined;
    std::size_t nodes = 0;
    bool stop = false;
    auto rec = [&](auto&& self, std::size_t depth) -> void {
        if (depth == gens.size()) {
            std::vector<bool> full;
            std::vector<T> out;
            detail::extend_on_generators(src, gens, std::span<const T>(chosen), tgt, out, full);
            if (std::find(full.begin(), full.end(), false) != full.end())
                throw InputError("elements do not generate the source group");
            if (!visit(std::as_const(out))) stop = true;
            return;
        }
        for (const auto& c : candidates[depth]) {
            if (stop) return;
            if (++nodes > node_budget) throw BudgetExceeded("homomorphism search nodes", nodes, node_budget);
            chosen.push_back(c);
            if (detail::extend_on_generators(src, gens.first(depth + 1), std::span<const T>(chosen), tgt, table,
                                             defined))
                self(self, depth + 1);
            chosen.pop_back();
        }
    };
    rec(rec, 0);
    return nodes;
}

/// First homomorphism (in candidate order) found by for_each_homomorphism.
template <GroupLike Target>
std::optional<std::vector<typename Target::element_type>> find_homomorphism(
    const FiniteGroup& src, std::span<const Elem> gens,
    const std::vector<std::vector<typename Target::element_type>>& candidates, const Target& tgt,
    std::size_t node_budget = std::size_t{1} << 24) {
    std::optional<std::vector<typename Target::element_type>> found;
    for_each_homomorphism(
        src, gens, candidates, tgt,
        [&](const auto& table) {
            found = table;
            return false;
        },
        node_budget);
    return found;
}

class GroupHom {
public:
    /// Validates the full table: images(g*h) == images(g)*images(h) for every pair.
    static GroupHom from_images(GroupPtr src, GroupPtr tgt, std::vector<Elem> images) {
        if (images.size() != src->order()) throw DimensionMismatch("homomorphism table", src->order(), images.size());
        for (auto x : images)
            if (x >= tgt->order()) throw InputError("homomorphism image out of range");
        for (Elem g = 0; g < src->order(); ++g)
            for (Elem h = 0; h < src->order(); ++h)
                if (images[src->mul(g, h)] != tgt->mul(images[g], images[h]))
                    throw PreconditionFailed("not a homomorphism: fails on the pair (" + std::to_string(g) + ", " +
                                             std::to_string(h) + ")");
        return GroupHom(std::move(src), std::move(tgt), std::move(images));
    }

    /// Extends generator images by word evaluation; rejects inconsistent assignments
    /// with a witnessing pair (h, s) where images(h*s) != images(h)*images(s).
    static GroupHom from_generators(GroupPtr src, GroupPtr tgt, std::span<const Elem> gens,
                                    std::span<const Elem> gen_images) {
        if (gens.size() != gen_images.size()) throw DimensionMismatch("generator images", gens.size(), gen_images.size());
        for (auto x : gen_images)
            if (x >= tgt->order()) throw InputError("homomorphism image out of range");
        std::vector<Elem> out;
        std::vector<bool> defined;
        std::pair<Elem, Elem> bad{};
        if (!detail::extend_on_generators(*src, gens, gen_images, *tgt, out, defined, &bad))
            throw PreconditionFailed("not a homomorphism: fails on the pair (" + std::to_string(bad.first) + ", " +
                                     std::to_string(bad.second) + ")");
        if (std::find(defined.begin(), defined.end(), false) != defined.end())
            throw InputError("elements do not generate the source group");
        return GroupHom(std::move(src), std::move(tgt), std::move(out));
    }

    static GroupHom identity(const GroupPtr& g) {
        std::vector<Elem> img(g->order());
        for (Elem x = 0; x < img.size(); ++x) img[x] = x;
        return GroupHom(g, g, std::move(img));
    }

    static GroupHom trivial(GroupPtr src, GroupPtr tgt) {
        std::vector<Elem> img(src->order(), tgt->identity());
        return GroupHom(std::move(src), std::move(tgt), std::move(img));
    }

    const GroupPtr& source() const noexcept { return src_; }
    const GroupPtr& target() const noexcept { return tgt_; }
    const std::vector<Elem>& images() const noexcept { return images_; }
    Elem operator()(Elem g) const { return images_.at(g); }

    /// after o this
    GroupHom then(const GroupHom& after) const {
        if (after.src_->order() != tgt_->order()) throw InputError("homomorphisms do not compose");
        std::vector<Elem> img(images_.size());
        for (std::size_t g = 0; g < img.size(); ++g) img[g] = after(images_[g]);
        return GroupHom(src_, after.tgt_, std::move(img));
    }

    Subgroup kernel() const {
        std::vector<Elem> k;
        for (Elem g = 0; g < images_.size(); ++g)
            if (images_[g] == tgt_->identity()) k.push_back(g);
        return Subgroup::from_members(src_, std::move(k));
    }

    Subgroup image() const { return Subgroup::from_members(tgt_, images_); }

    bool is_surjective() const {
        std::vector<bool> hit(tgt_->order(), false);
        for (auto x : images_) hit[x] = true;
        return std::find(hit.begin(), hit.end(), false) == hit.end();
    }

    /// Restriction along the inclusion of a subgroup of the source.
    GroupHom restrict_to(const Subgroup& s) const {
        if (s.parent() != src_) throw InputError("subgroup of a different group");
        auto sub = s.as_group();
        std::vector<Elem> img(s.order());
        for (std::size_t i = 0; i < img.size(); ++i) img[i] = images_[s.members()[i]];
        return GroupHom(std::move(sub), tgt_, std::move(img));
    }

    friend bool operator==(const GroupHom& a, const GroupHom& b) {
        return a.src_ == b.src_ && a.tgt_ == b.tgt_ && a.images_ == b.images_;
    }

private:
    GroupHom(GroupPtr src, GroupPtr tgt, std::vector<Elem> images)
        : src_(std::move(src)), tgt_(std::move(tgt)), images_(std::move(images)) {}

    GroupPtr src_;
    GroupPtr tgt_;
    std::vector<Elem> images_;
};

inline bool is_surjective(const GroupHom& h) { return h.is_surjective(); }

/// Every homomorphism src -> tgt, by exhaustive search over generator images.
inline std::vector<GroupHom> all_homomorphisms(const GroupPtr& src, const GroupPtr& tgt) {
    const auto& gens = src->generators();
    std::vector<Elem> all(tgt->order());
    for (Elem x = 0; x < all.size(); ++x) all[x] = x;
    std::vector<std::vector<Elem>> candidates(gens.size(), all);
    std::vector<GroupHom> out;
    for_each_homomorphism(*src, gens, candidates, *tgt, [&](const std::vector<Elem>& table) {
        out.push_back(GroupHom::from_images(src, tgt, table));
        return true;
    });
    return out;
}

}  // namespace massey
