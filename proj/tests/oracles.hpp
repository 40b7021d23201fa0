#pragma once

// Brute-force reference computations. They deliberately avoid the library's
// linear algebra and cochain code: cochains are plain byte vectors, coboundaries
// are evaluated straight from the defining formula, and questions about
// coboundaries are answered by enumerating every cochain.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <vector>

#include "massey/groups.hpp"

namespace oracle {

using massey::Elem;
using massey::FiniteGroup;
using Table = std::vector<std::uint8_t>;  // a cochain, tuple-major, one value per tuple (trivial F_p)

inline std::size_t ipow(std::size_t b, std::size_t e) {
    std::size_t r = 1;
    while (e--) r *= b;
    return r;
}

inline std::vector<Elem> decode_tuple(std::size_t idx, std::size_t N, std::size_t n) {
    std::vector<Elem> t(n);
    for (std::size_t j = n; j-- > 0;) {
        t[j] = static_cast<Elem>(idx % N);
        idx /= N;
    }
    return t;
}

inline std::size_t encode_tuple(const std::vector<Elem>& t, std::size_t N) {
    std::size_t idx = 0;
    for (auto g : t) idx = idx * N + g;
    return idx;
}

/// Reduced row-echelon form by textbook Gauss-Jordan elimination on int rows.
struct NaiveRref {
    std::vector<std::vector<int>> reduced;
    std::size_t rank = 0;
};

inline int inv_mod(int a, int p) {
    for (int x = 1; x < p; ++x)
        if ((a * x) % p == 1) return x;
    return 0;
}

inline NaiveRref naive_rref(std::vector<std::vector<int>> m, int p) {
    const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && m[piv][c] % p == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[r]);
        const int inv = inv_mod(((m[r][c] % p) + p) % p, p);
        for (auto& x : m[r]) x = (((x * inv) % p) + p) % p;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r) continue;
            const int f = ((m[i][c] % p) + p) % p;
            if (!f) continue;
            for (std::size_t k = 0; k < cols; ++k) m[i][k] = (((m[i][k] - f * m[r][k]) % p) + p) % p;
        }
        ++r;
    }
    for (auto& row : m)
        for (auto& x : row) x = ((x % p) + p) % p;
    return {m, r};
}

/// (df)(g1..g_{n+1}) = g1.f(g2..) + sum_i (-1)^i f(.., g_i g_{i+1}, ..) + (-1)^{n+1} f(g1..g_n),
/// trivial one-dimensional coefficients.
inline Table coboundary(const FiniteGroup& G, const Table& f, std::size_t n, int p) {
    const std::size_t N = G.order();
    Table out(ipow(N, n + 1), 0);
    for (std::size_t idx = 0; idx < out.size(); ++idx) {
        const auto t = decode_tuple(idx, N, n + 1);
        int s = f[encode_tuple(std::vector<Elem>(t.begin() + 1, t.end()), N)];
        for (std::size_t i = 1; i <= n; ++i) {
            std::vector<Elem> u;
            for (std::size_t k = 0; k < t.size(); ++k) {
                if (k == i) continue;
                u.push_back(k == i - 1 ? G.mul(t[i - 1], t[i]) : t[k]);
            }
            s += (i % 2 ? -1 : 1) * int(f[encode_tuple(u, N)]);
        }
        s += ((n + 1) % 2 ? -1 : 1) * int(f[encode_tuple(std::vector<Elem>(t.begin(), t.end() - 1), N)]);
        out[idx] = static_cast<std::uint8_t>(((s % p) + p) % p);
    }
    return out;
}

/// Same formula with the module action g.v given by matrices (row-major d x d) per element.
inline std::vector<int> coboundary_module(const FiniteGroup& G, const std::vector<std::vector<int>>& action,
                                          std::size_t d, const std::vector<int>& f, std::size_t n, int p) {
    const std::size_t N = G.order();
    std::vector<int> out(ipow(N, n + 1) * d, 0);
    for (std::size_t idx = 0; idx < ipow(N, n + 1); ++idx) {
        const auto t = decode_tuple(idx, N, n + 1);
        std::vector<int> s(d, 0);
        const std::size_t first = encode_tuple(std::vector<Elem>(t.begin() + 1, t.end()), N);
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = 0; c < d; ++c) s[r] += action[t[0]][r * d + c] * f[first * d + c];
        for (std::size_t i = 1; i <= n; ++i) {
            std::vector<Elem> u;
            for (std::size_t k = 0; k < t.size(); ++k) {
                if (k == i) continue;
                u.push_back(k == i - 1 ? G.mul(t[i - 1], t[i]) : t[k]);
            }
            const std::size_t src = encode_tuple(u, N);
            for (std::size_t r = 0; r < d; ++r) s[r] += (i % 2 ? -1 : 1) * f[src * d + r];
        }
        const std::size_t last = encode_tuple(std::vector<Elem>(t.begin(), t.end() - 1), N);
        for (std::size_t r = 0; r < d; ++r) s[r] += ((n + 1) % 2 ? -1 : 1) * f[last * d + r];
        for (std::size_t r = 0; r < d; ++r) out[idx * d + r] = ((s[r] % p) + p) % p;
    }
    return out;
}

/// (f u g)(x, y) = f(x) g(y).
inline Table cup(const FiniteGroup& G, const Table& f, std::size_t k, const Table& g, std::size_t l, int p) {
    const std::size_t N = G.order();
    const std::size_t tail = ipow(N, l);
    Table out(ipow(N, k + l));
    for (std::size_t idx = 0; idx < out.size(); ++idx)
        out[idx] = static_cast<std::uint8_t>((int(f[idx / tail]) * g[idx % tail]) % p);
    return out;
}

inline Table add(const Table& a, const Table& b, int p, int sign = 1) {
    Table out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = static_cast<std::uint8_t>((((int(a[i]) + sign * b[i]) % p) + p) % p);
    return out;
}

/// Visits every table of length len over F_p in lexicographic order.
inline void for_each_table(std::size_t len, int p, const std::function<void(const Table&)>& visit) {
    Table t(len, 0);
    while (true) {
        visit(t);
        std::size_t i = len;
        while (i > 0) {
            --i;
            if (++t[i] < p) break;
            t[i] = 0;
            if (i == 0) return;
        }
        if (len == 0) return;
    }
}

/// All homomorphisms G -> F_p, by filtering every function.
inline std::vector<Table> homs_to_fp(const FiniteGroup& G, int p) {
    std::vector<Table> out;
    const std::size_t N = G.order();
    for_each_table(N, p, [&](const Table& f) {
        for (Elem a = 0; a < N; ++a)
            for (Elem b = 0; b < N; ++b)
                if ((int(f[a]) + f[b]) % p != f[G.mul(a, b)]) return;
        out.push_back(f);
    });
    return out;
}

/// Every 2-coboundary with one preimage each, found by running through all of C^1.
class Coboundaries2 {
public:
    Coboundaries2(const FiniteGroup& G, int p) : G_(G), p_(p) {
        for_each_table(G.order(), p, [&](const Table& a) { preimage_.emplace(coboundary(G_, a, 1, p_), a); });
        for (const auto& [b, a] : preimage_) all_.push_back(b);
    }

    /// A 1-cochain a with da = z, if any.
    const Table* preimage(const Table& z) const {
        const auto it = preimage_.find(z);
        return it == preimage_.end() ? nullptr : &it->second;
    }

    bool is_coboundary(const Table& z) const { return preimage_.contains(z); }

    /// The least element of z + B^2; equal exactly for cohomologous z.
    Table canonical(const Table& z) const {
        Table best;
        bool have = false;
        for (const auto& b : all_) {
            Table c = add(z, b, p_);
            if (!have || c < best) {
                best = std::move(c);
                have = true;
            }
        }
        return best;
    }

    std::size_t size() const { return all_.size(); }

private:
    const FiniteGroup& G_;
    int p_;
    std::map<Table, Table> preimage_;
    std::vector<Table> all_;
};

/// The value set of <x1, x2, x3> from every defining system, as canonical class
/// representatives; empty when the product is undefined.
inline std::set<Table> triple_value_set(const FiniteGroup& G, const Coboundaries2& B, const std::vector<Table>& homs,
                                        const Table& x1, const Table& x2, const Table& x3, int p, bool* defined) {
    const Table c12 = cup(G, x1, 1, x2, 1, p), c23 = cup(G, x2, 1, x3, 1, p);
    const Table* w13 = B.preimage(c12);
    const Table* w24 = B.preimage(c23);
    *defined = w13 && w24;
    std::set<Table> out;
    if (!*defined) return out;
    // Solutions of da = c are w + (homomorphisms).
    for (const auto& h : homs) {
        const Table a13 = add(*w13, h, p);
        for (const auto& k : homs) {
            const Table a24 = add(*w24, k, p);
            out.insert(B.canonical(add(cup(G, x1, 1, a24, 1, p), cup(G, a13, 1, x3, 1, p), p)));
        }
    }
    return out;
}

/// Whether two multiplication tables agree after some relabeling (brute force over bijections).
inline bool isomorphic(const FiniteGroup& a, const FiniteGroup& b) {
    if (a.order() != b.order()) return false;
    std::vector<Elem> perm(a.order());
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (Elem x = 0; ok && x < a.order(); ++x)
            for (Elem y = 0; ok && y < a.order(); ++y) ok = perm[a.mul(x, y)] == b.mul(perm[x], perm[y]);
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

/// Extends generator images along right multiplication; nullopt if the images
/// do not define a homomorphism G -> H.
inline std::optional<std::vector<Elem>> extend_to_hom(const FiniteGroup& G, const FiniteGroup& H,
                                                      const std::vector<Elem>& gen_images) {
    const auto& gens = G.generators();
    constexpr Elem unset = ~Elem{0};
    std::vector<Elem> img(G.order(), unset);
    img[G.identity()] = H.identity();
    std::vector<Elem> queue{G.identity()};
    for (std::size_t q = 0; q < queue.size(); ++q) {
        const Elem g = queue[q];
        for (std::size_t i = 0; i < gens.size(); ++i) {
            const Elem gs = G.mul(g, gens[i]);
            const Elem v = H.mul(img[g], gen_images[i]);
            if (img[gs] == unset) {
                img[gs] = v;
                queue.push_back(gs);
            } else if (img[gs] != v) {
                return std::nullopt;
            }
        }
    }
    for (Elem a = 0; a < G.order(); ++a)
        for (Elem b = 0; b < G.order(); ++b)
            if (img[G.mul(a, b)] != H.mul(img[a], img[b])) return std::nullopt;
    return img;
}

/// Whether some homomorphism beta: G -> H satisfies q(beta(g)) = target[g] for all g,
/// trying every choice of generator images in the fibres of q.
inline bool exists_lift(const FiniteGroup& G, const FiniteGroup& H, const std::vector<Elem>& q,
                        const std::vector<Elem>& target) {
    const auto& gens = G.generators();
    std::vector<std::vector<Elem>> fibres(gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (Elem h = 0; h < H.order(); ++h)
            if (q[h] == target[gens[i]]) fibres[i].push_back(h);
    for (const auto& f : fibres)
        if (f.empty()) return false;
    std::vector<std::size_t> pick(gens.size(), 0);
    std::vector<Elem> images(gens.size());
    while (true) {
        for (std::size_t i = 0; i < gens.size(); ++i) images[i] = fibres[i][pick[i]];
        if (const auto beta = extend_to_hom(G, H, images)) {
            bool ok = true;
            for (Elem g = 0; g < G.order() && ok; ++g) ok = q[(*beta)[g]] == target[g];
            if (ok) return true;
        }
        std::size_t i = 0;
        while (i < pick.size() && ++pick[i] == fibres[i].size()) pick[i++] = 0;
        if (i == pick.size()) return false;
    }
}

/// Crossed homomorphisms f: G -> F_p^d for the action g.v = act[g] v, where act[g]
/// is a row-major d x d matrix; every generator assignment is tried.
struct CrossedHomCount {
    std::size_t crossed = 0;
    std::size_t principal = 0;
    std::size_t locally_trivial = 0;            // trivial on every cyclic subgroup
    std::size_t locally_trivial_not_principal = 0;
};

inline CrossedHomCount count_crossed_homs(const FiniteGroup& G, const std::vector<std::vector<int>>& act,
                                          std::size_t d, int p) {
    using V = std::vector<int>;
    const auto apply = [&](Elem g, const V& v) {
        V out(d, 0);
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = 0; c < d; ++c) out[r] = (out[r] + act[g][r * d + c] * v[c]) % p;
        return out;
    };
    const auto sum = [&](const V& a, const V& b, int sign) {
        V out(d);
        for (std::size_t k = 0; k < d; ++k) out[k] = ((a[k] + sign * b[k]) % p + p) % p;
        return out;
    };
    std::vector<V> vectors;
    for (std::size_t i = 0; i < ipow(p, d); ++i) {
        V v(d);
        for (std::size_t k = 0, x = i; k < d; ++k, x /= p) v[k] = int(x % p);
        vectors.push_back(v);
    }
    const std::size_t N = G.order();
    // (g - 1) F_p^d for each g; f restricted to <g> is a coboundary iff f(g) lies in it.
    std::vector<std::set<V>> image(N);
    for (Elem g = 0; g < N; ++g)
        for (const auto& v : vectors) image[g].insert(sum(apply(g, v), v, -1));
    std::set<std::vector<V>> principal;
    for (const auto& v : vectors) {
        std::vector<V> f(N);
        for (Elem g = 0; g < N; ++g) f[g] = sum(apply(g, v), v, -1);
        principal.insert(f);
    }
    CrossedHomCount out;
    out.principal = principal.size();
    const auto& gens = G.generators();
    std::vector<std::size_t> pick(gens.size(), 0);
    while (true) {
        std::vector<V> f(N);
        std::vector<bool> seen(N, false);
        f[G.identity()] = V(d, 0);
        seen[G.identity()] = true;
        std::vector<Elem> queue{G.identity()};
        bool ok = true;
        for (std::size_t q = 0; q < queue.size() && ok; ++q) {
            const Elem g = queue[q];
            for (std::size_t i = 0; i < gens.size() && ok; ++i) {
                const Elem gs = G.mul(g, gens[i]);
                const V v = sum(f[g], apply(g, vectors[pick[i]]), 1);
                if (!seen[gs]) {
                    seen[gs] = true;
                    f[gs] = v;
                    queue.push_back(gs);
                } else {
                    ok = f[gs] == v;
                }
            }
        }
        for (Elem a = 0; a < N && ok; ++a)
            for (Elem b = 0; b < N && ok; ++b) ok = f[G.mul(a, b)] == sum(f[a], apply(a, f[b]), 1);
        if (ok) {
            ++out.crossed;
            bool local = true;
            for (Elem g = 0; g < N && local; ++g) local = image[g].contains(f[g]);
            if (local) {
                ++out.locally_trivial;
                if (!principal.contains(f)) ++out.locally_trivial_not_principal;
            }
        }
        std::size_t i = 0;
        while (i < pick.size() && ++pick[i] == vectors.size()) pick[i++] = 0;
        if (i == pick.size()) return out;
    }
}

}  // namespace oracle
