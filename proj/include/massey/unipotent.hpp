#pragma once

// Upper unitriangular matrices U_{n+1}(F_p), the quotient Ubar_{n+1}(F_p) that
// forgets the corner entry (1, n+1), and the n = 3 extension data
//
//     1 -> A -> U_4(F_p) -> F_p^3 -> 1,   u -> (u12, u23, u34),
//
// with A = {I + a E24 + b E13 + c E14} written in the basis
// e1 = I + E24, e2 = I + E13, e3 = I + E14.
//
// Matrix positions are 1-based throughout, as (i, j) with i < j.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "massey/cohomology.hpp"
#include "massey/error.hpp"
#include "massey/groups.hpp"
#include "massey/linalg.hpp"

namespace massey {

inline constexpr std::size_t kMaxUnipotentSize = 8;

/// A unitriangular matrix. When omits_corner() is set it stands for the class
/// of a matrix modulo the center Z_{n+1}, and the (1, n+1) entry is absent.
class UnipotentElement {
public:
    UnipotentElement(std::size_t size, std::uint32_t p, bool omit_corner = false)
        : size_(size), p_(p), omit_corner_(omit_corner), m_(Mat::identity(p, size)) {
        check_modulus(p);
        if (size < 2 || size > kMaxUnipotentSize) throw InputError("unipotent matrix size out of range");
    }

    static UnipotentElement identity(std::size_t size, std::uint32_t p, bool omit_corner = false) {
        return UnipotentElement(size, p, omit_corner);
    }

    static UnipotentElement from_matrix(const Mat& m, bool omit_corner = false) {
        if (!m.is_square()) throw InputError("unipotent matrix must be square");
        UnipotentElement u(m.rows(), m.modulus(), omit_corner);
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) {
                const std::uint8_t want = i == j ? 1 : 0;
                if (j <= i && m(i, j) != want) throw InputError("matrix is not upper unitriangular");
            }
        u.m_ = m;
        if (omit_corner) u.m_.set(0, m.cols() - 1, 0);
        return u;
    }

    std::size_t size() const noexcept { return size_; }
    std::uint32_t modulus() const noexcept { return p_; }
    bool omits_corner() const noexcept { return omit_corner_; }

    bool has(std::size_t i, std::size_t j) const noexcept {
        return 1 <= i && i < j && j <= size_ && !(omit_corner_ && i == 1 && j == size_);
    }

    std::uint8_t entry(std::size_t i, std::size_t j) const {
        if (!has(i, j)) throw InputError("coordinate (" + std::to_string(i) + "," + std::to_string(j) + ") is absent");
        return m_(i - 1, j - 1);
    }

    void set(std::size_t i, std::size_t j, std::int64_t v) {
        if (!has(i, j)) throw InputError("coordinate (" + std::to_string(i) + "," + std::to_string(j) + ") is absent");
        m_.set(i - 1, j - 1, v);
    }

    /// The full matrix; the corner is zero for quotient elements.
    const Mat& matrix() const noexcept { return m_; }

    friend UnipotentElement operator*(const UnipotentElement& a, const UnipotentElement& b) {
        if (a.size_ != b.size_ || a.p_ != b.p_ || a.omit_corner_ != b.omit_corner_)
            throw InputError("unipotent elements of different shapes");
        UnipotentElement r(a.size_, a.p_, a.omit_corner_);
        r.m_ = a.m_ * b.m_;
        if (r.omit_corner_) r.m_.set(0, r.size_ - 1, 0);
        return r;
    }

    UnipotentElement inverse() const {
        UnipotentElement r(size_, p_, omit_corner_);
        r.m_ = massey::inverse(m_);
        if (omit_corner_) r.m_.set(0, size_ - 1, 0);
        return r;
    }

    friend bool operator==(const UnipotentElement& a, const UnipotentElement& b) {
        return a.omit_corner_ == b.omit_corner_ && a.m_ == b.m_;
    }

private:
    std::size_t size_;
    std::uint32_t p_;
    bool omit_corner_;
    Mat m_;
};

/// (i, j) coordinate of u; for j = i + 1 this is additive along any homomorphism.
inline Scalar proj(const UnipotentElement& u, std::size_t i, std::size_t j) { return Scalar(u.entry(i, j), u.modulus()); }

/// Allocation-free arithmetic on U_{n+1}(F_p) or Ubar_{n+1}(F_p), with elements
/// encoded as integers: the present strict-upper entries in row-major order,
/// read as base-p digits with the first entry most significant. The identity is 0.
class UnitriangularArith {
public:
    using element_type = std::uint64_t;

    UnitriangularArith(std::size_t n, std::uint32_t p, bool omit_corner) : n_(n), p_(p), omit_corner_(omit_corner) {
        check_modulus(p);
        if (n < 1 || n + 1 > kMaxUnipotentSize) throw InputError("unitriangular rank out of range");
        const std::size_t m = n + 1;
        for (std::size_t i = 1; i <= m; ++i)
            for (std::size_t j = i + 1; j <= m; ++j)
                if (!(omit_corner && i == 1 && j == m)) positions_.emplace_back(i, j);
        long double order = 1;
        for (std::size_t k = 0; k < positions_.size(); ++k) order *= p;
        if (order > 4.0e18L) throw BudgetExceeded("unitriangular group order", std::size_t(-1), std::size_t{1} << 62);
        order_ = 1;
        for (std::size_t k = 0; k < positions_.size(); ++k) order_ *= p;
    }

    std::size_t n() const noexcept { return n_; }
    std::size_t matrix_size() const noexcept { return n_ + 1; }
    std::uint32_t modulus() const noexcept { return p_; }
    bool omits_corner() const noexcept { return omit_corner_; }
    std::uint64_t order() const noexcept { return order_; }
    const std::vector<std::pair<std::size_t, std::size_t>>& positions() const noexcept { return positions_; }

    element_type identity() const noexcept { return 0; }

    element_type mul(element_type a, element_type b) const {
        Grid x = decode_grid(a), y = decode_grid(b), z{};
        const std::size_t m = n_ + 1;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j) {
                std::uint32_t s = x[i * m + j] + y[i * m + j];
                for (std::size_t k = i + 1; k < j; ++k) s += std::uint32_t(x[i * m + k]) * y[k * m + j];
                z[i * m + j] = static_cast<std::uint8_t>(s % p_);
            }
        return encode_grid(z);
    }

    element_type inv(element_type a) const { return encode(decode(a).inverse()); }

    /// Entry (i, j), 1-based, of the element with code c.
    std::uint8_t entry(element_type c, std::size_t i, std::size_t j) const {
        for (std::size_t k = positions_.size(); k-- > 0;) {
            if (positions_[k] == std::pair{i, j}) return static_cast<std::uint8_t>(c % p_);
            c /= p_;
        }
        throw InputError("coordinate (" + std::to_string(i) + "," + std::to_string(j) + ") is absent");
    }

    UnipotentElement decode(element_type c) const {
        UnipotentElement u(n_ + 1, p_, omit_corner_);
        for (std::size_t k = positions_.size(); k-- > 0;) {
            u.set(positions_[k].first, positions_[k].second, c % p_);
            c /= p_;
        }
        return u;
    }

    element_type encode(const UnipotentElement& u) const {
        if (u.size() != n_ + 1 || u.modulus() != p_) throw InputError("unipotent element of the wrong shape");
        element_type c = 0;
        for (auto [i, j] : positions_) c = c * p_ + u.matrix()(i - 1, j - 1);
        return c;
    }

    /// Elements whose superdiagonal equals diag (length n); all other present
    /// entries vary. Returned in increasing code order.
    std::vector<element_type> with_superdiagonal(const std::vector<std::uint32_t>& diag) const {
        if (diag.size() != n_) throw DimensionMismatch("superdiagonal", n_, diag.size());
        std::vector<std::size_t> free;
        for (std::size_t k = 0; k < positions_.size(); ++k)
            if (positions_[k].second != positions_[k].first + 1) free.push_back(k);
        std::vector<element_type> out;
        std::size_t count = 1;
        for (std::size_t k = 0; k < free.size(); ++k) count *= p_;
        out.reserve(count);
        const std::size_t K = positions_.size();
        for (std::size_t t = 0; t < count; ++t) {
            std::vector<std::uint32_t> digit(K, 0);
            std::size_t rest = t;
            for (std::size_t q = free.size(); q-- > 0;) {
                digit[free[q]] = rest % p_;
                rest /= p_;
            }
            for (std::size_t k = 0; k < K; ++k)
                if (positions_[k].second == positions_[k].first + 1) digit[k] = diag[positions_[k].first - 1] % p_;
            element_type c = 0;
            for (auto d : digit) c = c * p_ + d;
            out.push_back(c);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    using Grid = std::array<std::uint8_t, kMaxUnipotentSize * kMaxUnipotentSize>;

    Grid decode_grid(element_type c) const {
        Grid g{};
        const std::size_t m = n_ + 1;
        for (std::size_t k = positions_.size(); k-- > 0;) {
            g[(positions_[k].first - 1) * m + positions_[k].second - 1] = static_cast<std::uint8_t>(c % p_);
            c /= p_;
        }
        return g;
    }

    element_type encode_grid(const Grid& g) const {
        const std::size_t m = n_ + 1;
        element_type c = 0;
        for (auto [i, j] : positions_) c = c * p_ + g[(i - 1) * m + j - 1];
        return c;
    }

    std::size_t n_;
    std::uint32_t p_;
    bool omit_corner_;
    std::vector<std::pair<std::size_t, std::size_t>> positions_;
    std::uint64_t order_ = 1;
};

/// U_{n+1}(F_p) or Ubar_{n+1}(F_p) as a table group; element index == arithmetic code.
struct UnipotentGroup {
    UnitriangularArith arith;
    GroupPtr group;

    UnipotentElement element(Elem g) const { return arith.decode(g); }
    Elem index(const UnipotentElement& u) const { return static_cast<Elem>(arith.encode(u)); }
    std::uint8_t entry(Elem g, std::size_t i, std::size_t j) const { return arith.entry(g, i, j); }
};

namespace detail {

inline UnipotentGroup tabulate_unitriangular(std::size_t n, std::uint32_t p, bool omit_corner, const GroupLimits& limits) {
    UnitriangularArith arith(n, p, omit_corner);
    if (arith.order() > limits.table_max_order)
        throw BudgetExceeded("unitriangular group table", static_cast<std::size_t>(arith.order()), limits.table_max_order);
    const std::size_t N = arith.order();
    std::vector<Elem> flat(N * N);
    std::vector<std::string> labels(N);
    for (std::size_t a = 0; a < N; ++a) {
        labels[a] = matrix_label(arith.decode(a).matrix());
        for (std::size_t b = 0; b < N; ++b) flat[a * N + b] = static_cast<Elem>(arith.mul(a, b));
    }
    return {arith, make_group(FiniteGroup::from_flat(N, std::move(flat), std::move(labels), limits))};
}

}  // namespace detail

inline UnipotentGroup u_group(std::size_t n, std::uint32_t p, const GroupLimits& limits = {}) {
    return detail::tabulate_unitriangular(n, p, false, limits);
}

inline UnipotentGroup ubar_group(std::size_t n, std::uint32_t p, const GroupLimits& limits = {}) {
    return detail::tabulate_unitriangular(n, p, true, limits);
}

/// U_{n+1} -> Ubar_{n+1}, forgetting the corner; its kernel is the center Z_{n+1}.
inline GroupHom quotient_hom(const UnipotentGroup& u, const UnipotentGroup& ubar) {
    if (u.arith.n() != ubar.arith.n() || u.arith.modulus() != ubar.arith.modulus() || u.arith.omits_corner() ||
        !ubar.arith.omits_corner())
        throw InputError("quotient_hom needs U_{n+1} and Ubar_{n+1} of the same shape");
    std::vector<Elem> img(u.group->order());
    for (Elem g = 0; g < img.size(); ++g) {
        auto e = u.element(g);
        img[g] = static_cast<Elem>(ubar.arith.encode(UnipotentElement::from_matrix(e.matrix(), true)));
    }
    return GroupHom::from_images(u.group, ubar.group, std::move(img));
}

/// u -> (u12, u23, ..., u_{n,n+1}) onto the elementary abelian group F_p^n.
inline GroupHom superdiagonal_hom(const UnipotentGroup& u, const GroupPtr& fpn) {
    const auto n = u.arith.n();
    const auto p = u.arith.modulus();
    if (fpn->order() != detail::int_pow(p, n)) throw InputError("superdiagonal target has the wrong order");
    std::vector<Elem> img(u.group->order());
    std::vector<std::uint32_t> c(n);
    for (Elem g = 0; g < img.size(); ++g) {
        for (std::size_t i = 0; i < n; ++i) c[i] = u.entry(g, i + 1, i + 2);
        img[g] = elementary_abelian_index(p, c);
    }
    return GroupHom::from_images(u.group, fpn, std::move(img));
}

// ---------------------------------------------------------------------------
// The n = 3 extension and the action on A

/// The set-theoretic section F_p^3 -> U_4(F_p): superdiagonal (x, y, z), zeros above.
inline UnipotentElement section(std::uint32_t p, std::int64_t x, std::int64_t y, std::int64_t z) {
    UnipotentElement u(4, p);
    u.set(1, 2, x);
    u.set(2, 3, y);
    u.set(3, 4, z);
    return u;
}

/// Coordinates (a, b, c) of an element of A in the basis (I+E24, I+E13, I+E14).
inline Vec kernel_a_coords(const UnipotentElement& u) {
    if (u.size() != 4 || u.omits_corner()) throw InputError("kernel A lives in U_4");
    const auto& m = u.matrix();
    if (m(0, 1) || m(1, 2) || m(2, 3)) throw InputError("matrix is not in the kernel A");
    return Vec(u.modulus(), {m(1, 3), m(0, 2), m(0, 3)});
}

inline UnipotentElement kernel_a_element(const Vec& coords) {
    if (coords.dim() != 3) throw DimensionMismatch("kernel A coordinates", 3, coords.dim());
    UnipotentElement u(4, coords.modulus());
    u.set(2, 4, coords[0]);
    u.set(1, 3, coords[1]);
    u.set(1, 4, coords[2]);
    return u;
}

/// Matrix of the conjugation action of (x, y, z) on A in the basis (e1, e2, e3),
/// obtained by conjugating each basis element by the section and reading off
/// coordinates: column k is the image of e_k.
inline Mat psi(std::uint32_t p, std::int64_t x, std::int64_t y, std::int64_t z) {
    const auto g = section(p, x, y, z);
    const auto g_inv = g.inverse();
    Mat out(p, 3, 3);
    for (std::size_t k = 0; k < 3; ++k) {
        const auto conj = g * kernel_a_element(Vec::unit(p, 3, k)) * g_inv;
        const auto c = kernel_a_coords(conj);
        for (std::size_t r = 0; r < 3; ++r) out.set(r, k, c[r]);
    }
    return out;
}

/// Matrix of the dual action on A' = Hom(A, F_p) in the dual basis, from the
/// definition (g.phi)(a) = phi(g^-1 . a): entry (i, j) is e'_i(psi(g^-1) e_j).
inline Mat psi_prime(std::uint32_t p, std::int64_t x, std::int64_t y, std::int64_t z) {
    const Mat inv_action = psi(p, -x, -y, -z);
    Mat out(p, 3, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) out.set(i, j, inv_action(j, i));
    return out;
}

/// eps(g, h) = s(g) s(h) s(gh)^-1 in A, as coordinates.
inline Vec extension_cocycle(std::uint32_t p, std::span<const std::uint32_t> g, std::span<const std::uint32_t> h) {
    if (g.size() != 3 || h.size() != 3) throw DimensionMismatch("extension_cocycle argument", 3, g.size());
    const auto sg = section(p, g[0], g[1], g[2]);
    const auto sh = section(p, h[0], h[1], h[2]);
    const auto sgh = section(p, g[0] + h[0], g[1] + h[1], g[2] + h[2]);
    return kernel_a_coords(sg * sh * sgh.inverse());
}

/// A over the elementary abelian group F_p^3, with action psi.
inline ModulePtr psi_module(const GroupPtr& fp3, std::uint32_t p) {
    if (fp3->order() != std::size_t(p) * p * p) throw InputError("psi_module needs F_p^3");
    std::vector<Mat> act(fp3->order());
    for (Elem g = 0; g < act.size(); ++g) {
        auto c = elementary_abelian_coords(p, 3, g);
        act[g] = psi(p, c[0], c[1], c[2]);
    }
    return make_module(GModule::from_action(fp3, p, 3, std::move(act)));
}

/// A' over F_p^3, with action psi'.
inline ModulePtr psi_prime_module(const GroupPtr& fp3, std::uint32_t p) {
    if (fp3->order() != std::size_t(p) * p * p) throw InputError("psi_prime_module needs F_p^3");
    std::vector<Mat> act(fp3->order());
    for (Elem g = 0; g < act.size(); ++g) {
        auto c = elementary_abelian_coords(p, 3, g);
        act[g] = psi_prime(p, c[0], c[1], c[2]);
    }
    return make_module(GModule::from_action(fp3, p, 3, std::move(act)));
}

/// The extension class representative eps as a 2-cochain of F_p^3 with values in (A, psi).
inline Cochain extension_cochain(const ModulePtr& a_module) {
    const auto p = a_module->modulus();
    return Cochain::from_function(a_module, 2, [p](std::span<const Elem> t) {
        auto g = elementary_abelian_coords(p, 3, t[0]);
        auto h = elementary_abelian_coords(p, 3, t[1]);
        return extension_cocycle(p, g, h);
    });
}

}  // namespace massey
