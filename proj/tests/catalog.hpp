#pragma once

// Small groups used throughout the tests, with the cochain conversions the
// oracles need.

#include <string>
#include <vector>

#include "massey/cohomology.hpp"
#include "massey/groups.hpp"
#include "oracles.hpp"

namespace catalog {

using namespace massey;

struct Named {
    std::string name;
    GroupPtr group;
};

/// Q8 as the 2-Sylow subgroup of SL_2(F_3).
inline GroupPtr quaternion8() {
    return from_matrix_generators(3, 2, {Mat(3, {{0, 2}, {1, 0}}), Mat(3, {{1, 1}, {1, 2}})}).group;
}

/// Every group of order at most 8, up to isomorphism.
inline std::vector<Named> groups_up_to_8() {
    std::vector<Named> out;
    for (std::size_t n = 1; n <= 8; ++n) out.push_back({"Z" + std::to_string(n), cyclic_group(n)});
    out.push_back({"Z2xZ2", elementary_abelian_group(2, 2)});
    out.push_back({"S3", dihedral_group(3)});
    out.push_back({"Z4xZ2", direct_product(*cyclic_group(4), *cyclic_group(2))});
    out.push_back({"Z2^3", elementary_abelian_group(2, 3)});
    out.push_back({"D4", dihedral_group(4)});
    out.push_back({"Q8", quaternion8()});
    return out;
}

inline std::vector<Named> groups_of_order_9() {
    return {{"Z9", cyclic_group(9)}, {"Z3xZ3", elementary_abelian_group(3, 2)}};
}

/// Built-in groups of order at most 16.
inline std::vector<Named> groups_up_to_16() {
    std::vector<Named> out = groups_up_to_8();
    for (const auto& g : groups_of_order_9()) out.push_back(g);
    for (std::size_t n = 10; n <= 16; ++n) out.push_back({"Z" + std::to_string(n), cyclic_group(n)});
    out.push_back({"Z2^4", elementary_abelian_group(2, 4)});
    out.push_back({"Z4xZ4", direct_product(*cyclic_group(4), *cyclic_group(4))});
    out.push_back({"Z8xZ2", direct_product(*cyclic_group(8), *cyclic_group(2))});
    for (std::size_t n = 5; n <= 8; ++n) out.push_back({"D" + std::to_string(n), dihedral_group(n)});
    return out;
}

inline oracle::Table table_of(const Cochain& c) { return c.raw(); }

inline Cochain cochain_of(const ModulePtr& m, std::size_t degree, const oracle::Table& t) {
    Vec v(m->modulus(), t.size());
    v.data() = t;
    return Cochain::from_vec(m, degree, v);
}

inline CohomClass character(const ModulePtr& m, const oracle::Table& t) { return make_class(cochain_of(m, 1, t)); }

}  // namespace catalog
