#pragma once

#include <cstddef>
#include <vector>

#include "sdec/complex.hpp"

namespace sdec {

class CircumcentricDual;

enum class HodgeMode { signed_volumes, unsigned_volumes };

const char* to_string(HodgeMode mode);

// Diagonal of the discrete Hodge star on p-cochains: dual volume over primal
// volume, one entry per p-simplex. Vertices have primal volume 1.
struct HodgeStar {
    int p = 0;
    std::vector<double> entries;
    HodgeMode mode = HodgeMode::signed_volumes;
};

HodgeStar hodge_star(const SimplicialComplex& complex, int p, HodgeMode mode = HodgeMode::signed_volumes);
HodgeStar hodge_star(const CircumcentricDual& dual, int p, HodgeMode mode = HodgeMode::signed_volumes);

// Indices of entries <= 0. Empty iff the star defines an inner product.
std::vector<std::size_t> validate_hodge(const HodgeStar& star);

} // namespace sdec
