#include "sdec/hodge.hpp"

#include "sdec/geometry.hpp"
#include "sdec/signed_dual.hpp"

namespace sdec {

const char* to_string(HodgeMode mode) { return mode == HodgeMode::signed_volumes ? "signed" : "unsigned"; }

HodgeStar hodge_star(const CircumcentricDual& dual, int p, HodgeMode mode)
{
    const SimplicialComplex& cx = dual.complex();
    const DualVolumes vols = dual.dual_volumes(p);
    const std::vector<double>& numer =
        mode == HodgeMode::signed_volumes ? vols.signed_volumes : vols.unsigned_volumes;

    HodgeStar star;
    star.p = p;
    star.mode = mode;
    star.entries.reserve(numer.size());
    for (std::size_t i = 0; i < numer.size(); ++i)
        star.entries.push_back(numer[i] / simplex_volume(cx.vertex_points(p, i)));
    return star;
}

HodgeStar hodge_star(const SimplicialComplex& complex, int p, HodgeMode mode)
{
    return hodge_star(CircumcentricDual(complex), p, mode);
}

std::vector<std::size_t> validate_hodge(const HodgeStar& star)
{
    std::vector<std::size_t> bad;
    for (std::size_t i = 0; i < star.entries.size(); ++i)
        if (!(star.entries[i] > 0.0)) bad.push_back(i);
    return bad;
}

} // namespace sdec
