#include "unicrit/preimage.hpp"

namespace unicrit {

OneStepPreimages preimages_one_step(const UnicriticalMap& map, Complex w) {
    OneStepPreimages out;
    out.roots.reserve(static_cast<std::size_t>(map.degree));
    const Complex v = w - map.c;
    if (v == Complex{0.0, 0.0}) {
        out.multiple_root = true;
        out.roots.assign(static_cast<std::size_t>(map.degree), Complex{0.0, 0.0});
        return out;
    }
    for (int k = 0; k < map.degree; ++k)
        out.roots.push_back(branch_root(map.degree, v, k));
    return out;
}

}  // namespace unicrit
