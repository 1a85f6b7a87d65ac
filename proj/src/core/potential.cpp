#include "atomforge/core/potential.hpp"

#include <stdexcept>
#include <unordered_map>

namespace atomforge {

double EvalResult::max_force(const std::vector<bool>& frozen) const {
    double best = 0.0;
    for (Eigen::Index i = 0; i < forces.rows(); ++i) {
        if (!frozen.empty() && frozen[static_cast<std::size_t>(i)]) continue;
        best = std::max(best, forces.row(i).norm());
    }
    return best;
}

std::vector<int> Potential::type_ids(const Structure& s) const {
    std::unordered_map<std::string, int> lut;
    const auto& els = elements();
    for (std::size_t t = 0; t < els.size(); ++t) lut[els[t]] = static_cast<int>(t);
    std::vector<int> ids(s.species.size());
    for (std::size_t i = 0; i < s.species.size(); ++i) {
        auto it = lut.find(s.species[i]);
        if (it == lut.end())
            throw std::invalid_argument("potential has no coverage for species '" + s.species[i] + "'");
        ids[i] = it->second;
    }
    return ids;
}

EvalResult evaluate(const Structure& s, const Potential& pot) {
    NeighborList nl = build_neighbors(s, pot.cutoff(), 0.0);
    return pot.evaluate(s, nl);
}

} // namespace atomforge
