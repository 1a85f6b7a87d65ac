#pragma once

#include <memory>
#include <string>
#include <vector>

#include "atomforge/core/neighbors.hpp"
#include "atomforge/core/structure.hpp"
#include "atomforge/core/types.hpp"

namespace atomforge {

// Energy, forces and virial stress of one configuration. Stress is in
// eV/A^3 here; interfaces that leave the physics core convert to GPa.
struct EvalResult {
    double energy = 0.0;
    MatX3 forces;
    Mat3 stress = Mat3::Zero();

    double max_force(const std::vector<bool>& frozen = {}) const;
};

class Potential {
public:
    virtual ~Potential() = default;

    virtual const std::vector<std::string>& elements() const = 0;
    virtual double cutoff() const = 0;

    // Evaluate with a caller-provided neighbor list (must cover cutoff()).
    virtual EvalResult evaluate(const Structure& s, const NeighborList& nl) const = 0;

    // Map species labels to type indices; throws on uncovered species.
    std::vector<int> type_ids(const Structure& s) const;
};

// Convenience entry point: builds a fresh neighbor list and evaluates.
EvalResult evaluate(const Structure& s, const Potential& pot);

using PotentialPtr = std::shared_ptr<const Potential>;

} // namespace atomforge
