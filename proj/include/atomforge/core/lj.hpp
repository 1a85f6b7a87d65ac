#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "atomforge/core/potential.hpp"

namespace atomforge {

struct LjPairParams {
    double epsilon = 1.0;  // eV
    double sigma = 1.0;    // A
};

// 12-6 Lennard-Jones, energy-shifted to zero at the cutoff. Forces are left
// unshifted; the resulting force step at r_c is far below the solver
// tolerances for r_c >= 2.5 sigma.
class LennardJones : public Potential {
public:
    LennardJones(std::map<std::pair<std::string, std::string>, LjPairParams> pairs, double cutoff);

    const std::vector<std::string>& elements() const override { return elements_; }
    double cutoff() const override { return cutoff_; }
    EvalResult evaluate(const Structure& s, const NeighborList& nl) const override;

    // Unshifted pair energy, mostly for tests and the bond-counting oracle.
    double pair_energy_raw(const std::string& a, const std::string& b, double r) const;
    double pair_energy_shifted(const std::string& a, const std::string& b, double r) const;

    const LjPairParams& params(int type_a, int type_b) const {
        return table_[static_cast<std::size_t>(type_a) * elements_.size() + static_cast<std::size_t>(type_b)];
    }

private:
    std::vector<std::string> elements_;
    std::vector<LjPairParams> table_;     // dense ntypes x ntypes
    std::vector<double> shift_;           // energy shift per type pair
    double cutoff_ = 0.0;
    int type_of(const std::string& el) const;
};

PotentialPtr lj_model(const std::map<std::pair<std::string, std::string>, LjPairParams>& pairs, double cutoff);

} // namespace atomforge
