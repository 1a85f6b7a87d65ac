#pragma once

#include <string>
#include <vector>

#include "atomforge/core/potential.hpp"
#include "atomforge/core/spline.hpp"

namespace atomforge {

// Tabulated EAM/alloy model: E = sum_i F(rho_i) + 1/2 sum_ij phi(r_ij),
// rho_i = sum_j rho_tj(r_ij). Tables follow the setfl layout: per-element
// embedding F(rho) and density rho(r), and r*phi(r) per unordered pair.
struct EamTables {
    std::vector<std::string> elements;
    int nrho = 0;
    double drho = 0.0;
    int nr = 0;
    double dr = 0.0;
    double cutoff = 0.0;
    std::vector<std::vector<double>> embedding;  // per element, nrho values
    std::vector<std::vector<double>> density;    // per element, nr values
    std::vector<std::vector<double>> rphi;       // pair (i<=j) blocks in row-major order
    std::vector<double> mass;                    // per element (informational)

    std::size_t pair_index(std::size_t a, std::size_t b) const {
        if (a < b) std::swap(a, b);
        return a * (a + 1) / 2 + b;
    }
};

class EamPotential : public Potential {
public:
    explicit EamPotential(EamTables tables);

    const std::vector<std::string>& elements() const override { return tables_.elements; }
    double cutoff() const override { return tables_.cutoff; }
    EvalResult evaluate(const Structure& s, const NeighborList& nl) const override;

    const EamTables& tables() const { return tables_; }
    double embedding_energy(int type, double rho) const;
    double density_value(int type, double r) const;
    double pair_energy(int type_a, int type_b, double r) const;

private:
    EamTables tables_;
    std::vector<CubicSpline> f_;     // F(rho) per element
    std::vector<CubicSpline> rho_;   // rho(r) per element
    std::vector<CubicSpline> rphi_;  // r*phi(r) per pair (i<=j packed)
};

// Parse a setfl (.eam.alloy) stream: three comment lines, element count line,
// nrho/drho/nr/dr/cutoff line, per-element header + F + rho blocks, then
// r*phi blocks for each pair i<=j. Errors carry the offending line number.
EamTables parse_eam_setfl(std::istream& in);
EamTables parse_eam_setfl_file(const std::string& path);
std::string to_setfl(const EamTables& t, const std::string& comment = "");

PotentialPtr eam_model(EamTables tables);

} // namespace atomforge
