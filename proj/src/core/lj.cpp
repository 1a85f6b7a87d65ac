#include "atomforge/core/lj.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace atomforge {

namespace {

double lj_energy(double eps, double sigma, double r2) {
    double sr2 = sigma * sigma / r2;
    double sr6 = sr2 * sr2 * sr2;
    return 4.0 * eps * (sr6 * sr6 - sr6);
}

// dE/dr divided by r.
double lj_dedr_over_r(double eps, double sigma, double r2) {
    double sr2 = sigma * sigma / r2;
    double sr6 = sr2 * sr2 * sr2;
    return 24.0 * eps * (sr6 - 2.0 * sr6 * sr6) / r2;
}

} // namespace

LennardJones::LennardJones(std::map<std::pair<std::string, std::string>, LjPairParams> pairs, double cutoff)
    : cutoff_(cutoff) {
    if (cutoff <= 0.0) throw std::invalid_argument("lj: cutoff must be positive");
    std::set<std::string> els;
    for (const auto& [key, p] : pairs) {
        if (p.epsilon <= 0.0 || p.sigma <= 0.0)
            throw std::invalid_argument("lj: epsilon and sigma must be positive");
        if (cutoff <= p.sigma) throw std::invalid_argument("lj: cutoff must exceed sigma");
        els.insert(key.first);
        els.insert(key.second);
    }
    elements_.assign(els.begin(), els.end());
    const std::size_t nt = elements_.size();
    if (nt == 0) throw std::invalid_argument("lj: no pair entries");
    table_.assign(nt * nt, LjPairParams{-1.0, -1.0});
    for (const auto& [key, p] : pairs) {
        std::size_t a = static_cast<std::size_t>(type_of(key.first));
        std::size_t b = static_cast<std::size_t>(type_of(key.second));
        table_[a * nt + b] = p;
        table_[b * nt + a] = p;
    }
    for (std::size_t a = 0; a < nt; ++a)
        for (std::size_t b = 0; b < nt; ++b)
            if (table_[a * nt + b].epsilon < 0.0)
                throw std::invalid_argument("lj: missing pair entry for (" + elements_[a] + "," + elements_[b] + ")");
    shift_.resize(nt * nt);
    for (std::size_t k = 0; k < nt * nt; ++k)
        shift_[k] = lj_energy(table_[k].epsilon, table_[k].sigma, cutoff_ * cutoff_);
}

int LennardJones::type_of(const std::string& el) const {
    auto it = std::find(elements_.begin(), elements_.end(), el);
    if (it == elements_.end()) throw std::invalid_argument("lj: unknown element " + el);
    return static_cast<int>(it - elements_.begin());
}

double LennardJones::pair_energy_raw(const std::string& a, const std::string& b, double r) const {
    const auto& p = params(type_of(a), type_of(b));
    return lj_energy(p.epsilon, p.sigma, r * r);
}

double LennardJones::pair_energy_shifted(const std::string& a, const std::string& b, double r) const {
    if (r >= cutoff_) return 0.0;
    std::size_t ta = static_cast<std::size_t>(type_of(a)), tb = static_cast<std::size_t>(type_of(b));
    const auto& p = params(static_cast<int>(ta), static_cast<int>(tb));
    return lj_energy(p.epsilon, p.sigma, r * r) - shift_[ta * elements_.size() + tb];
}

EvalResult LennardJones::evaluate(const Structure& s, const NeighborList& nl) const {
    const auto ids = type_ids(s);
    const std::size_t nt = elements_.size();
    const double rc2 = cutoff_ * cutoff_;

    EvalResult out;
    out.forces = MatX3::Zero(s.natoms(), 3);
    Mat3 stress = Mat3::Zero();
    double energy = 0.0;

    for (const auto& p : nl.pairs) {
        Vec3 r = s.positions.row(p.j).transpose() + nl.shift_of(p) - s.positions.row(p.i).transpose();
        double r2 = r.squaredNorm();
        if (r2 > rc2) continue;
        if (r2 < 1e-12)
            throw std::runtime_error("lj: overlapping atoms " + std::to_string(p.i) + "," + std::to_string(p.j));
        std::size_t key = static_cast<std::size_t>(ids[static_cast<std::size_t>(p.i)]) * nt +
                          static_cast<std::size_t>(ids[static_cast<std::size_t>(p.j)]);
        const auto& prm = table_[key];
        energy += lj_energy(prm.epsilon, prm.sigma, r2) - shift_[key];
        double g = lj_dedr_over_r(prm.epsilon, prm.sigma, r2);  // E'(r)/r
        Vec3 f_i = g * r;                                       // force on i
        out.forces.row(p.i) += f_i.transpose();
        out.forces.row(p.j) -= f_i.transpose();
        stress += g * (r * r.transpose());
    }

    out.energy = energy;
    out.stress = stress / s.volume();
    return out;
}

PotentialPtr lj_model(const std::map<std::pair<std::string, std::string>, LjPairParams>& pairs, double cutoff) {
    return std::make_shared<LennardJones>(pairs, cutoff);
}

} // namespace atomforge
