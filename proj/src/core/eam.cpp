#include "atomforge/core/eam.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace atomforge {

namespace {

// Whitespace tokenizer that remembers the source line of every token, so
// parse errors can name the exact line.
class TokenStream {
public:
    explicit TokenStream(std::istream& in) {
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            lines_.push_back(line);
            std::istringstream ls(line);
            std::string tok;
            while (ls >> tok) tokens_.emplace_back(tok, lineno);
        }
        last_line_ = lineno;
    }

    std::string raw_line(int idx) const { return lines_.at(static_cast<std::size_t>(idx)); }
    int line_count() const { return last_line_; }

    bool exhausted() const { return pos_ >= tokens_.size(); }
    int current_line() const {
        return pos_ < tokens_.size() ? tokens_[pos_].second : last_line_;
    }

    std::string next_token(const std::string& what) {
        if (exhausted())
            throw std::runtime_error("setfl: " + what + " truncated at line " + std::to_string(last_line_));
        return tokens_[pos_++].first;
    }

    double next_double(const std::string& what) {
        int line = current_line();
        std::string tok = next_token(what);
        try {
            std::size_t used = 0;
            double v = std::stod(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            return v;
        } catch (const std::exception&) {
            throw std::runtime_error("setfl: non-numeric entry '" + tok + "' in " + what + " at line " +
                                     std::to_string(line));
        }
    }

    long next_long(const std::string& what) {
        int line = current_line();
        std::string tok = next_token(what);
        try {
            std::size_t used = 0;
            long v = std::stol(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            return v;
        } catch (const std::exception&) {
            throw std::runtime_error("setfl: non-integer entry '" + tok + "' in " + what + " at line " +
                                     std::to_string(line));
        }
    }

private:
    std::vector<std::pair<std::string, int>> tokens_;
    std::vector<std::string> lines_;
    std::size_t pos_ = 0;
    int last_line_ = 0;
};

} // namespace

EamTables parse_eam_setfl(std::istream& in) {
    std::string header[3];
    for (auto& h : header)
        if (!std::getline(in, h)) throw std::runtime_error("setfl: missing comment lines (need 3)");

    TokenStream ts(in);
    EamTables t;

    long ne = ts.next_long("element count");
    if (ne < 1 || ne > 16)
        throw std::runtime_error("setfl: element count " + std::to_string(ne) + " out of range at line " +
                                 std::to_string(ts.current_line()));
    for (long e = 0; e < ne; ++e) t.elements.push_back(ts.next_token("element name"));

    t.nrho = static_cast<int>(ts.next_long("nrho"));
    t.drho = ts.next_double("drho");
    t.nr = static_cast<int>(ts.next_long("nr"));
    t.dr = ts.next_double("dr");
    t.cutoff = ts.next_double("cutoff");
    if (t.nrho < 2 || t.nr < 2) throw std::runtime_error("setfl: nrho and nr must each be >= 2");
    if (t.drho <= 0.0 || t.dr <= 0.0 || t.cutoff <= 0.0)
        throw std::runtime_error("setfl: drho, dr and cutoff must be positive");

    for (long e = 0; e < ne; ++e) {
        const std::string who = "element block " + t.elements[static_cast<std::size_t>(e)];
        ts.next_long(who + " atomic number");
        t.mass.push_back(ts.next_double(who + " mass"));
        ts.next_double(who + " lattice constant");
        ts.next_token(who + " lattice type");
        std::vector<double> f(static_cast<std::size_t>(t.nrho));
        for (auto& v : f) v = ts.next_double(who + " embedding table");
        std::vector<double> rho(static_cast<std::size_t>(t.nr));
        for (auto& v : rho) v = ts.next_double(who + " density table");
        t.embedding.push_back(std::move(f));
        t.density.push_back(std::move(rho));
    }

    for (long i = 0; i < ne; ++i)
        for (long j = 0; j <= i; ++j) {
            const std::string who = "pair block (" + t.elements[static_cast<std::size_t>(i)] + "," +
                                    t.elements[static_cast<std::size_t>(j)] + ")";
            std::vector<double> rphi(static_cast<std::size_t>(t.nr));
            for (auto& v : rphi) v = ts.next_double(who);
            t.rphi.push_back(std::move(rphi));
        }

    return t;
}

EamTables parse_eam_setfl_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open potential file: " + path);
    return parse_eam_setfl(f);
}

std::string to_setfl(const EamTables& t, const std::string& comment) {
    std::ostringstream os;
    os.precision(16);
    os << (comment.empty() ? "tabulated eam/alloy model" : comment) << "\n\n\n";
    os << t.elements.size();
    for (const auto& e : t.elements) os << " " << e;
    os << "\n";
    os << t.nrho << " " << t.drho << " " << t.nr << " " << t.dr << " " << t.cutoff << "\n";
    for (std::size_t e = 0; e < t.elements.size(); ++e) {
        os << (e + 1) << " " << (t.mass.size() > e ? t.mass[e] : 1.0) << " 1.0 none\n";
        for (std::size_t k = 0; k < t.embedding[e].size(); ++k)
            os << t.embedding[e][k] << ((k + 1) % 5 == 0 ? "\n" : " ");
        if (t.embedding[e].size() % 5 != 0) os << "\n";
        for (std::size_t k = 0; k < t.density[e].size(); ++k)
            os << t.density[e][k] << ((k + 1) % 5 == 0 ? "\n" : " ");
        if (t.density[e].size() % 5 != 0) os << "\n";
    }
    for (std::size_t i = 0; i < t.elements.size(); ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            const auto& block = t.rphi[t.pair_index(i, j)];
            for (std::size_t k = 0; k < block.size(); ++k)
                os << block[k] << ((k + 1) % 5 == 0 ? "\n" : " ");
            if (block.size() % 5 != 0) os << "\n";
        }
    return os.str();
}

EamPotential::EamPotential(EamTables tables) : tables_(std::move(tables)) {
    const std::size_t ne = tables_.elements.size();
    if (tables_.embedding.size() != ne || tables_.density.size() != ne)
        throw std::invalid_argument("eam: table count does not match element count");
    if (tables_.rphi.size() != ne * (ne + 1) / 2)
        throw std::invalid_argument("eam: pair block count does not match element count");
    for (std::size_t e = 0; e < ne; ++e) {
        if (static_cast<int>(tables_.embedding[e].size()) != tables_.nrho)
            throw std::invalid_argument("eam: embedding table length mismatch for " + tables_.elements[e]);
        if (static_cast<int>(tables_.density[e].size()) != tables_.nr)
            throw std::invalid_argument("eam: density table length mismatch for " + tables_.elements[e]);
        f_.emplace_back(0.0, tables_.drho, tables_.embedding[e]);
        rho_.emplace_back(0.0, tables_.dr, tables_.density[e]);
    }
    for (const auto& block : tables_.rphi) {
        if (static_cast<int>(block.size()) != tables_.nr)
            throw std::invalid_argument("eam: pair table length mismatch");
        rphi_.emplace_back(0.0, tables_.dr, block);
    }
}

double EamPotential::embedding_energy(int type, double rho) const {
    return f_[static_cast<std::size_t>(type)].value(rho);
}

double EamPotential::density_value(int type, double r) const {
    return rho_[static_cast<std::size_t>(type)].value(r);
}

double EamPotential::pair_energy(int type_a, int type_b, double r) const {
    return rphi_[tables_.pair_index(static_cast<std::size_t>(type_a), static_cast<std::size_t>(type_b))].value(r) / r;
}

EvalResult EamPotential::evaluate(const Structure& s, const NeighborList& nl) const {
    const auto ids = type_ids(s);
    const Eigen::Index n = s.natoms();
    const double rc2 = tables_.cutoff * tables_.cutoff;

    EvalResult out;
    out.forces = MatX3::Zero(n, 3);

    // Pass 1: host densities.
    std::vector<double> rho(static_cast<std::size_t>(n), 0.0);
    for (const auto& p : nl.pairs) {
        Vec3 rvec = s.positions.row(p.j).transpose() + nl.shift_of(p) - s.positions.row(p.i).transpose();
        double r2 = rvec.squaredNorm();
        if (r2 > rc2) continue;
        if (r2 < 1e-12)
            throw std::runtime_error("eam: overlapping atoms " + std::to_string(p.i) + "," + std::to_string(p.j));
        double r = std::sqrt(r2);
        rho[static_cast<std::size_t>(p.i)] += rho_[static_cast<std::size_t>(ids[static_cast<std::size_t>(p.j)])].value(r);
        rho[static_cast<std::size_t>(p.j)] += rho_[static_cast<std::size_t>(ids[static_cast<std::size_t>(p.i)])].value(r);
    }

    // Embedding energy in canonical atom order (reduction order is geometric,
    // not index-based).
    double energy = 0.0;
    std::vector<double> dF(static_cast<std::size_t>(n));
    for (std::int32_t a : nl.atom_order) {
        double v, d;
        f_[static_cast<std::size_t>(ids[static_cast<std::size_t>(a)])].eval(rho[static_cast<std::size_t>(a)], v, d);
        energy += v;
        dF[static_cast<std::size_t>(a)] = d;
    }

    // Pass 2: pair energy plus forces through both the pair term and the
    // density gradients.
    Mat3 stress = Mat3::Zero();
    for (const auto& p : nl.pairs) {
        Vec3 rvec = s.positions.row(p.j).transpose() + nl.shift_of(p) - s.positions.row(p.i).transpose();
        double r2 = rvec.squaredNorm();
        if (r2 > rc2) continue;
        double r = std::sqrt(r2);
        int ti = ids[static_cast<std::size_t>(p.i)], tj = ids[static_cast<std::size_t>(p.j)];

        double rphi_v, rphi_d;
        rphi_[tables_.pair_index(static_cast<std::size_t>(ti), static_cast<std::size_t>(tj))].eval(r, rphi_v, rphi_d);
        double phi = rphi_v / r;
        double dphi = (rphi_d - phi) / r;

        double rho_i_d = rho_[static_cast<std::size_t>(tj)].derivative(r);  // contribution to rho_i
        double rho_j_d = rho_[static_cast<std::size_t>(ti)].derivative(r);  // contribution to rho_j

        energy += phi;
        double dedr = dphi + dF[static_cast<std::size_t>(p.i)] * rho_i_d + dF[static_cast<std::size_t>(p.j)] * rho_j_d;
        double g = dedr / r;
        Vec3 f_i = g * rvec;
        out.forces.row(p.i) += f_i.transpose();
        out.forces.row(p.j) -= f_i.transpose();
        stress += g * (rvec * rvec.transpose());
    }

    out.energy = energy;
    out.stress = stress / s.volume();
    return out;
}

PotentialPtr eam_model(EamTables tables) {
    return std::make_shared<EamPotential>(std::move(tables));
}

} // namespace atomforge
