#include "atomforge/core/structure.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "atomforge/core/random.hpp"

namespace atomforge {

Vec3 Structure::to_frac(const Vec3& cart) const {
    // positions are row vectors against the row-vector cell: x = f * cell
    return cell.transpose().partialPivLu().solve(cart);
}

Vec3 Structure::to_cart(const Vec3& frac) const {
    return cell.transpose() * frac;
}

Vec3 Structure::min_image(const Vec3& from, const Vec3& to) const {
    Vec3 d = to - from;
    Vec3 f = to_frac(d);
    for (int k = 0; k < 3; ++k) {
        if (pbc[k]) f[k] -= std::round(f[k]);
    }
    return to_cart(f);
}

void Structure::wrap() {
    for (Eigen::Index i = 0; i < natoms(); ++i) {
        Vec3 f = to_frac(positions.row(i).transpose());
        for (int k = 0; k < 3; ++k) {
            if (pbc[k]) f[k] -= std::floor(f[k]);
        }
        positions.row(i) = to_cart(f).transpose();
    }
}

void Structure::validate() const {
    if (cell.determinant() <= 0.0)
        throw std::invalid_argument("structure: cell determinant must be positive");
    if (!positions.allFinite())
        throw std::invalid_argument("structure: non-finite positions");
    if (static_cast<Eigen::Index>(species.size()) != natoms())
        throw std::invalid_argument("structure: species length mismatch");
    if (!frozen.empty() && static_cast<Eigen::Index>(frozen.size()) != natoms())
        throw std::invalid_argument("structure: frozen mask length mismatch");
}

namespace {

std::vector<Vec3> basis_for(Crystal crystal) {
    switch (crystal) {
        case Crystal::BCC:
            return {{0.0, 0.0, 0.0}, {0.5, 0.5, 0.5}};
        case Crystal::FCC:
            return {{0.0, 0.0, 0.0}, {0.5, 0.5, 0.0}, {0.5, 0.0, 0.5}, {0.0, 0.5, 0.5}};
    }
    throw std::logic_error("unknown crystal");
}

} // namespace

Structure build_lattice(const LatticeSpec& spec) {
    if (spec.lattice_constant <= 0.0)
        throw std::invalid_argument("build_lattice: lattice constant must be positive");
    if ((spec.repeats.array() < 1).any())
        throw std::invalid_argument("build_lattice: repeats must be >= 1");

    const Eigen::Matrix3i& m = spec.orientation;
    Eigen::Matrix3d md = m.cast<double>();
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (m.row(i).dot(m.row(j)) != 0)
                throw std::invalid_argument("build_lattice: orientation vectors must be pairwise orthogonal");
    const double det = md.determinant();
    if (det <= 0.0)
        throw std::invalid_argument("build_lattice: orientation must be right-handed (det > 0)");

    const double a = spec.lattice_constant;
    // One oriented unit cell in conventional-lattice units, before repeats.
    Eigen::Matrix3d unit = md;  // rows: cell vectors in units of a

    const auto basis = basis_for(spec.crystal);
    const long expected_per_cell = static_cast<long>(std::llround(det)) * static_cast<long>(basis.size());

    // Enumerate conventional cells in a box guaranteed to cover the oriented
    // cell, collect points with fractional coordinates in [0,1).
    int lo[3] = {0, 0, 0}, hi[3] = {0, 0, 0};
    for (int ci = 0; ci < 2; ++ci)
        for (int cj = 0; cj < 2; ++cj)
            for (int ck = 0; ck < 2; ++ck) {
                Vec3 corner = ci * unit.row(0).transpose() + cj * unit.row(1).transpose() +
                              ck * unit.row(2).transpose();
                for (int k = 0; k < 3; ++k) {
                    lo[k] = std::min(lo[k], static_cast<int>(std::floor(corner[k])) - 2);
                    hi[k] = std::max(hi[k], static_cast<int>(std::ceil(corner[k])) + 2);
                }
            }

    Eigen::Matrix3d unit_t_inv = unit.transpose().inverse();
    const double ftol = 1e-9;
    std::vector<Vec3> unit_points;
    for (int nx = lo[0]; nx <= hi[0]; ++nx)
        for (int ny = lo[1]; ny <= hi[1]; ++ny)
            for (int nz = lo[2]; nz <= hi[2]; ++nz)
                for (const Vec3& b : basis) {
                    Vec3 p(nx + b[0], ny + b[1], nz + b[2]);
                    Vec3 f = unit_t_inv * p;
                    bool inside = true;
                    for (int k = 0; k < 3; ++k) {
                        // half-open interval with tolerance: [0, 1)
                        if (f[k] < -ftol || f[k] >= 1.0 - ftol) { inside = false; break; }
                    }
                    if (inside) unit_points.push_back(f);
                }

    if (static_cast<long>(unit_points.size()) != expected_per_cell)
        throw std::invalid_argument("build_lattice: orientation incompatible with lattice periodicity (got " +
                                    std::to_string(unit_points.size()) + " points, expected " +
                                    std::to_string(expected_per_cell) + ")");

    // Deterministic ordering of the basis points within the oriented cell.
    std::sort(unit_points.begin(), unit_points.end(), [](const Vec3& x, const Vec3& y) {
        if (std::abs(x[0] - y[0]) > 1e-10) return x[0] < y[0];
        if (std::abs(x[1] - y[1]) > 1e-10) return x[1] < y[1];
        return x[2] < y[2];
    });

    Structure s;
    s.cell = a * unit;
    for (int k = 0; k < 3; ++k) s.cell.row(k) *= static_cast<double>(spec.repeats[k]);

    const long total = expected_per_cell * spec.repeats[0] * spec.repeats[1] * spec.repeats[2];
    s.positions.resize(total, 3);
    long idx = 0;
    for (int rx = 0; rx < spec.repeats[0]; ++rx)
        for (int ry = 0; ry < spec.repeats[1]; ++ry)
            for (int rz = 0; rz < spec.repeats[2]; ++rz)
                for (const Vec3& f : unit_points) {
                    Vec3 cart = a * unit.transpose() * (f + Vec3(rx, ry, rz));
                    s.positions.row(idx++) = cart.transpose();
                }
    s.species.assign(total, spec.base_species);
    s.frozen.assign(total, false);
    s.pbc = {true, true, true};
    s.wrap();
    return s;
}

void Composition::validate() const {
    if (fractions.empty())
        throw std::invalid_argument("composition: no elements");
    double sum = 0.0;
    for (const auto& [el, f] : fractions) {
        if (f < 0.0) throw std::invalid_argument("composition: negative fraction for " + el);
        sum += f;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("composition: fractions sum to " + std::to_string(sum) + ", expected 1");
}

Composition Composition::parse(const std::string& text, std::uint64_t seed) {
    Composition c;
    c.seed = seed;
    std::size_t i = 0;
    while (i < text.size()) {
        std::size_t j = i;
        while (j < text.size() && (std::isalpha(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
        if (j == i) throw std::invalid_argument("composition: expected element name at '" + text.substr(i) + "'");
        std::size_t k = j;
        while (k < text.size() && (std::isdigit(static_cast<unsigned char>(text[k])) || text[k] == '.')) ++k;
        if (k == j) throw std::invalid_argument("composition: expected fraction after '" + text.substr(i, j - i) + "'");
        c.fractions.emplace_back(text.substr(i, j - i), std::stod(text.substr(j, k - j)));
        i = k;
    }
    c.validate();
    return c;
}

std::string Composition::label() const {
    std::ostringstream os;
    for (const auto& [el, f] : fractions) {
        os << el;
        std::ostringstream num;
        num.precision(6);
        num << f;
        os << num.str();
    }
    return os.str();
}

std::vector<long> species_counts(const Composition& composition, long natoms) {
    composition.validate();
    const std::size_t ne = composition.fractions.size();
    std::vector<long> counts(ne);
    std::vector<std::pair<double, std::size_t>> remainders(ne);
    long assigned = 0;
    for (std::size_t e = 0; e < ne; ++e) {
        double exact = composition.fractions[e].second * static_cast<double>(natoms);
        counts[e] = static_cast<long>(std::floor(exact + 1e-12));
        remainders[e] = {exact - static_cast<double>(counts[e]), e};
        assigned += counts[e];
    }
    // Largest remainder first; ties go to the earlier element.
    std::stable_sort(remainders.begin(), remainders.end(),
                     [](const auto& x, const auto& y) { return x.first > y.first + 1e-15; });
    for (long r = 0; r < natoms - assigned; ++r)
        counts[remainders[static_cast<std::size_t>(r) % ne].second] += 1;
    return counts;
}

Structure assign_species(const Structure& structure, const Composition& composition) {
    const long n = static_cast<long>(structure.natoms());
    auto counts = species_counts(composition, n);

    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(n));
    for (std::size_t e = 0; e < counts.size(); ++e)
        labels.insert(labels.end(), static_cast<std::size_t>(counts[e]), composition.fractions[e].first);

    Rng rng(composition.seed);
    rng.shuffle(labels);

    Structure out = structure;
    out.species = std::move(labels);
    return out;
}

namespace {

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(16);
    os << v;
    return os.str();
}

} // namespace

std::string to_extxyz(const Structure& s, const std::string& comment) {
    std::ostringstream os;
    os << s.natoms() << "\n";
    os << "Lattice=\"";
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            os << format_double(s.cell(i, j));
            if (i != 2 || j != 2) os << " ";
        }
    os << "\" Properties=species:S:1:pos:R:3 pbc=\"" << (s.pbc[0] ? "T" : "F") << " "
       << (s.pbc[1] ? "T" : "F") << " " << (s.pbc[2] ? "T" : "F") << "\"";
    if (!comment.empty()) os << " comment=\"" << comment << "\"";
    os << "\n";
    for (Eigen::Index i = 0; i < s.natoms(); ++i) {
        os << s.species[static_cast<std::size_t>(i)];
        for (int j = 0; j < 3; ++j) os << " " << format_double(s.positions(i, j));
        os << "\n";
    }
    return os.str();
}

Structure from_extxyz(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("extxyz: missing atom count");
    const long n = std::stol(line);
    if (!std::getline(is, line)) throw std::runtime_error("extxyz: missing comment line");

    Structure s;
    auto find_quoted = [&line](const std::string& key) -> std::string {
        auto pos = line.find(key + "=\"");
        if (pos == std::string::npos) return {};
        auto start = pos + key.size() + 2;
        auto end = line.find('"', start);
        if (end == std::string::npos) throw std::runtime_error("extxyz: unterminated " + key);
        return line.substr(start, end - start);
    };

    std::string lat = find_quoted("Lattice");
    if (lat.empty()) throw std::runtime_error("extxyz: missing Lattice");
    {
        std::istringstream ls(lat);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (!(ls >> s.cell(i, j))) throw std::runtime_error("extxyz: bad Lattice");
    }
    std::string pbc = find_quoted("pbc");
    if (!pbc.empty()) {
        std::istringstream ps(pbc);
        std::string tok;
        for (int k = 0; k < 3 && ps >> tok; ++k) s.pbc[k] = (tok == "T" || tok == "true" || tok == "1");
    }

    s.positions.resize(n, 3);
    s.species.resize(static_cast<std::size_t>(n));
    s.frozen.assign(static_cast<std::size_t>(n), false);
    for (long i = 0; i < n; ++i) {
        if (!std::getline(is, line)) throw std::runtime_error("extxyz: truncated at atom " + std::to_string(i));
        std::istringstream as(line);
        if (!(as >> s.species[static_cast<std::size_t>(i)] >> s.positions(i, 0) >> s.positions(i, 1) >>
              s.positions(i, 2)))
            throw std::runtime_error("extxyz: bad atom line " + std::to_string(i));
    }
    s.validate();
    return s;
}

void write_extxyz(const Structure& s, const std::string& path, const std::string& comment) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << to_extxyz(s, comment);
}

Structure read_extxyz(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open: " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return from_extxyz(os.str());
}

std::string to_atomic_data(const Structure& s, const std::vector<std::string>& type_order) {
    // General triclinic box: requires the cell in lower-triangular form; we
    // rotate into it (energy-invariant) for export only.
    Eigen::HouseholderQR<Mat3> qr(s.cell.transpose());
    Mat3 r = qr.matrixQR().triangularView<Eigen::Upper>();
    Mat3 q = qr.householderQ();
    // Make diagonal of R positive.
    for (int k = 0; k < 3; ++k)
        if (r(k, k) < 0) { r.row(k) = -r.row(k); q.col(k) = -q.col(k); }
    Mat3 lower = r.transpose();  // rows are the rotated cell vectors

    std::map<std::string, int> type_id;
    for (std::size_t t = 0; t < type_order.size(); ++t) type_id[type_order[t]] = static_cast<int>(t) + 1;

    std::ostringstream os;
    os.precision(16);
    os << "# atomic data export\n\n";
    os << s.natoms() << " atoms\n" << type_order.size() << " atom types\n\n";
    os << 0.0 << " " << lower(0, 0) << " xlo xhi\n";
    os << 0.0 << " " << lower(1, 1) << " ylo yhi\n";
    os << 0.0 << " " << lower(2, 2) << " zlo zhi\n";
    os << lower(1, 0) << " " << lower(2, 0) << " " << lower(2, 1) << " xy xz yz\n\n";
    os << "Atoms # atomic\n\n";
    for (Eigen::Index i = 0; i < s.natoms(); ++i) {
        auto it = type_id.find(s.species[static_cast<std::size_t>(i)]);
        if (it == type_id.end())
            throw std::invalid_argument("atomic data export: species not in type order: " +
                                        s.species[static_cast<std::size_t>(i)]);
        Vec3 p = q.transpose() * s.positions.row(i).transpose();
        os << (i + 1) << " " << it->second << " " << p[0] << " " << p[1] << " " << p[2] << "\n";
    }
    return os.str();
}

} // namespace atomforge
