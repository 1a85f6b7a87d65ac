#include "atomforge/core/neighbors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace atomforge {

namespace {

// Perpendicular width of the cell along axis k: V / |a_u x a_v|.
double perp_width(const Mat3& cell, int k) {
    Vec3 u = cell.row((k + 1) % 3).transpose();
    Vec3 v = cell.row((k + 2) % 3).transpose();
    return std::abs(cell.determinant()) / u.cross(v).norm();
}

struct BinGrid {
    Vec3 origin;
    double side = 1.0;
    int nx = 1, ny = 1, nz = 1;
    std::vector<std::vector<std::int32_t>> bins;

    void build(const MatX3& pos, double side_in) {
        side = side_in;
        Vec3 lo = pos.colwise().minCoeff().transpose();
        Vec3 hi = pos.colwise().maxCoeff().transpose();
        origin = lo;
        nx = std::max(1, static_cast<int>(std::floor((hi[0] - lo[0]) / side)) + 1);
        ny = std::max(1, static_cast<int>(std::floor((hi[1] - lo[1]) / side)) + 1);
        nz = std::max(1, static_cast<int>(std::floor((hi[2] - lo[2]) / side)) + 1);
        bins.assign(static_cast<std::size_t>(nx) * ny * nz, {});
        for (Eigen::Index i = 0; i < pos.rows(); ++i)
            bins[index_of(pos.row(i).transpose())].push_back(static_cast<std::int32_t>(i));
    }

    int clampi(double f, int n) const {
        int v = static_cast<int>(std::floor(f));
        return std::clamp(v, 0, n - 1);
    }

    std::size_t index_of(const Vec3& p) const {
        int ix = clampi((p[0] - origin[0]) / side, nx);
        int iy = clampi((p[1] - origin[1]) / side, ny);
        int iz = clampi((p[2] - origin[2]) / side, nz);
        return (static_cast<std::size_t>(ix) * ny + iy) * nz + iz;
    }

    template <typename F>
    void for_candidates(const Vec3& q, F&& fn) const {
        int cx = clampi((q[0] - origin[0]) / side, nx);
        int cy = clampi((q[1] - origin[1]) / side, ny);
        int cz = clampi((q[2] - origin[2]) / side, nz);
        for (int ix = std::max(0, cx - 1); ix <= std::min(nx - 1, cx + 1); ++ix)
            for (int iy = std::max(0, cy - 1); iy <= std::min(ny - 1, cy + 1); ++iy)
                for (int iz = std::max(0, cz - 1); iz <= std::min(nz - 1, cz + 1); ++iz)
                    for (std::int32_t j : bins[(static_cast<std::size_t>(ix) * ny + iy) * nz + iz])
                        fn(j);
    }
};

bool lex_positive(int sx, int sy, int sz) {
    if (sx != 0) return sx > 0;
    if (sy != 0) return sy > 0;
    return sz > 0;
}

} // namespace

bool NeighborList::needs_rebuild(const Structure& s) const {
    if (s.positions.rows() != built_positions.rows()) return true;
    const double limit2 = 0.25 * skin * skin;
    for (Eigen::Index i = 0; i < s.positions.rows(); ++i) {
        if ((s.positions.row(i) - built_positions.row(i)).squaredNorm() > limit2) return true;
    }
    return false;
}

NeighborList build_neighbors(const Structure& s, double cutoff, double skin) {
    s.validate();
    if (cutoff <= 0.0) throw std::invalid_argument("build_neighbors: cutoff must be positive");
    if (s.cell.determinant() < 1e-12) throw std::invalid_argument("build_neighbors: degenerate cell");

    const double rc = cutoff + skin;
    const double rc2 = rc * rc;
    const Eigen::Index n = s.natoms();

    NeighborList nl;
    nl.cutoff = cutoff;
    nl.skin = skin;
    nl.built_positions = s.positions;
    nl.built_cell = s.cell;
    if (n == 0) return nl;

    // Fractional spread of the configuration, for the image-shift range.
    Mat3 cell_t_inv = s.cell.transpose().inverse();
    Vec3 fmin = Vec3::Constant(1e300), fmax = Vec3::Constant(-1e300);
    for (Eigen::Index i = 0; i < n; ++i) {
        Vec3 f = cell_t_inv * s.positions.row(i).transpose();
        fmin = fmin.cwiseMin(f);
        fmax = fmax.cwiseMax(f);
    }

    int m[3];
    for (int k = 0; k < 3; ++k) {
        if (!s.pbc[k]) { m[k] = 0; continue; }
        double spread = std::max(1.0, fmax[k] - fmin[k]);
        m[k] = static_cast<int>(std::ceil(rc / perp_width(s.cell, k) + spread));
    }

    BinGrid grid;
    grid.build(s.positions, rc);
    Vec3 blo = s.positions.colwise().minCoeff().transpose().array() - rc;
    Vec3 bhi = s.positions.colwise().maxCoeff().transpose().array() + rc;

    for (int sx = -m[0]; sx <= m[0]; ++sx)
        for (int sy = -m[1]; sy <= m[1]; ++sy)
            for (int sz = -m[2]; sz <= m[2]; ++sz) {
                Vec3 shift = s.cell.transpose() * Vec3(sx, sy, sz);
                for (Eigen::Index i = 0; i < n; ++i) {
                    // Candidates j satisfy |p_j + shift - p_i| <= rc.
                    Vec3 q = s.positions.row(i).transpose() - shift;
                    if ((q.array() < blo.array()).any() || (q.array() > bhi.array()).any()) continue;
                    grid.for_candidates(q, [&](std::int32_t j) {
                        if (j < i) return;                       // mirrored occurrence covers it
                        if (j == static_cast<std::int32_t>(i) && !lex_positive(sx, sy, sz)) return;
                        Vec3 r = s.positions.row(j).transpose() + shift - s.positions.row(i).transpose();
                        if (r.squaredNorm() > rc2) return;
                        nl.pairs.push_back({static_cast<std::int32_t>(i), j,
                                            static_cast<std::int8_t>(sx), static_cast<std::int8_t>(sy),
                                            static_cast<std::int8_t>(sz)});
                    });
                }
            }

    // Canonical geometric orientation and ordering: independent of atom
    // indexing, so results are reproducible under same-species permutations.
    auto endpoint_a = [&](const NeighborPair& p) -> Vec3 { return s.positions.row(p.i).transpose(); };
    auto endpoint_b = [&](const NeighborPair& p) -> Vec3 {
        return s.positions.row(p.j).transpose() + s.cell.transpose() * Vec3(p.sx, p.sy, p.sz);
    };
    auto lex_less = [](const Vec3& a, const Vec3& b) {
        if (a[0] != b[0]) return a[0] < b[0];
        if (a[1] != b[1]) return a[1] < b[1];
        return a[2] < b[2];
    };
    for (auto& p : nl.pairs) {
        if (lex_less(endpoint_b(p), endpoint_a(p))) {
            std::swap(p.i, p.j);
            p.sx = static_cast<std::int8_t>(-p.sx);
            p.sy = static_cast<std::int8_t>(-p.sy);
            p.sz = static_cast<std::int8_t>(-p.sz);
        }
    }
    std::sort(nl.pairs.begin(), nl.pairs.end(), [&](const NeighborPair& x, const NeighborPair& y) {
        Vec3 ax = endpoint_a(x), ay = endpoint_a(y);
        if (lex_less(ax, ay)) return true;
        if (lex_less(ay, ax)) return false;
        Vec3 bx = endpoint_b(x), by = endpoint_b(y);
        return lex_less(bx, by);
    });

    nl.atom_order.resize(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) nl.atom_order[static_cast<std::size_t>(i)] = static_cast<std::int32_t>(i);
    std::sort(nl.atom_order.begin(), nl.atom_order.end(), [&](std::int32_t a, std::int32_t b) {
        return lex_less(s.positions.row(a).transpose(), s.positions.row(b).transpose());
    });

    return nl;
}

} // namespace atomforge
