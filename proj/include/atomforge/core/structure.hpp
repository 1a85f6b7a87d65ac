#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "atomforge/core/types.hpp"

namespace atomforge {

// Periodic atomic configuration. Cell rows are the cell vectors in Angstrom;
// positions are Cartesian. frozen atoms are excluded from relaxation.
struct Structure {
    Mat3 cell = Mat3::Identity();
    MatX3 positions;
    std::vector<std::string> species;
    std::array<bool, 3> pbc{true, true, true};
    std::vector<bool> frozen;

    Eigen::Index natoms() const { return positions.rows(); }
    double volume() const { return cell.determinant(); }

    Vec3 to_frac(const Vec3& cart) const;
    Vec3 to_cart(const Vec3& frac) const;

    // Shortest vector from a to b under minimum image along periodic axes.
    Vec3 min_image(const Vec3& from, const Vec3& to) const;

    // Wrap positions into the cell along periodic axes (free axes untouched).
    void wrap();

    void validate() const;  // det(cell) > 0, finite positions, sizes agree
};

enum class Crystal { BCC, FCC };

// Oriented supercell request. Orientation rows are integer Miller direction
// vectors; cell vector k of the product is lattice_constant * orientation[k].
struct LatticeSpec {
    Crystal crystal = Crystal::BCC;
    double lattice_constant = 1.0;
    Eigen::Matrix3i orientation = Eigen::Matrix3i::Identity();
    IVec3 repeats{1, 1, 1};
    std::string base_species = "A";
};

// Alloy composition: element -> fraction (summing to 1) plus the seed that
// fixes the random site assignment.
struct Composition {
    std::vector<std::pair<std::string, double>> fractions;
    std::uint64_t seed = 0;

    void validate() const;
    static Composition parse(const std::string& text, std::uint64_t seed);  // "Nb0.25Mo0.75"
    std::string label() const;
};

Structure build_lattice(const LatticeSpec& spec);

// Deterministic random solid solution: exact largest-remainder species counts,
// seeded uniform shuffle over sites.
Structure assign_species(const Structure& structure, const Composition& composition);

// Exact species counts used by assign_species (largest remainder, ties broken
// by element order).
std::vector<long> species_counts(const Composition& composition, long natoms);

// Extended-XYZ I/O. The comment line carries Lattice="..." and pbc="...".
std::string to_extxyz(const Structure& s, const std::string& comment = "");
Structure from_extxyz(const std::string& text);
void write_extxyz(const Structure& s, const std::string& path, const std::string& comment = "");
Structure read_extxyz(const std::string& path);

// Atomic-style data file (triclinic box with tilt factors) for interop with
// common MD codes.
std::string to_atomic_data(const Structure& s, const std::vector<std::string>& type_order);

} // namespace atomforge
