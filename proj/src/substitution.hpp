// The meta-tile substitution (fusion) system: rule loading, patch
// generation on exact control points, count matrix and frequencies,
// return-vector detection, empirical densities, and the coincidence
// estimator.

#ifndef CAPFAM_SUBSTITUTION_HPP
#define CAPFAM_SUBSTITUTION_HPP

#include <array>
#include <string>
#include <vector>

#include "ring.hpp"
#include "shapes.hpp"

namespace capfam {

struct PlacedTile {
    TileType type;
    int rotation;          // 0..5, power of xi
    RingElement position;  // control-point location, exact
};

struct Patch {
    std::vector<PlacedTile> tiles;
    int level = 0;
};

struct RuleEntry {
    TileType child;
    int r;          // rotation increment
    RingElement d;  // displacement D: child cp = phi^2 * cp + xi^rho * D
};

struct SubstitutionRule {
    std::array<RingElement, 4> control;            // control-point offset per type
    std::array<std::vector<RuleEntry>, 4> members; // constituents per type
};

// Parse `CONTROL <tile> : a b c d` / `MEMBER <tile> : <child> <r> : a b c d`
// records. Throws on malformed input or counts inconsistent with the count
// matrix.
SubstitutionRule parse_rule(const std::string& text);
const std::string& rule_data_text();  // built-in copy of data/substitution_rule.txt
const SubstitutionRule& load_rule();

// A single seed tile with control point at the origin.
Patch seed_patch(TileType t = TileType::H, int rotation = 0);

// One substitution step: each tile at control point y with rotation rho is
// replaced by its constituents at phi^2*y + xi^rho*D with rotation rho+r.
// Output is canonically sorted; duplicate control points abort.
Patch substitute(const Patch& p, const SubstitutionRule& rule);
Patch iterate_substitution(const Patch& p, const SubstitutionRule& rule, int n);

// Rows/columns ordered (T, H, P, F): entry (i, j) counts type-i constituents
// of a type-j supertile.
std::array<std::array<long, 4>, 4> count_matrix();
// Tile counts of sigma^n applied to a single seed of the given type.
std::array<long, 4> count_vector(TileType seed, int n);

// Exact tile frequencies (5/3-phi, 1/3, 2phi-3, 2-phi) as ring elements in
// Q(phi), and the exact tile-area coefficients v_i = (sqrt3/4)*(a + b*phi).
std::array<RingElement, 4> frequencies();
std::array<RingElement, 4> tile_area_coefficients();
double tile_area(TileType t, const ShapeVector& s);

// Geometry of a placed tile: the outline anchor is cp - xi^rot * control.
RingElement tile_anchor(const PlacedTile& t, const SubstitutionRule& rule);
std::vector<std::complex<double>> tile_polygon(const PlacedTile& t,
                                               const ShapeVector& s,
                                               const SubstitutionRule& rule);

// All translations t between identically-typed, identically-rotated local
// configurations of radius `radius` occurring in the patch (at most
// `max_results` distinct values).
std::vector<RingElement> return_vectors(const Patch& p, double radius,
                                        size_t max_results = 64);

// (number of control points) / (area of the union of tiles), multiplied by
// |t0|^2 = 6(2+3phi) to express the density in t0-rescaled coordinates.
double empirical_density(const Patch& p);

// Area fraction of tiles of the reference tiling that exactly coincide with
// the tiling translated by phi^(2n) * t, over the guaranteed-covered region.
// t must lie in the return module t0*Z[xi,phi].
double coincidence_fraction(const RingElement& t, int n, int patch_level = 7);

// Serialization: CSV rows (type, rotation, a, b, c, d) and an SVG rendering
// (orange T, blue H, green P, purple F) with control points.
std::string patch_csv(const Patch& p);
std::string patch_svg(const Patch& p, const ShapeVector& s);

}  // namespace capfam

#endif
