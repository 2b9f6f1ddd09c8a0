// Edge and tile geometry of the Hat family: the five directed edge types,
// meta-tile boundary polygons parametrized by a shape vector, the named
// shapes, and the 13-edge Hat polygon.

#ifndef CAPFAM_SHAPES_HPP
#define CAPFAM_SHAPES_HPP

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "ring.hpp"

namespace capfam {

enum class EdgeType { A = 0, B = 1, X = 2, F = 3, L = 4 };

char edge_label(EdgeType e);
EdgeType edge_from_label(char c);

// L is the only non-directional edge: as a chain, r^3 L = -L.
bool edge_directional(EdgeType e);

// Displacements of the five basic edges (A, B, X, F, L). Exact ring values
// are carried when the shape is representable in Q(xi, phi); the complex
// values are always present.
struct ShapeVector {
    std::array<std::complex<double>, 5> disp{};
    std::array<std::optional<RingElement>, 5> exact{};

    std::complex<double> operator[](EdgeType e) const {
        return disp[static_cast<int>(e)];
    }
    // Closure defect A - (1+xi^5)X - (xi+xi^2)F - (1+xi^5)L; zero for every
    // realizable shape (and A = B).
    std::complex<double> closure_defect() const;
};

enum class TileType { T = 0, H = 1, P = 2, F = 3 };
char tile_label(TileType t);
TileType tile_from_label(char c);

struct EdgeToken {
    EdgeType edge;
    int rot;   // power of xi
    int sign;  // +1 or -1
};

struct MetaTileOutline {
    TileType type;
    std::vector<EdgeToken> tokens;
    std::vector<std::complex<double>> vertices;  // one per token, closed polygon
};

// Named shape vectors, in the rotated frame used for the CAP coordinates.
enum class ShapeName { Chevron, Hat, Turtle, Comet, CAP, Key };
ShapeName shape_name_from_string(const std::string& s);  // throws on unknown
ShapeVector named_shape(ShapeName name);

// Two-parameter family frame: A = B = (xi+xi^2) a + 3ib, X = F = xi(a+ib),
// L = 2ib. Throws on (a, b) = (0, 0).
ShapeVector family_shape(double alpha, double beta);

// Boundary token sequences: parse the `TILE <name> : <±edge>^<k>` records.
// With no argument, returns the built-in copy of data/tile_outlines.txt.
const std::array<std::vector<EdgeToken>, 4>& outline_tokens();
std::array<std::vector<EdgeToken>, 4> parse_outline_tokens(const std::string& text);
const std::string& outline_data_text();

// Realize a tile boundary: vertex v0 = 0, each token (E, k, s) advances by
// s * xi^k * shape.E, all additionally rotated by xi^rotation.
// Throws if the shape's closure defect exceeds 1e-9.
MetaTileOutline tile_boundary(TileType t, const ShapeVector& s, int rotation = 0);

// Exact realization of a tile boundary for ring-representable shapes:
// vertex list in Z[xi, phi] coordinates.
std::vector<RingElement> tile_boundary_exact(TileType t, const ShapeVector& s,
                                             int rotation = 0);

// The 13 displacements of the Hat polygon in the (alpha, beta) frame.
std::vector<std::complex<double>> hat_polygon(double alpha, double beta);

// Shoelace area of a closed polygon given by its vertices.
double polygon_area(const std::vector<std::complex<double>>& v);

}  // namespace capfam

#endif
