// Cut-and-project machinery: the rank-4 embedding lattice, the window
// iterated function system on the 24 tile classes, its attractor as a
// point cloud with a resolution certificate, model-set generation with
// three-valued membership, exact density identities, and the Hausdorff
// dimension of the fractal window boundary.
//
// Window coordinates are the star images of t0-rescaled positions: a tile
// at position x (always in t0 Z[xi,phi]) has window point (x / t0)^star.
// In these coordinates the union of the 24 class windows is a regular
// hexagon of edge phi.

#ifndef CAPFAM_CPS_HPP
#define CAPFAM_CPS_HPP

#include <array>
#include <complex>
#include <string>
#include <unordered_map>
#include <vector>

#include "ring.hpp"
#include "shapes.hpp"
#include "substitution.hpp"

namespace capfam {

// The Minkowski embedding {(x, x*)} of Z[xi,phi] in direct x internal
// space, with basis images of (1, phi, xi, phi xi).
struct EmbeddingLattice {
    // Rows map integer coordinates (a,b,c,d) to
    // (Re direct, Im direct, Re internal, Im internal).
    std::array<std::array<double, 4>, 4> basis;

    double covolume() const;  // |det| = 15/4
    // Recover integer coordinates of a lattice point (least-squares solve
    // plus rounding); residual of the rounded solution is returned.
    std::array<long, 4> coordinates(const std::array<double, 4>& point,
                                    double* residual = nullptr) const;
};
EmbeddingLattice embedding_lattice();

// (direct, internal) pair of an integral ring element. Throws on
// non-integral input.
std::array<double, 4> lift(const RingElement& x);

// One affine map of the window IFS: w -> (2-phi) w + offset, carrying
// window points of the source class into the destination class.
struct WindowMap {
    int src;  // class index, type*6 + rotation
    int dst;
    std::complex<double> offset;
};

struct WindowIFS {
    static constexpr int kClasses = 24;
    std::vector<WindowMap> maps;
    double contraction;  // 2 - phi

    int maps_from(TileType t) const;  // = member count of the t supertile
    int maps_into(TileType t) const;
};
WindowIFS window_ifs();

inline int window_class(TileType t, int rot) {
    return static_cast<int>(t) * 6 + ((rot % 6) + 6) % 6;
}

// IFS attractor approximation: one point cloud per class, deduplicated on
// a grid, with a certified resolution (Hausdorff distance bound between
// the cloud and the true attractor).
class WindowApprox {
  public:
    WindowApprox(std::array<std::vector<std::complex<double>>, 24> clouds,
                 int depth, double resolution);

    const std::vector<std::complex<double>>& cloud(int cls) const {
        return clouds_[cls];
    }
    int depth() const { return depth_; }
    double resolution() const { return resolution_; }
    std::size_t total_points() const;

    // Distance from w to the class cloud (or to the union for cls = -1),
    // capped at max_dist.
    double distance(std::complex<double> w, int cls = -1,
                    double max_dist = 0.5) const;

  private:
    std::array<std::vector<std::complex<double>>, 24> clouds_;
    int depth_;
    double resolution_;
    double cell_;
    // Per-class grid index (25th entry: union of all classes).
    struct Grid {
        std::unordered_map<long long, std::vector<std::complex<double>>> cells;
    };
    std::vector<Grid> grids_;
    long long cell_key(std::complex<double> w) const;
};

// Iterate the IFS from singleton seeds. Throws if the requested depth
// would exceed the memory budget.
WindowApprox attractor(int depth);

// Exact window areas in normalized units: the hexagon (3 sqrt3 / 2) phi^2
// and the per-class share hex * f_i / 6.
double window_total_area();
double window_class_area(TileType t);

enum class Membership { In, Uncertain, Out };

// Three-valued membership of a window point against the class cloud
// (cls = -1: the whole window): In when within the certified resolution of
// the cloud, Out when farther than resolution + epsilon, else Uncertain.
Membership window_membership(const WindowApprox& w, std::complex<double> p,
                             int cls = -1, double epsilon = 0.01);

// Integral ring elements with |direct| <= direct_radius and
// |internal| <= internal_radius.
std::vector<RingElement> enumerate_ring_points(double direct_radius,
                                               double internal_radius);

// Model set in rescaled units: y in Z[xi,phi], |y direct| <= radius,
// classified by the distance of y's internal image to the window cloud.
struct CutAndProject {
    std::vector<RingElement> inside;
    std::vector<RingElement> uncertain;
    std::vector<RingElement> outside;  // only points within the enum box
    double inside_density;             // |inside| / (pi radius^2)
};
CutAndProject cut_and_project(const WindowApprox& w, double radius,
                              double epsilon);

// rho1 = dens(lattice) * hexagon area and rho2 = |t0|^2 / (v . f), both as
// exact elements of Q(phi) with a factor sqrt3 taken out: rho = coeff * sqrt3.
struct DensityIdentity {
    RingElement rho1_coeff;  // (2/5) phi^2
    RingElement rho2_coeff;
    bool equal;
    double value;  // numeric density, 1.8138...
};
DensityIdentity density_identity();

// Fractal boundary data: subdivision matrix of the two boundary edge types
// under one inflation step, its spectral radius (2 + sqrt3), and the
// dimension log(rho) / (2 log phi).
struct HausdorffData {
    std::array<std::array<long, 2>, 2> matrix;
    double spectral_radius;
    double dimension;
};
HausdorffData hausdorff_dimension();                 // reads data/window_edges.txt
HausdorffData hausdorff_from_text(const std::string& text);
double dimension_from_radius(double rho);            // log(rho) / (2 log phi)

// Serialization: CSV of cloud points (class,type,rotation,re,im) and an SVG
// of the window with per-class colors.
std::string window_csv(const WindowApprox& w);
std::string window_svg(const WindowApprox& w);

}  // namespace capfam

#endif
