// Shape-deformation calculus: cochain classes on the mu-basis, the
// eigen-decomposition of shape classes, conjugacy factors, return modules
// and their duals, spectrum rotation angles, and the reflection
// distinguishability criterion.

#ifndef CAPFAM_SHAPECOHO_HPP
#define CAPFAM_SHAPECOHO_HPP

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "ring.hpp"
#include "shapes.hpp"

namespace capfam {

// A cochain class with complex coefficients (c1, c2, c3) on (mu1, mu2, mu3).
// The reduction mu1 ~ 2 mu3 yields the representative (c1 + c3/2, c2) on
// (mu1, mu2). Exact ring coefficients are carried when available.
struct CochainClass {
    std::array<std::complex<double>, 3> mu{};
    std::array<std::optional<RingElement>, 3> exact{};

    std::array<std::complex<double>, 2> reduced() const;
    std::optional<std::array<RingElement, 2>> reduced_exact() const;
};

// Mu-coordinates of a closed shape vector: (X, F, L). Throws if the closure
// defect exceeds 1e-9.
CochainClass shape_class(const ShapeVector& s);

// Inner products with the right eigenvectors r_lambda = (lambda - xi; xi)
// of the reduced substitution action, for lambda in {phi^2, phi^-2}.
std::array<std::complex<double>, 2> eigen_inner(const CochainClass& c);
std::array<RingElement, 2> eigen_inner_exact(const std::array<RingElement, 2>& reduced);

// Eigen-coefficients: (S . r_lambda) / ((3 - 2 xi) lambda + (3 xi - 2)).
// The class reconstructs as c+ * l_{phi^2} + c- * l_{phi^-2} with
// l_lambda = (lambda - xi, 2).
std::array<std::complex<double>, 2> eigen_decompose(const CochainClass& c);
std::array<std::complex<double>, 2> ell(int which);  // 0: phi^2, 1: phi^-2

// Reduced substitution action: right multiplication by
// [[2 + xi^5, 2], [xi, xi]] on (mu1, mu2) rows.
std::array<std::complex<double>, 2> sigma_tilde_action(
    const std::array<std::complex<double>, 2>& reduced);
std::array<RingElement, 2> sigma_tilde_action_exact(
    const std::array<RingElement, 2>& reduced);

// Conjugacy rescaling factor towards the CAP reference.
RingElement conjugacy_factor(ShapeName name);  // exact, sqrt5 = 2 phi - 1

// One row of the eigen-data table: exact reduced mu-coefficients and the
// two inner products, in the frame the table is quoted in.
struct EigenTableRow {
    std::string name;
    std::array<RingElement, 2> mu;     // reduced (mu1, mu2) coefficients
    std::array<RingElement, 2> inner;  // S.r_{phi^2}, S.r_{phi^-2}
};
std::vector<EigenTableRow> eigen_table();

// Description of the Z-module generated by the shape's return generators
// (1+xi)xi^k F, (1+xi)xi^k L, 2(1+xi)xi^k X.
struct ReturnModuleDescription {
    int rank = 0;                          // Z-rank (2 or 4)
    std::vector<RingElement> generators;   // Z-module basis (rank elements)
    bool lattice_rank2 = false;            // equals (1+xi)Z[xi]
    bool cap_module = false;               // equals t0 Z[xi,phi]
};
ReturnModuleDescription return_module(const ShapeVector& s);

// Exact verification of the four dual-module containment identities.
// Returns the multiplier for each of Chevron, Hat, Turtle, Comet and checks
// the identity in ring arithmetic (sqrt5 = 2 phi - 1).
struct DualModuleIdentity {
    std::string name;
    RingElement multiplier;
    bool exact;  // identity verified exactly
};
std::vector<DualModuleIdentity> dual_module_identities();

// arg( (sqrt5 (alpha + sqrt3 beta) + i (beta - sqrt3 alpha)) / 2 ), the
// rotation angle of the (alpha, beta) spectrum relative to the CAP.
double spectrum_rotation(double alpha, double beta);

// False exactly when the rotation angle is a multiple of pi/6, i.e. at
// beta/alpha in {sqrt3, (sqrt5 - 2)/sqrt3}; tolerance 1e-9 on sin(6 angle).
bool reflection_distinguishable(double alpha, double beta);

}  // namespace capfam

#endif
