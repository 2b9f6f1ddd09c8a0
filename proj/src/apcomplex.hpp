// Cellular chain complex of the meta-tile system with C6 group-ring
// coefficients, plus the substitution action on it.
//
// Bases: faces {T,H,P,F}, edges {A,B,X,F,L}, vertices {Xm,Xp,Fm}.
// Identifications: L = -r^3 L, Xp = r^2 Xp, Fm = r^2 Fm, so the expanded
// integer complex has dimensions 24 / 27 / 10.

#ifndef CAPFAM_APCOMPLEX_HPP
#define CAPFAM_APCOMPLEX_HPP

#include <gmpxx.h>
#include <array>
#include <complex>
#include <vector>

namespace capfam {

// Polynomial in r with integer coefficients, reduced mod r^6 - 1.
struct GPoly {
    std::array<long, 6> c{};
    static GPoly r(int k, long coeff = 1) {
        GPoly p;
        p.c[((k % 6) + 6) % 6] += coeff;
        return p;
    }
    static GPoly one(long coeff = 1) { return r(0, coeff); }
    GPoly operator+(const GPoly& o) const;
    GPoly operator-(const GPoly& o) const;
    GPoly operator*(const GPoly& o) const;
    bool operator==(const GPoly& o) const { return c == o.c; }
    std::complex<double> at_root(int k) const;  // evaluate at r = xi^k
};

struct GRMatrix {
    int rows = 0, cols = 0;
    std::vector<GPoly> e;  // row-major
    GRMatrix() = default;
    GRMatrix(int r, int c) : rows(r), cols(c), e(r * c) {}
    GPoly& at(int i, int j) { return e[i * cols + j]; }
    const GPoly& at(int i, int j) const { return e[i * cols + j]; }
    GRMatrix operator*(const GRMatrix& o) const;
    bool operator==(const GRMatrix& o) const;
};

using ZMatrix = std::vector<std::vector<mpz_class>>;
using CMatrix = std::vector<std::vector<std::complex<double>>>;

// How a cell class is identified with a rotate of itself: c = r^period ...
// Encodes the quotient Z[C6] / (1 - u r^shift) used for L, Xp, Fm.
struct CellQuotient {
    int dim = 6;       // number of surviving basis rotations r^0..r^{dim-1}
    int sign = +1;     // r^dim c = sign * c  (L: dim 3, sign -1; Xp/Fm: dim 2, sign +1)
};

// The fixed cell data of the complex.
std::vector<CellQuotient> face_quotients();    // 4 cells, all free
std::vector<CellQuotient> edge_quotients();    // A,B,X,F free; L has dim 3, sign -1
std::vector<CellQuotient> vertex_quotients();  // Xm free; Xp,Fm dim 2, sign +1

GRMatrix boundary1();  // 3x5, vertices x edges
GRMatrix boundary2();  // 5x4, edges x faces
GRMatrix sigma0();     // 3x3 on vertices
GRMatrix sigma1();     // 5x5 on edges
GRMatrix sigma2();     // 4x4 on faces

// Expand a group-ring matrix to an integer matrix over the quotient bases.
ZMatrix expand(const GRMatrix& m, const std::vector<CellQuotient>& row_q,
               const std::vector<CellQuotient>& col_q);

// Specialize r = xi^k (complex sixth root of unity) over the quotient bases.
CMatrix specialize(const GRMatrix& m, int k, const std::vector<CellQuotient>& row_q,
                   const std::vector<CellQuotient>& col_q);

// --- integer linear algebra -------------------------------------------------

struct SmithResult {
    ZMatrix U, D, V;  // U*A*V = D, U and V unimodular, D diagonal
    int rank = 0;
    std::vector<mpz_class> divisors;  // nonzero diagonal entries of D
};
SmithResult smith_normal_form(const ZMatrix& a);

int zrank(const ZMatrix& a);
ZMatrix zmul(const ZMatrix& a, const ZMatrix& b);
ZMatrix ztranspose(const ZMatrix& a);
mpz_class zdet(ZMatrix a);  // exact, fraction-free

// Integer kernel: columns form a basis of ker(a) over Z.
ZMatrix zkernel(const ZMatrix& a);

// --- cohomology -------------------------------------------------------------

struct AbelianGroup {
    int free_rank = 0;
    std::vector<mpz_class> torsion;  // invariant factors > 1
};

// Cochain cohomology of 0 -> C^0 -> C^1 -> C^2 -> 0 with differentials the
// transposes of boundary1/boundary2 (row-vector convention).
std::array<AbelianGroup, 3> integer_cohomology();

struct RepColumn {
    int k;                       // representation r = xi^k
    int faces, edges, vertices;  // specialized dimensions
    int rank_d2, rank_d1;
    int h0, h1, h2;
};
RepColumn rep_cohomology(int k);

// Induced substitution action on H^2: integer 10x10 matrix on the free part,
// its determinant, and complex eigenvalues per representation.
struct H2Action {
    ZMatrix action;  // 10x10
    mpz_class det;
    // eigenvalues of the induced action on the h2-dimensional quotient at r=xi^k
    std::vector<std::vector<std::complex<double>>> eigen_by_rep;  // index k=0..5
};
H2Action h2_action();

}  // namespace capfam

#endif
