#include "ring.hpp"

#include <sstream>
#include <stdexcept>

namespace capfam {

// 30 significant digits, so downstream 1e-9 tolerances never hinge on these.
static const double kPhi = 1.61803398874989484820458683437;
static const double kHalfSqrt3 = 0.866025403784438646763723170753;

bool RingElement::is_zero() const {
    for (const auto& q : co_)
        if (q != 0) return false;
    return true;
}

bool RingElement::is_integral() const {
    for (const auto& q : co_)
        if (q.get_den() != 1) return false;
    return true;
}

RingElement RingElement::operator+(const RingElement& o) const {
    return RingElement(co_[0] + o.co_[0], co_[1] + o.co_[1], co_[2] + o.co_[2],
                       co_[3] + o.co_[3]);
}

RingElement RingElement::operator-(const RingElement& o) const {
    return RingElement(co_[0] - o.co_[0], co_[1] - o.co_[1], co_[2] - o.co_[2],
                       co_[3] - o.co_[3]);
}

RingElement RingElement::operator-() const {
    return RingElement(-co_[0], -co_[1], -co_[2], -co_[3]);
}

RingElement RingElement::operator*(const RingElement& o) const {
    // Write x = p + q*xi with p = a + b*phi, q = c + d*phi in Z[phi].
    // Then (p1 + q1 xi)(p2 + q2 xi) = p1 p2 - q1 q2 + (p1 q2 + q1 p2 + q1 q2) xi
    // using xi^2 = xi - 1, and in Z[phi]: (a+b phi)(c+d phi) = ac+bd + (ad+bc+bd) phi.
    auto mul2 = [](const Rat& a, const Rat& b, const Rat& c, const Rat& d,
                   Rat& u, Rat& v) {
        u = a * c + b * d;
        v = a * d + b * c + b * d;
    };
    Rat pp0, pp1, qq0, qq1, pq0, pq1, qp0, qp1;
    mul2(co_[0], co_[1], o.co_[0], o.co_[1], pp0, pp1);
    mul2(co_[2], co_[3], o.co_[2], o.co_[3], qq0, qq1);
    mul2(co_[0], co_[1], o.co_[2], o.co_[3], pq0, pq1);
    mul2(co_[2], co_[3], o.co_[0], o.co_[1], qp0, qp1);
    return RingElement(pp0 - qq0, pp1 - qq1, pq0 + qp0 + qq0, pq1 + qp1 + qq1);
}

RingElement RingElement::star() const {
    return RingElement(co_[0] + co_[1] + co_[2] + co_[3], -co_[1] - co_[3],
                       -co_[2] - co_[3], co_[3]);
}

std::complex<double> RingElement::direct() const {
    const std::complex<double> xi(0.5, kHalfSqrt3);
    double a = co_[0].get_d(), b = co_[1].get_d();
    double c = co_[2].get_d(), d = co_[3].get_d();
    return (a + b * kPhi) + (c + d * kPhi) * xi;
}

std::complex<double> RingElement::internal() const { return star().direct(); }

PlanarPoint RingElement::embed_direct() const {
    auto z = direct();
    return {z.real(), z.imag()};
}

PlanarPoint RingElement::embed_internal() const {
    auto z = internal();
    return {z.real(), z.imag()};
}

std::string RingElement::str() const {
    std::ostringstream os;
    os << co_[0] << " " << co_[1] << " " << co_[2] << " " << co_[3];
    return os.str();
}

RingElement re_one() { return RingElement(1); }
RingElement re_phi() { return RingElement(0, 1); }

RingElement re_xi(int k) {
    k %= 6;
    if (k < 0) k += 6;
    switch (k) {
        case 0: return RingElement(1);
        case 1: return RingElement(0, 0, 1);
        case 2: return RingElement(-1, 0, 1);
        case 3: return RingElement(-1);
        case 4: return RingElement(0, 0, -1);
        default: return RingElement(1, 0, -1);
    }
}

RingElement re_phi_xi(int k) { return re_phi() * re_xi(k); }
RingElement re_sqrt5() { return RingElement(-1, 2); }
RingElement re_t0() { return RingElement(2, 3, -1, 0); }

std::optional<RingElement> divide_field(const RingElement& x, const RingElement& y) {
    if (y.is_zero()) throw std::domain_error("division by zero in Q(xi,phi)");
    // Columns of the regular representation: y*1, y*phi, y*xi, y*phi*xi.
    std::array<RingElement, 4> col = {y * re_one(), y * re_phi(), y * re_xi(1),
                                      y * re_phi_xi(1)};
    // Solve the 4x4 rational system col * q = x by Gaussian elimination.
    Rat m[4][5];
    for (int i = 0; i < 4; i++) {
        for (int j = 0; j < 4; j++) m[i][j] = col[j].coeffs()[i];
        m[i][4] = x.coeffs()[i];
    }
    for (int i = 0; i < 4; i++) {
        int piv = -1;
        for (int r = i; r < 4; r++)
            if (m[r][i] != 0) { piv = r; break; }
        if (piv < 0) return std::nullopt;  // cannot happen: y != 0 is invertible
        for (int j = 0; j <= 4; j++) std::swap(m[i][j], m[piv][j]);
        Rat p = m[i][i];
        for (int j = i; j <= 4; j++) m[i][j] /= p;
        for (int r = 0; r < 4; r++) {
            if (r == i || m[r][i] == 0) continue;
            Rat f = m[r][i];
            for (int j = i; j <= 4; j++) m[r][j] -= f * m[i][j];
        }
    }
    return RingElement(m[0][4], m[1][4], m[2][4], m[3][4]);
}

std::optional<RingElement> divide_exact(const RingElement& x, const RingElement& y) {
    auto q = divide_field(x, y);
    if (!q || !q->is_integral()) return std::nullopt;
    return q;
}

}  // namespace capfam
