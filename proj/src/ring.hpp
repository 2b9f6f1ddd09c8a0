// Exact arithmetic in Z[xi,phi], xi = exp(i*pi/3), phi = (1+sqrt5)/2.
//
// Elements are stored on the basis (1, phi, xi, phi*xi) with rational
// coefficients.  The defining relations are xi^2 = xi - 1 and
// phi^2 = phi + 1; products therefore stay inside the module.
//
// The Galois star map sends phi -> 1-phi and xi -> xi^5 = 1-xi; on
// coefficients (a,b,c,d) it acts as (a+b+c+d, -b-d, -c-d, d).

#ifndef CAPFAM_RING_HPP
#define CAPFAM_RING_HPP

#include <gmpxx.h>
#include <array>
#include <complex>
#include <optional>
#include <string>

namespace capfam {

using Rat = mpq_class;

struct PlanarPoint {
    double re = 0.0, im = 0.0;
};

class RingElement {
public:
    RingElement() : co_{} {}
    RingElement(Rat a, Rat b = 0, Rat c = 0, Rat d = 0)
        : co_{std::move(a), std::move(b), std::move(c), std::move(d)} {}
    static RingElement integer(long n) { return RingElement(Rat(n)); }

    const Rat& a() const { return co_[0]; }
    const Rat& b() const { return co_[1]; }
    const Rat& c() const { return co_[2]; }
    const Rat& d() const { return co_[3]; }
    const std::array<Rat, 4>& coeffs() const { return co_; }

    bool is_zero() const;
    bool is_integral() const;  // all four coefficients in Z

    RingElement operator+(const RingElement& o) const;
    RingElement operator-(const RingElement& o) const;
    RingElement operator-() const;
    RingElement operator*(const RingElement& o) const;
    RingElement& operator+=(const RingElement& o) { return *this = *this + o; }
    RingElement& operator-=(const RingElement& o) { return *this = *this - o; }
    RingElement& operator*=(const RingElement& o) { return *this = *this * o; }
    bool operator==(const RingElement& o) const { return co_ == o.co_; }
    bool operator!=(const RingElement& o) const { return !(*this == o); }

    RingElement star() const;

    std::complex<double> direct() const;    // phi real, xi on the unit circle
    std::complex<double> internal() const;  // direct() of star()
    PlanarPoint embed_direct() const;
    PlanarPoint embed_internal() const;

    std::string str() const;  // "a b c d" with exact rationals

private:
    std::array<Rat, 4> co_;  // coefficients of (1, phi, xi, phi xi)
};

// Named constants.
RingElement re_one();
RingElement re_phi();
RingElement re_xi(int k = 1);          // xi^k for any integer k
RingElement re_phi_xi(int k);          // phi * xi^k
RingElement re_sqrt5();                // 2*phi - 1
RingElement re_t0();                   // 3*phi + 2 - xi, the return-module generator

// q with q*y == x, if such q exists with *integer* coefficients.
// Division is done in the field Q(xi,phi) through the 4x4 regular
// representation of y over the rationals.
std::optional<RingElement> divide_exact(const RingElement& x, const RingElement& y);

// Same, but accepts any rational-coefficient quotient (field division).
std::optional<RingElement> divide_field(const RingElement& x, const RingElement& y);

}  // namespace capfam

#endif
