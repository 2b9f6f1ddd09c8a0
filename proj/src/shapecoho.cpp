#include "shapecoho.hpp"

#include <cmath>
#include <stdexcept>

namespace capfam {

namespace {

const RingElement& lambda_plus() {   // phi^2 = 1 + phi
    static const RingElement v(1, 1);
    return v;
}
const RingElement& lambda_minus() {  // phi^-2 = 2 - phi
    static const RingElement v(2, -1);
    return v;
}

RingElement normalizer(const RingElement& lambda) {
    // (3 - 2 xi) lambda + (3 xi - 2)
    return (RingElement(3) - RingElement(2) * re_xi(1)) * lambda +
           (RingElement(3) * re_xi(1) - RingElement(2));
}

}  // namespace

std::array<std::complex<double>, 2> CochainClass::reduced() const {
    return {mu[0] + 0.5 * mu[2], mu[1]};
}

std::optional<std::array<RingElement, 2>> CochainClass::reduced_exact() const {
    if (!exact[0] || !exact[1] || !exact[2]) return std::nullopt;
    return std::array<RingElement, 2>{*exact[0] + RingElement(Rat(1, 2)) * *exact[2],
                                      *exact[1]};
}

CochainClass shape_class(const ShapeVector& s) {
    if (std::abs(s.closure_defect()) > 1e-9)
        throw std::invalid_argument("shape_class: shape vector violates closure");
    CochainClass c;
    c.mu = {s.disp[2], s.disp[3], s.disp[4]};  // (X, F, L)
    for (int i = 0; i < 3; i++)
        if (s.exact[i + 2]) c.exact[i] = s.exact[i + 2];
    return c;
}

std::array<RingElement, 2> eigen_inner_exact(const std::array<RingElement, 2>& r) {
    std::array<RingElement, 2> out;
    const RingElement xi = re_xi(1);
    out[0] = r[0] * (lambda_plus() - xi) + r[1] * xi;
    out[1] = r[0] * (lambda_minus() - xi) + r[1] * xi;
    return out;
}

std::array<std::complex<double>, 2> eigen_inner(const CochainClass& c) {
    auto r = c.reduced();
    const std::complex<double> xi = re_xi(1).direct();
    const double lp = lambda_plus().direct().real();
    const double lm = lambda_minus().direct().real();
    return {r[0] * (lp - xi) + r[1] * xi, r[0] * (lm - xi) + r[1] * xi};
}

std::array<std::complex<double>, 2> eigen_decompose(const CochainClass& c) {
    auto inner = eigen_inner(c);
    return {inner[0] / normalizer(lambda_plus()).direct(),
            inner[1] / normalizer(lambda_minus()).direct()};
}

std::array<std::complex<double>, 2> ell(int which) {
    const std::complex<double> xi = re_xi(1).direct();
    double l = (which == 0 ? lambda_plus() : lambda_minus()).direct().real();
    return {l - xi, 2.0};
}

std::array<RingElement, 2> sigma_tilde_action_exact(
    const std::array<RingElement, 2>& r) {
    const RingElement xi = re_xi(1);
    RingElement m11 = RingElement(2) + re_xi(5);
    return {r[0] * m11 + r[1] * xi, r[0] * RingElement(2) + r[1] * xi};
}

std::array<std::complex<double>, 2> sigma_tilde_action(
    const std::array<std::complex<double>, 2>& r) {
    const std::complex<double> xi = re_xi(1).direct();
    const std::complex<double> m11 = 2.0 + re_xi(5).direct();
    return {r[0] * m11 + r[1] * xi, r[0] * 2.0 + r[1] * xi};
}

RingElement conjugacy_factor(ShapeName name) {
    const RingElement xi = re_xi(1), phi = re_phi(), s5 = re_sqrt5();
    const RingElement pmx = phi - xi;        // phi - xi
    const RingElement pmx5 = phi - re_xi(5); // phi - xi^5
    switch (name) {
        case ShapeName::Chevron: return s5;
        case ShapeName::Hat:
            return RingElement(Rat(1, 4)) * re_xi(2) * s5 * pmx * pmx * pmx;
        case ShapeName::Turtle: return xi * pmx;
        case ShapeName::Comet: return RingElement(Rat(1, 2)) * s5 * pmx5;
        case ShapeName::CAP: return re_one();
        case ShapeName::Key: return re_one();  // shape class equals the CAP's
    }
    throw std::invalid_argument("conjugacy_factor: unknown shape");
}

std::vector<EigenTableRow> eigen_table() {
    std::vector<EigenTableRow> rows;
    auto add = [&rows](const std::string& name, std::array<RingElement, 2> mu) {
        rows.push_back({name, mu, eigen_inner_exact(mu)});
    };
    const RingElement xi5 = re_xi(5), phi = re_phi(), one = re_one();
    add("Chevron", {one, one});
    add("Hat", {RingElement(Rat(3, 2)), one});
    add("Turtle", {RingElement(Rat(1, 2)) * (RingElement(3) + xi5), one});
    // The Comet row is quoted in the xi^-1-rotated frame.
    add("Comet", {one + xi5, one});
    add("CAP", {phi + one, phi + re_xi(1)});
    return rows;
}

namespace {

// Column-style Hermite reduction of integral ring elements; returns a
// Z-basis of their span in the (1, phi, xi, phi xi) coordinate lattice.
std::vector<std::array<long, 4>> z_basis(const std::vector<RingElement>& gens) {
    std::vector<std::array<long, 4>> cols;
    for (const auto& g : gens) {
        std::array<long, 4> v;
        for (int i = 0; i < 4; i++) {
            const Rat& q = g.coeffs()[i];
            if (q.get_den() != 1)
                throw std::invalid_argument("return_module: non-integral generator");
            v[i] = q.get_num().get_si();
        }
        cols.push_back(v);
    }
    std::vector<std::array<long, 4>> basis;
    for (int row = 0; row < 4; row++) {
        // Reduce all columns against each other on this row.
        while (true) {
            int piv = -1;
            for (size_t j = 0; j < cols.size(); j++) {
                if (cols[j][row] == 0) continue;
                if (piv < 0 || std::llabs(cols[j][row]) < std::llabs(cols[piv][row]))
                    piv = static_cast<int>(j);
            }
            if (piv < 0) break;
            bool done = true;
            for (size_t j = 0; j < cols.size(); j++) {
                if (static_cast<int>(j) == piv || cols[j][row] == 0) continue;
                long q = cols[j][row] / cols[piv][row];
                for (int i = 0; i < 4; i++) cols[j][i] -= q * cols[piv][i];
                if (cols[j][row] != 0) done = false;
            }
            if (done) {
                basis.push_back(cols[piv]);
                cols.erase(cols.begin() + piv);
                break;
            }
        }
    }
    return basis;
}

bool in_span(const std::vector<std::array<long, 4>>& basis, const RingElement& x) {
    // Solve the 4xr rational system and require an integral solution.
    int r = static_cast<int>(basis.size());
    std::vector<std::vector<Rat>> m(4, std::vector<Rat>(r + 1));
    for (int i = 0; i < 4; i++) {
        for (int j = 0; j < r; j++) m[i][j] = basis[j][i];
        m[i][r] = x.coeffs()[i];
    }
    int row = 0;
    std::vector<int> pivot_col;
    for (int col = 0; col < r && row < 4; col++) {
        int p = -1;
        for (int i = row; i < 4; i++)
            if (m[i][col] != 0) { p = i; break; }
        if (p < 0) continue;
        std::swap(m[p], m[row]);
        Rat pv = m[row][col];
        for (int j = 0; j <= r; j++) m[row][j] /= pv;
        for (int i = 0; i < 4; i++) {
            if (i == row || m[i][col] == 0) continue;
            Rat f = m[i][col];
            for (int j = 0; j <= r; j++) m[i][j] -= f * m[row][j];
        }
        pivot_col.push_back(col);
        row++;
    }
    for (int i = row; i < 4; i++)
        if (m[i][r] != 0) return false;
    for (int i = 0; i < row; i++)
        if (m[i][r].get_den() != 1) return false;
    return true;
}

}  // namespace

ReturnModuleDescription return_module(const ShapeVector& s) {
    for (const auto& e : s.exact)
        if (!e) throw std::invalid_argument("return_module: shape not ring-exact");
    const RingElement u = re_one() + re_xi(1);  // 1 + xi
    std::vector<RingElement> gens;
    for (int k = 0; k < 6; k++) {
        RingElement rot = re_xi(k);
        gens.push_back(u * rot * RingElement(2) * *s.exact[2]);  // 2(1+xi)X
        gens.push_back(u * rot * *s.exact[3]);                   // (1+xi)F
        gens.push_back(u * rot * *s.exact[4]);                   // (1+xi)L
    }
    auto basis = z_basis(gens);
    ReturnModuleDescription d;
    d.rank = static_cast<int>(basis.size());
    for (const auto& b : basis)
        d.generators.push_back(RingElement(b[0], b[1], b[2], b[3]));
    if (d.rank == 2) {
        // Equality with (1+xi)Z[xi]: generators inside, and the two lattice
        // generators of (1+xi)Z[xi] inside the span.
        bool inside = true;
        for (const auto& g : d.generators) {
            auto q = divide_exact(g, u);
            if (!q || q->b() != 0 || q->d() != 0) inside = false;
        }
        d.lattice_rank2 = inside && in_span(basis, u) && in_span(basis, u * re_xi(1));
    }
    if (d.rank == 4) {
        bool inside = true;
        for (const auto& g : d.generators)
            if (!divide_exact(g, re_t0())) inside = false;
        bool covers = true;
        for (const RingElement& b :
             {re_one(), re_phi(), re_xi(1), re_phi_xi(1)})
            if (!in_span(basis, re_t0() * b)) covers = false;
        d.cap_module = inside && covers;
    }
    return d;
}

std::vector<DualModuleIdentity> dual_module_identities() {
    const RingElement u = re_one() + re_xi(1);
    const RingElement pmx = re_phi() - re_xi(1);
    const RingElement pmx5 = re_phi() - re_xi(5);
    const RingElement s5 = re_sqrt5();  // 2 phi - 1
    std::vector<DualModuleIdentity> out;
    // Each identity is the stated equality multiplied through by 6 sqrt5,
    // with sqrt5 carried exactly as 2 phi - 1.
    out.push_back({"Chevron", pmx5,
                   RingElement(2) * u == pmx5 * u * pmx});
    out.push_back({"Hat", pmx * pmx,
                   u * pmx * pmx * pmx == (pmx * pmx) * (u * pmx)});
    out.push_back({"Turtle", s5, s5 * u * pmx == s5 * (u * pmx)});
    out.push_back({"Comet", pmx5 * pmx5,
                   RingElement(2) * u * pmx5 == (pmx5 * pmx5) * (u * pmx)});
    return out;
}

double spectrum_rotation(double alpha, double beta) {
    if (alpha == 0.0 && beta == 0.0)
        throw std::invalid_argument("spectrum_rotation: degenerate parameters");
    const double s5 = std::sqrt(5.0), s3 = std::sqrt(3.0);
    return std::arg(std::complex<double>(0.5 * s5 * (alpha + s3 * beta),
                                         0.5 * (beta - s3 * alpha)));
}

bool reflection_distinguishable(double alpha, double beta) {
    double a = spectrum_rotation(alpha, beta);
    return std::abs(std::sin(6.0 * a)) > 1e-9;
}

}  // namespace capfam
