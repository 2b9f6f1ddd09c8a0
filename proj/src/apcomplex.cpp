#include "apcomplex.hpp"

#include <Eigen/Dense>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace capfam {

GPoly GPoly::operator+(const GPoly& o) const {
    GPoly p;
    for (int i = 0; i < 6; i++) p.c[i] = c[i] + o.c[i];
    return p;
}

GPoly GPoly::operator-(const GPoly& o) const {
    GPoly p;
    for (int i = 0; i < 6; i++) p.c[i] = c[i] - o.c[i];
    return p;
}

GPoly GPoly::operator*(const GPoly& o) const {
    GPoly p;
    for (int i = 0; i < 6; i++)
        for (int j = 0; j < 6; j++) p.c[(i + j) % 6] += c[i] * o.c[j];
    return p;
}

std::complex<double> GPoly::at_root(int k) const {
    std::complex<double> s = 0;
    for (int i = 0; i < 6; i++) {
        double th = M_PI / 3.0 * ((i * k) % 6);
        s += double(c[i]) * std::complex<double>(std::cos(th), std::sin(th));
    }
    return s;
}

GRMatrix GRMatrix::operator*(const GRMatrix& o) const {
    assert(cols == o.rows);
    GRMatrix p(rows, o.cols);
    for (int i = 0; i < rows; i++)
        for (int j = 0; j < o.cols; j++) {
            GPoly s;
            for (int k = 0; k < cols; k++) s = s + at(i, k) * o.at(k, j);
            p.at(i, j) = s;
        }
    return p;
}

bool GRMatrix::operator==(const GRMatrix& o) const {
    return rows == o.rows && cols == o.cols && e == o.e;
}

std::vector<CellQuotient> face_quotients() { return {{}, {}, {}, {}}; }
std::vector<CellQuotient> edge_quotients() {
    return {{}, {}, {}, {}, {3, -1}};  // A,B,X,F free; r^3 L = -L
}
std::vector<CellQuotient> vertex_quotients() {
    return {{}, {2, +1}, {2, +1}};  // Xm free; r^2 Xp = Xp, r^2 Fm = Fm
}

namespace {
GPoly R(int k, long c = 1) { return GPoly::r(k, c); }
}  // namespace

GRMatrix boundary1() {
    GRMatrix m(3, 5);
    // rows Xm, Xp, Fm; cols A, B, X, F, L
    m.at(0, 0) = R(5) - R(3);
    m.at(0, 1) = R(0) - R(2);
    m.at(0, 2) = R(0, -1);
    m.at(0, 4) = R(0) - R(3);
    m.at(1, 2) = R(0);
    m.at(1, 3) = R(0);
    m.at(2, 3) = R(0, -1);
    return m;
}

GRMatrix boundary2() {
    GRMatrix m(5, 4);
    // rows A, B, X, F, L; cols T, H, P, F
    m.at(0, 0) = R(1) + R(5);
    m.at(0, 1) = R(0, -1);
    m.at(0, 2) = R(5);
    m.at(1, 0) = R(0, -1);
    m.at(1, 1) = R(1) + R(5);
    m.at(1, 2) = R(5, -1);
    m.at(1, 3) = R(5, -1);
    m.at(2, 2) = (R(1) - R(5)) * (R(0) + R(3));
    m.at(2, 3) = R(4) - R(2);
    m.at(3, 3) = R(1) - R(3);
    m.at(4, 3) = R(4) + R(5);
    return m;
}

GRMatrix sigma0() {
    GRMatrix m(3, 3);
    m.at(0, 0) = R(5);
    m.at(2, 1) = R(4);
    m.at(1, 2) = R(3);
    return m;
}

GRMatrix sigma1() {
    GRMatrix m(5, 5);
    m.at(0, 1) = R(0);
    m.at(1, 0) = R(0);
    m.at(2, 0) = R(0) - R(4);
    m.at(2, 1) = R(1) - R(3);
    m.at(2, 2) = R(0) + R(5) - R(3);
    m.at(2, 3) = R(0) - R(3);
    m.at(3, 2) = R(4, -1);
    m.at(3, 3) = R(4, -1);
    m.at(4, 2) = R(0);
    m.at(4, 3) = R(0);
    m.at(4, 4) = R(5);
    return m;
}

GRMatrix sigma2() {
    GRMatrix m(4, 4);
    m.at(0, 1) = R(5);
    m.at(1, 0) = R(0);
    m.at(1, 1) = R(0, 2) + R(4);
    m.at(1, 2) = R(0) + R(5);
    m.at(1, 3) = R(0) + R(5);
    m.at(2, 1) = R(0) + R(1) + R(2);
    m.at(2, 2) = R(1);
    m.at(2, 3) = R(1);
    m.at(3, 1) = R(0) + R(2) + R(4);
    m.at(3, 2) = R(2) + R(5);
    m.at(3, 3) = R(0) + R(2) + R(5);
    return m;
}

// Reduce a length-6 coefficient vector (over r^0..r^5 of one cell) to the
// quotient basis r^0..r^{dim-1} using r^dim c = sign * c.
static void reduce_coeffs(const CellQuotient& q, const long in[6], long out[6]) {
    for (int i = 0; i < q.dim; i++) out[i] = 0;
    for (int k = 0; k < 6; k++) {
        long s = 1;
        int t = k;
        while (t >= q.dim) {
            t -= q.dim;
            s *= q.sign;
        }
        out[t] += s * in[k];
    }
}

ZMatrix expand(const GRMatrix& m, const std::vector<CellQuotient>& row_q,
               const std::vector<CellQuotient>& col_q) {
    assert((int)row_q.size() == m.rows && (int)col_q.size() == m.cols);
    std::vector<int> roff(m.rows + 1, 0), coff(m.cols + 1, 0);
    for (int i = 0; i < m.rows; i++) roff[i + 1] = roff[i] + row_q[i].dim;
    for (int j = 0; j < m.cols; j++) coff[j + 1] = coff[j] + col_q[j].dim;
    ZMatrix z(roff[m.rows], std::vector<mpz_class>(coff[m.cols], 0));
    for (int i = 0; i < m.rows; i++)
        for (int j = 0; j < m.cols; j++) {
            const GPoly& p = m.at(i, j);
            for (int k = 0; k < col_q[j].dim; k++) {
                // image of r^k * (cell j): coefficient of r^t (cell i) is p[t-k]
                long full[6];
                for (int t = 0; t < 6; t++) full[t] = p.c[((t - k) % 6 + 6) % 6];
                long red[6];
                reduce_coeffs(row_q[i], full, red);
                for (int t = 0; t < row_q[i].dim; t++)
                    z[roff[i] + t][coff[j] + k] = red[t];
            }
        }
    return z;
}

// A quotiented cell survives at r = xi^k iff xi^{k*dim} equals its sign.
static bool survives(const CellQuotient& q, int k) {
    if (q.dim == 6) return true;
    int pw = (k * q.dim) % 6;
    int sgn = (pw == 3) ? -1 : (pw == 0 ? 1 : 0);
    return sgn == q.sign;
}

CMatrix specialize(const GRMatrix& m, int k, const std::vector<CellQuotient>& row_q,
                   const std::vector<CellQuotient>& col_q) {
    std::vector<int> ri, cj;
    for (int i = 0; i < m.rows; i++)
        if (survives(row_q[i], k)) ri.push_back(i);
    for (int j = 0; j < m.cols; j++)
        if (survives(col_q[j], k)) cj.push_back(j);
    CMatrix z(ri.size(), std::vector<std::complex<double>>(cj.size()));
    for (size_t i = 0; i < ri.size(); i++)
        for (size_t j = 0; j < cj.size(); j++)
            z[i][j] = m.at(ri[i], cj[j]).at_root(k);
    return z;
}

// --- integer linear algebra -------------------------------------------------

static ZMatrix zidentity(int n) {
    ZMatrix id(n, std::vector<mpz_class>(n, 0));
    for (int i = 0; i < n; i++) id[i][i] = 1;
    return id;
}

ZMatrix zmul(const ZMatrix& a, const ZMatrix& b) {
    int n = a.size(), m = b[0].size(), k = b.size();
    ZMatrix c(n, std::vector<mpz_class>(m, 0));
    for (int i = 0; i < n; i++)
        for (int l = 0; l < k; l++) {
            if (a[i][l] == 0) continue;
            for (int j = 0; j < m; j++) c[i][j] += a[i][l] * b[l][j];
        }
    return c;
}

ZMatrix ztranspose(const ZMatrix& a) {
    if (a.empty()) return {};
    ZMatrix t(a[0].size(), std::vector<mpz_class>(a.size()));
    for (size_t i = 0; i < a.size(); i++)
        for (size_t j = 0; j < a[0].size(); j++) t[j][i] = a[i][j];
    return t;
}

SmithResult smith_normal_form(const ZMatrix& a) {
    SmithResult s;
    int n = a.size(), m = n ? a[0].size() : 0;
    s.D = a;
    s.U = zidentity(n);
    s.V = zidentity(m);
    auto& D = s.D;
    auto& U = s.U;
    auto& V = s.V;

    auto row_op = [&](int i, int j, const mpz_class& f) {  // row_i -= f*row_j
        for (int t = 0; t < m; t++) D[i][t] -= f * D[j][t];
        for (int t = 0; t < n; t++) U[i][t] -= f * U[j][t];
    };
    auto col_op = [&](int i, int j, const mpz_class& f) {  // col_i -= f*col_j
        for (int t = 0; t < n; t++) D[t][i] -= f * D[t][j];
        for (int t = 0; t < m; t++) V[t][i] -= f * V[t][j];
    };
    auto row_swap = [&](int i, int j) {
        std::swap(D[i], D[j]);
        std::swap(U[i], U[j]);
    };
    auto col_swap = [&](int i, int j) {
        for (int t = 0; t < n; t++) std::swap(D[t][i], D[t][j]);
        for (int t = 0; t < m; t++) std::swap(V[t][i], V[t][j]);
    };

    int t = 0;
    while (t < n && t < m) {
        // locate smallest nonzero entry in the remaining block
        int pi = -1, pj = -1;
        mpz_class best;
        for (int i = t; i < n; i++)
            for (int j = t; j < m; j++) {
                if (D[i][j] == 0) continue;
                mpz_class v = abs(D[i][j]);
                if (pi < 0 || v < best) {
                    best = v;
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break;  // all zero: done
        row_swap(t, pi);
        col_swap(t, pj);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (int i = t + 1; i < n; i++)
                if (D[i][t] != 0) {
                    mpz_class q = D[i][t] / D[t][t];
                    row_op(i, t, q);
                    if (D[i][t] != 0) {  // remainder smaller than pivot: swap up
                        row_swap(t, i);
                        clean = false;
                    }
                }
            for (int j = t + 1; j < m; j++)
                if (D[t][j] != 0) {
                    mpz_class q = D[t][j] / D[t][t];
                    col_op(j, t, q);
                    if (D[t][j] != 0) {
                        col_swap(t, j);
                        clean = false;
                    }
                }
        }
        t++;
    }
    // make diagonal positive
    for (int i = 0; i < std::min(n, m); i++)
        if (D[i][i] < 0) {
            for (int j = 0; j < m; j++) D[i][j] = -D[i][j];
            for (int j = 0; j < n; j++) U[i][j] = -U[i][j];
        }
    // enforce the divisibility chain d_i | d_{i+1}
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i + 1 < std::min(n, m); i++) {
            if (D[i][i] == 0 || D[i + 1][i + 1] == 0) continue;
            if (D[i + 1][i + 1] % D[i][i] == 0) continue;
            // fold entry (i+1,i+1) into column i, redo the 2x2 corner
            col_op(i, i + 1, -1);  // col_i += col_{i+1}: now D[i+1][i] nonzero
            mpz_class g, p, q;
            mpz_gcdext(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t(),
                       D[i][i].get_mpz_t(), D[i + 1][i].get_mpz_t());
            // row_i := p*row_i + q*row_{i+1}; row_{i+1} := combination killing D[i+1][i]
            mpz_class a_ = D[i][i] / g, b_ = D[i + 1][i] / g;
            for (int j = 0; j < m; j++) {
                mpz_class r0 = p * D[i][j] + q * D[i + 1][j];
                mpz_class r1 = -b_ * D[i][j] + a_ * D[i + 1][j];
                D[i][j] = r0;
                D[i + 1][j] = r1;
            }
            for (int j = 0; j < n; j++) {
                mpz_class r0 = p * U[i][j] + q * U[i + 1][j];
                mpz_class r1 = -b_ * U[i][j] + a_ * U[i + 1][j];
                U[i][j] = r0;
                U[i + 1][j] = r1;
            }
            // clear the off-diagonal remainder in row i
            if (D[i][i + 1] != 0) {
                mpz_class f = D[i][i + 1] / D[i][i];
                col_op(i + 1, i, f);
            }
            if (D[i][i] < 0)
                for (int j = 0; j < m; j++) D[i][j] = -D[i][j];
            changed = true;
        }
    }
    for (int i = 0; i < std::min(n, m); i++)
        if (D[i][i] != 0) {
            s.rank++;
            s.divisors.push_back(D[i][i]);
        }
    return s;
}

int zrank(const ZMatrix& a) { return smith_normal_form(a).rank; }

mpz_class zdet(ZMatrix a) {
    // Bareiss fraction-free elimination
    int n = a.size();
    mpz_class prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; k++) {
        if (a[k][k] == 0) {
            int p = -1;
            for (int i = k + 1; i < n; i++)
                if (a[i][k] != 0) { p = i; break; }
            if (p < 0) return 0;
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; i++)
            for (int j = k + 1; j < n; j++) {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

ZMatrix zkernel(const ZMatrix& a) {
    SmithResult s = smith_normal_form(a);
    int m = a[0].size();
    ZMatrix ker(m, std::vector<mpz_class>(m - s.rank, 0));
    for (int i = 0; i < m; i++)
        for (int j = s.rank; j < m; j++) ker[i][j - s.rank] = s.V[i][j];
    return ker;
}

// Solve a * x = b over the rationals; returns false if inconsistent or
// the solution is not integral.
static bool solve_integral(const ZMatrix& a, const std::vector<mpz_class>& b,
                           std::vector<mpz_class>& x) {
    int n = a.size(), m = a[0].size();
    std::vector<std::vector<mpq_class>> w(n, std::vector<mpq_class>(m + 1));
    for (int i = 0; i < n; i++) {
        for (int j = 0; j < m; j++) w[i][j] = a[i][j];
        w[i][m] = b[i];
    }
    std::vector<int> piv_col;
    int r = 0;
    for (int c = 0; c < m && r < n; c++) {
        int p = -1;
        for (int i = r; i < n; i++)
            if (w[i][c] != 0) { p = i; break; }
        if (p < 0) continue;
        std::swap(w[r], w[p]);
        mpq_class pv = w[r][c];
        for (int j = c; j <= m; j++) w[r][j] /= pv;
        for (int i = 0; i < n; i++) {
            if (i == r || w[i][c] == 0) continue;
            mpq_class f = w[i][c];
            for (int j = c; j <= m; j++) w[i][j] -= f * w[r][j];
        }
        piv_col.push_back(c);
        r++;
    }
    for (int i = r; i < n; i++)
        if (w[i][m] != 0) return false;
    std::vector<mpq_class> sol(m, 0);
    for (int i = 0; i < r; i++) sol[piv_col[i]] = w[i][m];
    x.assign(m, 0);
    for (int j = 0; j < m; j++) {
        if (sol[j].get_den() != 1) return false;
        x[j] = sol[j].get_num();
    }
    return true;
}

std::array<AbelianGroup, 3> integer_cohomology() {
    ZMatrix d1 = expand(boundary1(), vertex_quotients(), edge_quotients());  // 10x27
    ZMatrix d2 = expand(boundary2(), edge_quotients(), face_quotients());    // 27x24
    ZMatrix delta0 = ztranspose(d1);  // 27x10
    ZMatrix delta1 = ztranspose(d2);  // 24x27

    std::array<AbelianGroup, 3> h;
    int r1 = zrank(delta0), r2 = zrank(delta1);
    h[0].free_rank = 10 - r1;  // kernel of delta0, always free

    // H^1 = ker(delta1) / im(delta0)
    ZMatrix K = zkernel(delta1);  // 27 x (27-r2)
    int kd = K[0].size();
    ZMatrix Y(kd, std::vector<mpz_class>(10, 0));
    for (int j = 0; j < 10; j++) {
        std::vector<mpz_class> b(27), x;
        for (int i = 0; i < 27; i++) b[i] = delta0[i][j];
        if (!solve_integral(K, b, x))
            throw std::logic_error("im(delta0) not inside ker(delta1)");
        for (int i = 0; i < kd; i++) Y[i][j] = x[i];
    }
    SmithResult sy = smith_normal_form(Y);
    h[1].free_rank = kd - sy.rank;
    for (const auto& d : sy.divisors)
        if (d > 1) h[1].torsion.push_back(d);

    // H^2 = Z^24 / im(delta1)
    SmithResult s2 = smith_normal_form(delta1);
    h[2].free_rank = 24 - s2.rank;
    for (const auto& d : s2.divisors)
        if (d > 1) h[2].torsion.push_back(d);
    return h;
}

static int crank(const CMatrix& m) {
    if (m.empty() || m[0].empty()) return 0;
    Eigen::MatrixXcd e(m.size(), m[0].size());
    for (size_t i = 0; i < m.size(); i++)
        for (size_t j = 0; j < m[0].size(); j++) e(i, j) = m[i][j];
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(e);
    int r = 0;
    for (int i = 0; i < svd.singularValues().size(); i++)
        if (svd.singularValues()(i) > 1e-9) r++;
    return r;
}

RepColumn rep_cohomology(int k) {
    k = ((k % 6) + 6) % 6;
    RepColumn col;
    col.k = k;
    auto fq = face_quotients(), eq = edge_quotients(), vq = vertex_quotients();
    auto d1 = specialize(boundary1(), k, vq, eq);
    auto d2 = specialize(boundary2(), k, eq, fq);
    col.faces = 4;
    col.edges = 0;
    for (auto& q : eq) col.edges += survives(q, k) ? 1 : 0;
    col.vertices = 0;
    for (auto& q : vq) col.vertices += survives(q, k) ? 1 : 0;
    col.rank_d1 = crank(d1);
    col.rank_d2 = crank(d2);
    col.h0 = col.vertices - col.rank_d1;
    col.h1 = col.edges - col.rank_d1 - col.rank_d2;
    col.h2 = col.faces - col.rank_d2;
    return col;
}

// Rational inverse of a unimodular integer matrix (result is integral).
static ZMatrix zinverse_unimodular(const ZMatrix& u) {
    int n = u.size();
    std::vector<std::vector<mpq_class>> w(n, std::vector<mpq_class>(2 * n, 0));
    for (int i = 0; i < n; i++) {
        for (int j = 0; j < n; j++) w[i][j] = u[i][j];
        w[i][n + i] = 1;
    }
    for (int c = 0; c < n; c++) {
        int p = -1;
        for (int i = c; i < n; i++)
            if (w[i][c] != 0) { p = i; break; }
        std::swap(w[c], w[p]);
        mpq_class pv = w[c][c];
        for (int j = 0; j < 2 * n; j++) w[c][j] /= pv;
        for (int i = 0; i < n; i++) {
            if (i == c || w[i][c] == 0) continue;
            mpq_class f = w[i][c];
            for (int j = 0; j < 2 * n; j++) w[i][j] -= f * w[c][j];
        }
    }
    ZMatrix inv(n, std::vector<mpz_class>(n));
    for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) {
            assert(w[i][n + j].get_den() == 1);
            inv[i][j] = w[i][n + j].get_num();
        }
    return inv;
}

H2Action h2_action() {
    ZMatrix d2 = expand(boundary2(), edge_quotients(), face_quotients());  // 27x24
    ZMatrix delta1 = ztranspose(d2);                                       // 24x27
    ZMatrix S = ztranspose(expand(sigma2(), face_quotients(), face_quotients()));

    SmithResult snf = smith_normal_form(delta1);
    ZMatrix Uinv = zinverse_unimodular(snf.U);
    // coordinates z = U x; free part of the cokernel = indices rank..23
    ZMatrix A = zmul(snf.U, zmul(S, Uinv));
    int n = 24, r = snf.rank;
    H2Action out;
    out.action.assign(n - r, std::vector<mpz_class>(n - r));
    for (int i = r; i < n; i++)
        for (int j = r; j < n; j++) out.action[i - r][j - r] = A[i][j];
    out.det = zdet(out.action);

    out.eigen_by_rep.resize(6);
    auto fq = face_quotients(), eq = edge_quotients();
    for (int k = 0; k < 6; k++) {
        auto d2k = specialize(boundary2(), k, eq, fq);
        Eigen::MatrixXcd M(d2k.size(), 4);  // delta1 at rep k, as columns: d2k^T
        for (size_t i = 0; i < d2k.size(); i++)
            for (int j = 0; j < 4; j++) M(i, j) = d2k[i][j];
        Eigen::MatrixXcd W = M.transpose();  // 4 x edges, columns span im(delta1_k)
        // orthonormal basis of im(W) and its complement in C^4
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(W, Eigen::ComputeFullU);
        int rw = 0;
        for (int i = 0; i < svd.singularValues().size(); i++)
            if (svd.singularValues()(i) > 1e-9) rw++;
        int h2 = 4 - rw;
        Eigen::MatrixXcd Wb = svd.matrixU().leftCols(rw);
        Eigen::MatrixXcd Q = svd.matrixU().rightCols(h2);
        auto s2k = specialize(sigma2(), k, fq, fq);
        Eigen::MatrixXcd Sk(4, 4);
        for (int i = 0; i < 4; i++)
            for (int j = 0; j < 4; j++) Sk(i, j) = s2k[i][j];
        Eigen::MatrixXcd ST = Sk.transpose();
        // induced map on C^4 / im: beta = Q^H * ST * Q  (Q orthonormal complement)
        Eigen::MatrixXcd beta = Q.adjoint() * ST * Q;
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(beta);
        std::vector<std::complex<double>> ev;
        for (int i = 0; i < h2; i++) ev.push_back(es.eigenvalues()(i));
        out.eigen_by_rep[k] = ev;
    }
    return out;
}

}  // namespace capfam
