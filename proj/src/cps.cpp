#include "cps.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace capfam {

namespace {

const double kPhi = 1.61803398874989484820458683437;
const double kContract = 2.0 - kPhi;  // star of phi^2

std::array<double, 4> pair_of(const RingElement& x) {
    auto d = x.direct();
    auto s = x.internal();
    return {d.real(), d.imag(), s.real(), s.imag()};
}

}  // namespace

double EmbeddingLattice::covolume() const {
    Eigen::Matrix4d m;
    for (int i = 0; i < 4; i++)
        for (int j = 0; j < 4; j++) m(i, j) = basis[i][j];
    return std::abs(m.determinant());
}

std::array<long, 4> EmbeddingLattice::coordinates(
    const std::array<double, 4>& point, double* residual) const {
    Eigen::Matrix4d m;
    Eigen::Vector4d p;
    for (int i = 0; i < 4; i++) {
        p(i) = point[i];
        for (int j = 0; j < 4; j++) m(i, j) = basis[i][j];
    }
    Eigen::Vector4d c = m.colPivHouseholderQr().solve(p);
    std::array<long, 4> out;
    Eigen::Vector4d rounded;
    for (int i = 0; i < 4; i++) {
        out[i] = std::lround(c(i));
        rounded(i) = static_cast<double>(out[i]);
    }
    if (residual) *residual = (m * rounded - p).norm();
    return out;
}

EmbeddingLattice embedding_lattice() {
    EmbeddingLattice lat;
    const std::array<RingElement, 4> gens = {re_one(), re_phi(), re_xi(1),
                                             re_phi_xi(1)};
    for (int j = 0; j < 4; j++) {
        auto v = pair_of(gens[j]);
        for (int i = 0; i < 4; i++) lat.basis[i][j] = v[i];
    }
    return lat;
}

std::array<double, 4> lift(const RingElement& x) {
    if (!x.is_integral()) throw std::invalid_argument("lift: non-integral element");
    return pair_of(x);
}

int WindowIFS::maps_from(TileType t) const {
    int n = 0;
    int lo = window_class(t, 0);
    for (const auto& m : maps)
        if (m.src >= lo && m.src < lo + 6) n++;
    return n / 6;
}

int WindowIFS::maps_into(TileType t) const {
    int n = 0;
    int lo = window_class(t, 0);
    for (const auto& m : maps)
        if (m.dst >= lo && m.dst < lo + 6) n++;
    return n / 6;
}

WindowIFS window_ifs() {
    const auto& rule = load_rule();
    WindowIFS ifs;
    ifs.contraction = kContract;
    for (int j = 0; j < 4; j++) {
        for (const auto& e : rule.members[j]) {
            for (int rho = 0; rho < 6; rho++) {
                auto q = divide_field(re_xi(rho) * e.d, re_t0());
                if (!q) throw std::logic_error("window_ifs: displacement not in field span");
                WindowMap m;
                m.src = window_class(static_cast<TileType>(j), rho);
                m.dst = window_class(e.child, rho + e.r);
                m.offset = q->internal();
                ifs.maps.push_back(m);
            }
        }
    }
    return ifs;
}

long long WindowApprox::cell_key(std::complex<double> w) const {
    long ix = std::lround(std::floor(w.real() / cell_));
    long iy = std::lround(std::floor(w.imag() / cell_));
    return ix * 2000003LL + iy;
}

WindowApprox::WindowApprox(
    std::array<std::vector<std::complex<double>>, 24> clouds, int depth,
    double resolution)
    : clouds_(std::move(clouds)), depth_(depth), resolution_(resolution) {
    cell_ = std::max(resolution_, 1e-3);
    grids_.resize(25);
    for (int c = 0; c < 24; c++) {
        for (const auto& w : clouds_[c]) {
            grids_[c].cells[cell_key(w)].push_back(w);
            grids_[24].cells[cell_key(w)].push_back(w);
        }
    }
}

std::size_t WindowApprox::total_points() const {
    std::size_t n = 0;
    for (const auto& c : clouds_) n += c.size();
    return n;
}

double WindowApprox::distance(std::complex<double> w, int cls,
                              double max_dist) const {
    const Grid& g = grids_[cls < 0 ? 24 : cls];
    long cx = std::lround(std::floor(w.real() / cell_));
    long cy = std::lround(std::floor(w.imag() / cell_));
    double best = max_dist;
    int max_ring = static_cast<int>(std::ceil(max_dist / cell_)) + 1;
    for (int ring = 0; ring <= max_ring; ring++) {
        // Cells at Chebyshev distance `ring` can only contain points closer
        // than `best` if (ring - 1) * cell < best.
        if (ring > 0 && (ring - 1) * cell_ >= best) break;
        for (int dx = -ring; dx <= ring; dx++) {
            for (int dy = -ring; dy <= ring; dy++) {
                if (std::max(std::abs(dx), std::abs(dy)) != ring) continue;
                auto it = g.cells.find((cx + dx) * 2000003LL + (cy + dy));
                if (it == g.cells.end()) continue;
                for (const auto& p : it->second)
                    best = std::min(best, std::abs(p - w));
            }
        }
    }
    return best;
}

WindowApprox attractor(int depth) {
    if (depth < 1) throw std::invalid_argument("attractor: depth must be >= 1");
    if (depth > 12) throw std::invalid_argument("attractor: depth exceeds memory budget");
    auto ifs = window_ifs();
    // Dedup grid: fine enough to not dominate the certificate, coarse
    // enough to bound memory.
    const double diam = 2.0 * kPhi * 1.05;
    double cell = std::max(0.0025, std::pow(kContract, depth));
    std::array<std::vector<std::complex<double>>, 24> pts;
    for (auto& v : pts) v.push_back({0.0, 0.0});
    for (int it = 0; it < depth; it++) {
        std::array<std::vector<std::complex<double>>, 24> next;
        std::array<std::unordered_set<long long>, 24> seen;
        auto key = [cell](std::complex<double> w) {
            long ix = std::lround(std::floor(w.real() / cell));
            long iy = std::lround(std::floor(w.imag() / cell));
            return ix * 2000003LL + iy;
        };
        for (const auto& m : ifs.maps) {
            for (const auto& w : pts[m.src]) {
                std::complex<double> z = kContract * w + m.offset;
                if (seen[m.dst].insert(key(z)).second) next[m.dst].push_back(z);
            }
        }
        pts = std::move(next);
    }
    // Certificate: IFS convergence from the singleton seeds plus grid
    // quantization accumulated over the iteration (geometric series).
    double res = std::pow(kContract, depth) * diam +
                 cell * std::sqrt(2.0) / (1.0 - kContract);
    return WindowApprox(std::move(pts), depth, res);
}

double window_total_area() {
    return 1.5 * std::sqrt(3.0) * kPhi * kPhi;  // hexagon of edge phi
}

double window_class_area(TileType t) {
    auto f = frequencies();
    return window_total_area() * f[static_cast<int>(t)].direct().real() / 6.0;
}

Membership window_membership(const WindowApprox& w, std::complex<double> p,
                             int cls, double epsilon) {
    double cap = w.resolution() + epsilon + 0.01;
    double d = w.distance(p, cls, cap);
    if (d <= w.resolution()) return Membership::In;
    if (d > w.resolution() + epsilon) return Membership::Out;
    return Membership::Uncertain;
}

std::vector<RingElement> enumerate_ring_points(double direct_radius,
                                               double internal_radius) {
    // x = (a + b phi) + (c + d phi) xi. Writing u = a + b phi, v = c + d phi,
    // the direct image is u + v xi and the internal image is
    // u* + v* xi^5 with u* = a + b - b phi. |xi component| bounds give
    // |u|, |v| <= R / sin(60deg) and likewise for the star parts.
    const double s3 = std::sqrt(3.0) / 2.0;
    double ub = direct_radius / s3 + 1e-9, sb = internal_radius / s3 + 1e-9;
    // a + b phi = u, a + b - b phi = u*  =>  b = (u - u*) / sqrt5.
    double bmax = (ub + sb) / std::sqrt(5.0) + 1;
    std::vector<std::pair<long, long>> ab;
    for (long b = -static_cast<long>(bmax); b <= static_cast<long>(bmax); b++) {
        for (long a = -static_cast<long>(ub + std::abs(b) * kPhi + 1);
             a <= static_cast<long>(ub + std::abs(b) * kPhi + 1); a++) {
            double u = a + b * kPhi, us = a + b - b * kPhi;
            if (std::abs(u) <= ub && std::abs(us) <= sb) ab.push_back({a, b});
        }
    }
    std::vector<RingElement> out;
    for (auto [c, d] : ab) {
        for (auto [a, b] : ab) {
            RingElement x(a, b, c, d);
            if (std::abs(x.direct()) <= direct_radius &&
                std::abs(x.internal()) <= internal_radius)
                out.push_back(x);
        }
    }
    return out;
}

CutAndProject cut_and_project(const WindowApprox& w, double radius,
                              double epsilon) {
    CutAndProject res;
    // The window union fits inside the circumscribed circle of radius phi.
    auto candidates = enumerate_ring_points(radius, kPhi + epsilon + 0.05);
    if (candidates.size() > 20000000)
        throw std::runtime_error("cut_and_project: point budget exceeded");
    for (const auto& y : candidates) {
        switch (window_membership(w, y.internal(), -1, epsilon)) {
            case Membership::In: res.inside.push_back(y); break;
            case Membership::Uncertain: res.uncertain.push_back(y); break;
            case Membership::Out: res.outside.push_back(y); break;
        }
    }
    res.inside_density = res.inside.size() / (M_PI * radius * radius);
    return res;
}

DensityIdentity density_identity() {
    DensityIdentity d;
    // rho1 = (4/15) * (3 sqrt3 / 2) phi^2 = (2/5) sqrt3 phi^2.
    d.rho1_coeff = RingElement(Rat(2, 5)) * re_phi() * re_phi();
    // rho2 = |t0|^2 / (v . f) with v = (sqrt3/4)(9+9phi, 15+27phi,
    // 14+22phi, 15+23phi) and the frequency vector f; |t0|^2 = 6(2+3phi).
    const std::array<RingElement, 4> v = {
        RingElement(9, 9), RingElement(15, 27), RingElement(14, 22),
        RingElement(15, 23)};
    auto f = frequencies();
    RingElement s;  // (v . f) / (sqrt3 / 4)
    for (int i = 0; i < 4; i++) s = s + v[i] * f[i];
    // rho2 / sqrt3 = |t0|^2 * 4 / (3 s): the sqrt3 moves across the quotient.
    RingElement t0n(12, 18);  // |t0|^2 = 6(2 + 3 phi)
    auto q = divide_field(RingElement(4) * t0n, RingElement(3) * s);
    if (!q) throw std::logic_error("density_identity: quotient not in field");
    d.rho2_coeff = *q;
    d.equal = d.rho1_coeff == d.rho2_coeff;
    d.value = std::sqrt(3.0) * d.rho1_coeff.direct().real();
    return d;
}

double dimension_from_radius(double rho) {
    return std::log(rho) / (2.0 * std::log(kPhi));
}

HausdorffData hausdorff_from_text(const std::string& text) {
    HausdorffData h{};
    std::istringstream in(text);
    std::string line;
    int row = 0;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string tok, name, colon;
        if (!(ls >> tok)) continue;
        if (tok != "EDGE") throw std::invalid_argument("window edge data: bad record");
        if (row >= 2) throw std::invalid_argument("window edge data: too many rows");
        if (!(ls >> name >> colon >> h.matrix[row][0] >> h.matrix[row][1]) ||
            colon != ":")
            throw std::invalid_argument("window edge data: parse error");
        row++;
    }
    if (row != 2) throw std::invalid_argument("window edge data: need two edge types");
    // Power iteration on the 2x2 subdivision matrix.
    double v0 = 1, v1 = 1, lam = 0;
    for (int it = 0; it < 200; it++) {
        double w0 = h.matrix[0][0] * v0 + h.matrix[0][1] * v1;
        double w1 = h.matrix[1][0] * v0 + h.matrix[1][1] * v1;
        lam = std::max(std::abs(w0), std::abs(w1));
        v0 = w0 / lam;
        v1 = w1 / lam;
    }
    h.spectral_radius = lam;
    h.dimension = dimension_from_radius(lam);
    return h;
}

HausdorffData hausdorff_dimension() {
    std::ifstream in("data/window_edges.txt");
    if (!in.good())
        throw std::runtime_error("hausdorff_dimension: data/window_edges.txt missing");
    std::stringstream ss;
    ss << in.rdbuf();
    return hausdorff_from_text(ss.str());
}

std::string window_csv(const WindowApprox& w) {
    std::ostringstream os;
    os << "class,type,rotation,re,im\n";
    os.precision(9);
    for (int c = 0; c < 24; c++)
        for (const auto& p : w.cloud(c))
            os << c << ',' << tile_label(static_cast<TileType>(c / 6)) << ','
               << c % 6 << ',' << p.real() << ',' << p.imag() << '\n';
    return os.str();
}

std::string window_svg(const WindowApprox& w) {
    // Okabe-Ito base colors per type, darkened with rotation.
    static const int base[4][3] = {
        {230, 159, 0}, {86, 180, 233}, {0, 158, 115}, {148, 103, 189}};
    std::ostringstream os;
    const double S = 160.0, R = kPhi * 1.08;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << -R * S
       << ' ' << -R * S << ' ' << 2 * R * S << ' ' << 2 * R * S << "\">\n";
    os << "<rect x=\"" << -R * S << "\" y=\"" << -R * S << "\" width=\""
       << 2 * R * S << "\" height=\"" << 2 * R * S << "\" fill=\"white\"/>\n";
    os.precision(5);
    for (int c = 0; c < 24; c++) {
        double shade = 1.0 - 0.09 * (c % 6);
        int r = static_cast<int>(base[c / 6][0] * shade);
        int g = static_cast<int>(base[c / 6][1] * shade);
        int b = static_cast<int>(base[c / 6][2] * shade);
        os << "<g fill=\"rgb(" << r << ',' << g << ',' << b << ")\">\n";
        const auto& cloud = w.cloud(c);
        // Subsample large clouds so files stay a sane size.
        std::size_t step = std::max<std::size_t>(1, cloud.size() / 4000);
        for (std::size_t i = 0; i < cloud.size(); i += step)
            os << "<circle cx=\"" << cloud[i].real() * S << "\" cy=\""
               << -cloud[i].imag() * S << "\" r=\"1\"/>\n";
        os << "</g>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace capfam
