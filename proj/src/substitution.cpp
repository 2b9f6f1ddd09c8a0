#include "substitution.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace capfam {

const std::string& rule_data_text() {
    // Mirrors data/substitution_rule.txt; the test suite checks agreement.
    static const std::string text = R"(CONTROL T : 0 -3 0 4
CONTROL H : 0 0 0 -1
CONTROL P : -1 1 2 2
CONTROL F : 0 -2 0 3
MEMBER T : H 0 : 2 5 -1 -4
MEMBER H : F 0 : -2 -2 -2 -2
MEMBER H : H 0 : -1 0 -1 -3
MEMBER H : P 2 : 0 -1 -3 -4
MEMBER H : P 0 : -3 -5 0 1
MEMBER H : H 0 : 0 0 0 0
MEMBER H : F 2 : 1 -1 -2 -1
MEMBER H : H 4 : -1 -4 -1 -1
MEMBER H : T 5 : -1 -2 -1 1
MEMBER H : P 1 : -2 -5 1 4
MEMBER H : F 4 : -2 -3 1 0
MEMBER P : H 0 : 2 4 -4 -8
MEMBER P : F 2 : 3 3 -6 -9
MEMBER P : P 1 : 0 -1 -3 -4
MEMBER P : F 5 : -1 0 -1 -3
MEMBER P : H 5 : 1 1 -2 -5
MEMBER F : F 0 : 1 2 -5 -7
MEMBER F : H 0 : 2 4 -4 -8
MEMBER F : F 2 : 3 3 -6 -9
MEMBER F : P 1 : 0 -1 -3 -4
MEMBER F : F 5 : -1 0 -1 -3
MEMBER F : H 5 : 1 1 -2 -5
)";
    return text;
}

SubstitutionRule parse_rule(const std::string& text) {
    SubstitutionRule rule;
    std::array<bool, 4> have_control{};
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto h = line.find('#');
        if (h != std::string::npos) line.resize(h);
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word)) continue;
        auto read_coords = [&ls, &line]() {
            long a, b, c, d;
            if (!(ls >> a >> b >> c >> d))
                throw std::runtime_error("rule data: bad coordinates in: " + line);
            return RingElement(a, b, c, d);
        };
        if (word == "CONTROL") {
            std::string name, colon;
            if (!(ls >> name >> colon) || colon != ":" || name.size() != 1)
                throw std::runtime_error("rule data: malformed CONTROL: " + line);
            int t = static_cast<int>(tile_from_label(name[0]));
            rule.control[t] = read_coords();
            have_control[t] = true;
        } else if (word == "MEMBER") {
            std::string name, colon, child;
            int r;
            if (!(ls >> name >> colon >> child >> r) || colon != ":" ||
                name.size() != 1 || child.size() != 1)
                throw std::runtime_error("rule data: malformed MEMBER: " + line);
            std::string colon2;
            if (!(ls >> colon2) || colon2 != ":")
                throw std::runtime_error("rule data: malformed MEMBER: " + line);
            RuleEntry e;
            e.child = tile_from_label(child[0]);
            e.r = r;
            if (r < 0 || r > 5)
                throw std::runtime_error("rule data: rotation out of range: " + line);
            e.d = read_coords();
            rule.members[static_cast<int>(tile_from_label(name[0]))].push_back(e);
        } else {
            throw std::runtime_error("rule data: unexpected record " + word);
        }
    }
    for (bool h : have_control)
        if (!h) throw std::runtime_error("rule data: missing CONTROL record");
    // Counts must agree with the count matrix, and same-type displacements
    // must be distinct.
    auto m = count_matrix();
    for (int j = 0; j < 4; j++) {
        std::array<long, 4> cnt{};
        for (const auto& e : rule.members[j]) {
            for (const auto& f : rule.members[j])
                if (&e != &f && e.child == f.child && e.r == f.r && e.d == f.d)
                    throw std::runtime_error("rule data: duplicate member entry");
            cnt[static_cast<int>(e.child)]++;
        }
        for (int i = 0; i < 4; i++)
            if (cnt[i] != m[i][j])
                throw std::runtime_error("rule data: member counts disagree with the count matrix");
    }
    return rule;
}

const SubstitutionRule& load_rule() {
    static const SubstitutionRule rule = parse_rule(rule_data_text());
    return rule;
}

Patch seed_patch(TileType t, int rotation) {
    Patch p;
    p.tiles.push_back({t, ((rotation % 6) + 6) % 6, RingElement()});
    p.level = 0;
    return p;
}

static bool tile_less(const PlacedTile& x, const PlacedTile& y) {
    for (int i = 0; i < 4; i++) {
        int c = cmp(x.position.coeffs()[i], y.position.coeffs()[i]);
        if (c != 0) return c < 0;
    }
    if (x.type != y.type) return x.type < y.type;
    return x.rotation < y.rotation;
}

Patch substitute(const Patch& p, const SubstitutionRule& rule) {
    const RingElement phi2 = re_one() + re_phi();  // phi^2 = 1 + phi
    // xi^rho * D, precomputed per (parent type, member index, rho).
    std::array<std::vector<std::array<RingElement, 6>>, 4> rot_d;
    for (int j = 0; j < 4; j++)
        for (const auto& e : rule.members[j]) {
            std::array<RingElement, 6> by_rot;
            for (int rho = 0; rho < 6; rho++) by_rot[rho] = re_xi(rho) * e.d;
            rot_d[j].push_back(std::move(by_rot));
        }
    Patch out;
    out.level = p.level + 1;
    out.tiles.reserve(p.tiles.size() * 7);
    for (const auto& t : p.tiles) {
        RingElement base = phi2 * t.position;
        const auto& members = rule.members[static_cast<int>(t.type)];
        for (size_t k = 0; k < members.size(); k++) {
            out.tiles.push_back({members[k].child, (t.rotation + members[k].r) % 6,
                                 base + rot_d[static_cast<int>(t.type)][k][t.rotation]});
        }
    }
    std::sort(out.tiles.begin(), out.tiles.end(), tile_less);
    for (size_t i = 1; i < out.tiles.size(); i++)
        if (out.tiles[i].position == out.tiles[i - 1].position)
            throw std::logic_error("substitute: duplicate control point (rule transcription error)");
    return out;
}

Patch iterate_substitution(const Patch& p, const SubstitutionRule& rule, int n) {
    Patch q = p;
    for (int i = 0; i < n; i++) q = substitute(q, rule);
    return q;
}

std::array<std::array<long, 4>, 4> count_matrix() {
    return {{{0, 1, 0, 0}, {1, 3, 2, 2}, {0, 3, 1, 1}, {0, 3, 2, 3}}};
}

std::array<long, 4> count_vector(TileType seed, int n) {
    auto m = count_matrix();
    std::array<long, 4> v{};
    v[static_cast<int>(seed)] = 1;
    for (int s = 0; s < n; s++) {
        std::array<long, 4> w{};
        for (int i = 0; i < 4; i++)
            for (int j = 0; j < 4; j++) w[i] += m[i][j] * v[j];
        v = w;
    }
    return v;
}

std::array<RingElement, 4> frequencies() {
    return {RingElement(Rat(5, 3), -1), RingElement(Rat(1, 3)),
            RingElement(-3, 2), RingElement(2, -1)};
}

std::array<RingElement, 4> tile_area_coefficients() {
    return {RingElement(9, 9), RingElement(15, 27), RingElement(14, 22),
            RingElement(15, 23)};
}

double tile_area(TileType t, const ShapeVector& s) {
    auto o = tile_boundary(t, s);
    return std::abs(polygon_area(o.vertices));
}

RingElement tile_anchor(const PlacedTile& t, const SubstitutionRule& rule) {
    return t.position - re_xi(t.rotation) * rule.control[static_cast<int>(t.type)];
}

std::vector<std::complex<double>> tile_polygon(const PlacedTile& t,
                                               const ShapeVector& s,
                                               const SubstitutionRule& rule) {
    auto o = tile_boundary(t.type, s, t.rotation);
    std::complex<double> shift = tile_anchor(t, rule).direct();
    for (auto& v : o.vertices) v += shift;
    return o.vertices;
}

namespace {

// Exact position key for integral patches (every patch grown from a seed at
// the origin has integer coordinates).
struct TileKey {
    long a, b, c, d;
    int type, rot;
    bool operator==(const TileKey& o) const {
        return a == o.a && b == o.b && c == o.c && d == o.d && type == o.type &&
               rot == o.rot;
    }
};

struct TileKeyHash {
    size_t operator()(const TileKey& k) const {
        size_t h = 1469598103934665603ull;
        auto mix = [&h](long v) {
            h ^= static_cast<size_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        };
        mix(k.a); mix(k.b); mix(k.c); mix(k.d); mix(k.type * 8 + k.rot);
        return h;
    }
};

long coeff_to_long(const Rat& q) {
    if (q.get_den() != 1)
        throw std::runtime_error("expected integral coordinates");
    if (!q.get_num().fits_slong_p())
        throw std::runtime_error("coordinate overflow");
    return q.get_num().get_si();
}

TileKey make_key(const PlacedTile& t) {
    const auto& c = t.position.coeffs();
    return {coeff_to_long(c[0]), coeff_to_long(c[1]), coeff_to_long(c[2]),
            coeff_to_long(c[3]), static_cast<int>(t.type), t.rotation};
}

TileKey make_key(const PlacedTile& t, const RingElement& shift) {
    PlacedTile s = t;
    s.position = t.position - shift;
    return make_key(s);
}

bool point_in_polygon(const std::vector<std::complex<double>>& poly, double x,
                      double y) {
    bool in = false;
    size_t n = poly.size();
    for (size_t i = 0, j = n - 1; i < n; j = i++) {
        double xi = poly[i].real(), yi = poly[i].imag();
        double xj = poly[j].real(), yj = poly[j].imag();
        if ((yi > y) != (yj > y) && x < (xj - xi) * (y - yi) / (yj - yi) + xi)
            in = !in;
    }
    return in;
}

// Spatial index of the realized tile polygons of a patch, answering
// "is this point covered by some tile" queries.
struct CoverageIndex {
    double cell = 16.0;
    std::unordered_map<long long, std::vector<int>> grid;
    std::vector<std::vector<std::complex<double>>> polys;

    static long long key_of(double cell, double x, double y) {
        long long ix = static_cast<long long>(std::floor(x / cell));
        long long iy = static_cast<long long>(std::floor(y / cell));
        return ix * 2000003LL + iy;
    }

    void build(const Patch& p, const SubstitutionRule& rule) {
        auto cap = named_shape(ShapeName::CAP);
        std::array<std::array<std::vector<std::complex<double>>, 6>, 4> outline;
        for (int ty = 0; ty < 4; ty++)
            for (int ro = 0; ro < 6; ro++) {
                auto o = tile_boundary(static_cast<TileType>(ty), cap, ro);
                std::complex<double> off =
                    re_xi(ro).direct() * rule.control[ty].direct();
                for (auto& v : o.vertices) outline[ty][ro].push_back(v - off);
            }
        polys.reserve(p.tiles.size());
        for (int i = 0; i < static_cast<int>(p.tiles.size()); i++) {
            const auto& tile = p.tiles[i];
            std::complex<double> cp = tile.position.direct();
            std::vector<std::complex<double>> poly =
                outline[static_cast<int>(tile.type)][tile.rotation];
            double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
            for (auto& v : poly) {
                v += cp;
                x0 = std::min(x0, v.real()); x1 = std::max(x1, v.real());
                y0 = std::min(y0, v.imag()); y1 = std::max(y1, v.imag());
            }
            for (long long gx = static_cast<long long>(std::floor(x0 / cell));
                 gx <= static_cast<long long>(std::floor(x1 / cell)); gx++)
                for (long long gy = static_cast<long long>(std::floor(y0 / cell));
                     gy <= static_cast<long long>(std::floor(y1 / cell)); gy++)
                    grid[gx * 2000003LL + gy].push_back(i);
            polys.push_back(std::move(poly));
        }
    }

    bool covered(double x, double y) const {
        auto g = grid.find(key_of(cell, x, y));
        if (g == grid.end()) return false;
        for (int i : g->second)
            if (point_in_polygon(polys[i], x, y)) return true;
        return false;
    }

    // True when the whole disk around c is (safely) covered: samples rings of
    // points at several radii.
    bool disk_covered(std::complex<double> c, double radius) const {
        if (!covered(c.real(), c.imag())) return false;
        for (int k = 1; k <= 3; k++) {
            double r = radius * k / 3.0;
            for (int j = 0; j < 12; j++) {
                double a = 2 * M_PI * (j + 0.13 * k) / 12.0;
                if (!covered(c.real() + r * std::cos(a), c.imag() + r * std::sin(a)))
                    return false;
            }
        }
        return true;
    }
};

}  // namespace

std::vector<RingElement> return_vectors(const Patch& p, double radius,
                                        size_t max_results) {
    std::vector<RingElement> out;
    if (p.tiles.empty()) return out;
    const auto& rule = load_rule();
    std::unordered_map<TileKey, size_t, TileKeyHash> index;
    for (size_t i = 0; i < p.tiles.size(); i++) index[make_key(p.tiles[i])] = i;
    CoverageIndex cov;
    cov.build(p, rule);
    std::vector<std::complex<double>> pos(p.tiles.size());
    for (size_t i = 0; i < p.tiles.size(); i++) pos[i] = p.tiles[i].position.direct();
    // Interior tiles: the full matching disk lies inside the patch, so a
    // failed lookup there is a genuine configuration mismatch, not a
    // boundary truncation.
    // The margin of 9 (a bound on the tile diameter) guarantees that any
    // tile whose control point falls in the matching disk lies entirely in
    // the patch.
    std::vector<char> interior(p.tiles.size());
    for (size_t i = 0; i < p.tiles.size(); i++)
        interior[i] = cov.disk_covered(pos[i], radius + 9.0);
    auto neighborhood = [&](size_t i) {
        std::vector<size_t> nb;
        for (size_t j = 0; j < p.tiles.size(); j++)
            if (std::abs(pos[j] - pos[i]) <= radius) nb.push_back(j);
        return nb;
    };
    // Candidate translations from pairs of identically-typed, identically-
    // rotated tiles; verified by full neighborhood matching around interior
    // targets.
    for (size_t a = 0; a < p.tiles.size() && out.size() < max_results; a++) {
        auto nb_a = neighborhood(a);
        for (size_t b = 0; b < p.tiles.size() && out.size() < max_results; b++) {
            if (a == b || !interior[b]) continue;
            if (p.tiles[a].type != p.tiles[b].type ||
                p.tiles[a].rotation != p.tiles[b].rotation)
                continue;
            RingElement t = p.tiles[b].position - p.tiles[a].position;
            bool dup = false;
            for (const auto& known : out)
                if (known == t) { dup = true; break; }
            if (dup) continue;
            bool ok = true;
            for (size_t j : nb_a) {
                PlacedTile moved = p.tiles[j];
                moved.position = moved.position + t;
                // Only sites inside the covered target disk are decisive.
                if (std::abs(pos[j] - pos[a]) > radius - 1e-9) continue;
                if (index.find(make_key(moved)) == index.end()) { ok = false; break; }
            }
            if (ok) out.push_back(t);
        }
    }
    return out;
}

double empirical_density(const Patch& p) {
    const double kA = std::sqrt(3.0) / 4.0;
    const double phi = re_phi().direct().real();
    auto coeff = tile_area_coefficients();
    double area = 0;
    for (const auto& t : p.tiles) {
        const auto& v = coeff[static_cast<int>(t.type)];
        area += kA * (v.a().get_d() + v.b().get_d() * phi);
    }
    // |t0|^2 = 6(2+3phi) rescales to t0-normalized coordinates.
    return static_cast<double>(p.tiles.size()) / area * 6.0 * (2.0 + 3.0 * phi);
}

double coincidence_fraction(const RingElement& t, int n, int patch_level) {
    if (!divide_exact(t, re_t0()))
        throw std::invalid_argument("coincidence_fraction: t not in the return module");
    if (n < 0) throw std::invalid_argument("coincidence_fraction: negative level");
    const auto& rule = load_rule();
    struct Cache {
        Patch patch;
        std::unordered_map<TileKey, char, TileKeyHash> keys;
        CoverageIndex cov;
    };
    static std::map<int, Cache> cache;
    auto it = cache.find(patch_level);
    if (it == cache.end()) {
        Cache c;
        c.patch = iterate_substitution(seed_patch(TileType::H), rule, patch_level);
        for (const auto& tile : c.patch.tiles) c.keys[make_key(tile)] = 1;
        c.cov.build(c.patch, rule);
        cache[patch_level] = std::move(c);
        it = cache.find(patch_level);
    }
    const Cache& c = it->second;
    auto covered = [&c](double x, double y) { return c.cov.covered(x, y); };
    // Shift s = phi^(2n) * t.
    RingElement s = t;
    const RingElement phi2 = re_one() + re_phi();
    for (int i = 0; i < n; i++) s = phi2 * s;
    std::complex<double> sd = s.direct();
    const double kA = std::sqrt(3.0) / 4.0;
    const double phi = re_phi().direct().real();
    auto coeff = tile_area_coefficients();
    double total = 0, matched = 0;
    for (size_t i = 0; i < c.patch.tiles.size(); i++) {
        const auto& tile = c.patch.tiles[i];
        const auto& poly = c.cov.polys[i];
        // The tile translated by -s must lie inside the covered region:
        // sample its vertices, edge midpoints, and centroid.
        std::complex<double> centroid = 0;
        for (const auto& v : poly) centroid += v;
        centroid = centroid / static_cast<double>(poly.size()) - sd;
        // Sample points are pulled slightly toward the centroid so that
        // exactly-coincident tiles do not fail on shared boundary edges.
        bool inside = covered(centroid.real(), centroid.imag());
        for (size_t k = 0; k < poly.size() && inside; k++) {
            std::complex<double> v = poly[k] - sd;
            std::complex<double> m = 0.5 * (poly[k] + poly[(k + 1) % poly.size()]) - sd;
            v = centroid + 0.999 * (v - centroid);
            m = centroid + 0.999 * (m - centroid);
            inside = covered(v.real(), v.imag()) && covered(m.real(), m.imag());
        }
        if (!inside) continue;
        const auto& ac = coeff[static_cast<int>(tile.type)];
        double area = kA * (ac.a().get_d() + ac.b().get_d() * phi);
        total += area;
        if (c.keys.count(make_key(tile, s))) matched += area;
    }
    if (total == 0)
        throw std::runtime_error("coincidence_fraction: empty overlap region");
    return matched / total;
}

std::string patch_csv(const Patch& p) {
    std::ostringstream os;
    os << "type,rotation,a,b,c,d\n";
    for (const auto& t : p.tiles) {
        const auto& c = t.position.coeffs();
        os << tile_label(t.type) << "," << t.rotation;
        for (int i = 0; i < 4; i++) os << "," << c[i].get_str();
        os << "\n";
    }
    return os.str();
}

std::string patch_svg(const Patch& p, const ShapeVector& s) {
    const auto& rule = load_rule();
    static const char* fill[4] = {"#e69f00", "#56b4e9", "#009e73", "#9467bd"};
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    std::vector<std::vector<std::complex<double>>> polys;
    polys.reserve(p.tiles.size());
    for (const auto& t : p.tiles) {
        polys.push_back(tile_polygon(t, s, rule));
        for (const auto& v : polys.back()) {
            xmin = std::min(xmin, v.real());
            xmax = std::max(xmax, v.real());
            ymin = std::min(ymin, v.imag());
            ymax = std::max(ymax, v.imag());
        }
    }
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(4);
    double pad = 1.0;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << xmin - pad
       << " " << ymin - pad << " " << (xmax - xmin + 2 * pad) << " "
       << (ymax - ymin + 2 * pad) << "\">\n";
    // Flip y so the mathematical orientation renders upright.
    os << "<g transform=\"scale(1,-1) translate(0," << -(ymin + ymax) << ")\">\n";
    for (size_t i = 0; i < polys.size(); i++) {
        os << "<polygon points=\"";
        for (const auto& v : polys[i]) os << v.real() << "," << v.imag() << " ";
        os << "\" fill=\"" << fill[static_cast<int>(p.tiles[i].type)]
           << "\" stroke=\"black\" stroke-width=\"0.06\"/>\n";
    }
    for (const auto& t : p.tiles) {
        auto c = t.position.direct();
        os << "<circle cx=\"" << c.real() << "\" cy=\"" << c.imag()
           << "\" r=\"0.15\" fill=\"black\"/>\n";
    }
    os << "</g>\n</svg>\n";
    return os.str();
}

}  // namespace capfam
