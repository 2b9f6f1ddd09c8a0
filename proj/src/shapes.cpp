#include "shapes.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace capfam {

char edge_label(EdgeType e) { return "ABXFL"[static_cast<int>(e)]; }

EdgeType edge_from_label(char c) {
    switch (c) {
        case 'A': return EdgeType::A;
        case 'B': return EdgeType::B;
        case 'X': return EdgeType::X;
        case 'F': return EdgeType::F;
        case 'L': return EdgeType::L;
    }
    throw std::invalid_argument(std::string("unknown edge label: ") + c);
}

bool edge_directional(EdgeType e) { return e != EdgeType::L; }

std::complex<double> ShapeVector::closure_defect() const {
    auto xi = [](int k) { return re_xi(k).direct(); };
    auto a = disp[0], x = disp[2], f = disp[3], l = disp[4];
    return a - (1.0 + xi(5)) * x - (xi(1) + xi(2)) * f - (1.0 + xi(5)) * l;
}

char tile_label(TileType t) { return "THPF"[static_cast<int>(t)]; }

TileType tile_from_label(char c) {
    switch (c) {
        case 'T': return TileType::T;
        case 'H': return TileType::H;
        case 'P': return TileType::P;
        case 'F': return TileType::F;
    }
    throw std::invalid_argument(std::string("unknown tile label: ") + c);
}

ShapeName shape_name_from_string(const std::string& s) {
    if (s == "chevron" || s == "Chevron") return ShapeName::Chevron;
    if (s == "hat" || s == "Hat") return ShapeName::Hat;
    if (s == "turtle" || s == "Turtle") return ShapeName::Turtle;
    if (s == "comet" || s == "Comet") return ShapeName::Comet;
    if (s == "cap" || s == "CAP" || s == "Cap") return ShapeName::CAP;
    if (s == "key" || s == "Key") return ShapeName::Key;
    throw std::invalid_argument("unknown shape name: " + s);
}

static ShapeVector exact_shape(const RingElement& a, const RingElement& b,
                               const RingElement& x, const RingElement& f,
                               const RingElement& l) {
    ShapeVector s;
    s.exact = {a, b, x, f, l};
    for (int i = 0; i < 5; i++) s.disp[i] = s.exact[i]->direct();
    return s;
}

ShapeVector named_shape(ShapeName name) {
    const RingElement one = re_one(), phi = re_phi(), xi = re_xi(1);
    switch (name) {
        case ShapeName::Chevron: {
            RingElement ab = one + xi;
            return exact_shape(ab, ab, one, one, RingElement());
        }
        case ShapeName::Hat: {
            RingElement three(3);
            return exact_shape(three, three, one, one, one);
        }
        case ShapeName::Turtle: {
            RingElement ab = RingElement(2) * (one + re_xi(5));
            return exact_shape(ab, ab, one, one, one + re_xi(5));
        }
        case ShapeName::Comet:
            // A = B = 3 is forced by closure: the shape vector equals
            // xi(mu1 + mu2) + 2 mu3.
            return exact_shape(RingElement(3), RingElement(3), xi, xi, RingElement(2));
        case ShapeName::CAP: {
            RingElement ab = RingElement(0, 3);
            return exact_shape(ab, ab, one, phi + xi, RingElement(0, 2));
        }
        case ShapeName::Key: {
            // The L-entry reading with X = 0; closure forces this choice.
            RingElement ab = RingElement(2, 3) - xi;
            return exact_shape(ab, ab, RingElement(), phi + xi, RingElement(2, 2));
        }
    }
    throw std::invalid_argument("unknown shape name");
}

ShapeVector family_shape(double alpha, double beta) {
    if (alpha == 0.0 && beta == 0.0)
        throw std::invalid_argument("family_shape: degenerate parameters (0, 0)");
    const std::complex<double> i(0.0, 1.0);
    const std::complex<double> xi = re_xi(1).direct();
    ShapeVector s;
    std::complex<double> ab = (xi + xi * xi) * alpha + 3.0 * i * beta;
    std::complex<double> xf = xi * (alpha + i * beta);
    s.disp = {ab, ab, xf, xf, 2.0 * i * beta};
    return s;
}

const std::string& outline_data_text() {
    // Mirrors data/tile_outlines.txt; the test suite checks the two agree.
    static const std::string text =
        "TILE T : +A^1 -B^0 +A^5\n"
        "TILE H : -A^0 +X^3 -X^1 +B^5 +X^5 -X^3 +B^1 +X^1 -X^5\n"
        "TILE P : +A^5 +L^1 +X^1 -X^5 -B^5 +L^4 +X^4 -X^2\n"
        "TILE F : -B^5 +L^4 +X^4 -X^2 +L^5 +X^5 -F^3 +F^1 -X^5\n";
    return text;
}

std::array<std::vector<EdgeToken>, 4> parse_outline_tokens(const std::string& text) {
    std::array<std::vector<EdgeToken>, 4> out;
    std::array<bool, 4> seen{};
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto h = line.find('#');
        if (h != std::string::npos) line.resize(h);
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word)) continue;
        if (word != "TILE") throw std::runtime_error("outline data: expected TILE, got " + word);
        std::string name, colon;
        if (!(ls >> name >> colon) || colon != ":" || name.size() != 1)
            throw std::runtime_error("outline data: malformed header: " + line);
        TileType t = tile_from_label(name[0]);
        std::vector<EdgeToken> toks;
        while (ls >> word) {
            // token shape: ±E^k
            if (word.size() < 4 || (word[0] != '+' && word[0] != '-') || word[2] != '^')
                throw std::runtime_error("outline data: bad token " + word);
            EdgeToken tok;
            tok.sign = word[0] == '+' ? 1 : -1;
            tok.edge = edge_from_label(word[1]);
            tok.rot = std::stoi(word.substr(3));
            if (tok.rot < 0 || tok.rot > 5)
                throw std::runtime_error("outline data: rotation out of range in " + word);
            toks.push_back(tok);
        }
        if (toks.empty()) throw std::runtime_error("outline data: empty tile record");
        out[static_cast<int>(t)] = std::move(toks);
        seen[static_cast<int>(t)] = true;
    }
    for (bool s : seen)
        if (!s) throw std::runtime_error("outline data: missing tile record");
    return out;
}

const std::array<std::vector<EdgeToken>, 4>& outline_tokens() {
    static const auto toks = parse_outline_tokens(outline_data_text());
    return toks;
}

MetaTileOutline tile_boundary(TileType t, const ShapeVector& s, int rotation) {
    if (std::abs(s.closure_defect()) > 1e-9)
        throw std::invalid_argument("tile_boundary: shape vector violates closure");
    MetaTileOutline o;
    o.type = t;
    o.tokens = outline_tokens()[static_cast<int>(t)];
    std::complex<double> rot = re_xi(rotation).direct();
    std::complex<double> v = 0.0;
    for (const auto& tok : o.tokens) {
        o.vertices.push_back(v);
        v += rot * re_xi(tok.rot).direct() * s[tok.edge] * double(tok.sign);
    }
    if (std::abs(v) > 1e-9) throw std::logic_error("tile_boundary: outline failed to close");
    return o;
}

std::vector<RingElement> tile_boundary_exact(TileType t, const ShapeVector& s,
                                             int rotation) {
    for (const auto& e : s.exact)
        if (!e) throw std::invalid_argument("tile_boundary_exact: shape not ring-exact");
    std::vector<RingElement> verts;
    RingElement v;
    for (const auto& tok : outline_tokens()[static_cast<int>(t)]) {
        verts.push_back(v);
        RingElement step = re_xi(rotation + tok.rot) * (*s.exact[static_cast<int>(tok.edge)]);
        v = (tok.sign > 0) ? v + step : v - step;
    }
    if (!v.is_zero()) throw std::logic_error("tile_boundary_exact: outline failed to close");
    return verts;
}

std::vector<std::complex<double>> hat_polygon(double alpha, double beta) {
    if (alpha < 0 || beta < 0 || (alpha == 0 && beta == 0))
        throw std::invalid_argument("hat_polygon: need alpha, beta >= 0, not both 0");
    const std::complex<double> i(0.0, 1.0);
    const std::complex<double> x = re_xi(1).direct(), x2 = re_xi(2).direct();
    return {alpha,          x * alpha,      -i * x * beta, -i * x2 * beta,
            -x2 * alpha,    -x * alpha,     -i * x * beta, -i * beta,
            -alpha,         x2 * alpha,     i * x2 * beta, 2.0 * i * x * beta,
            i * beta};
}

double polygon_area(const std::vector<std::complex<double>>& v) {
    double s = 0;
    size_t n = v.size();
    for (size_t i = 0; i < n; i++) {
        const auto& p = v[i];
        const auto& q = v[(i + 1) % n];
        s += p.real() * q.imag() - q.real() * p.imag();
    }
    return 0.5 * s;
}

}  // namespace capfam
