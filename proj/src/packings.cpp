#include "delpack/packings.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <unordered_map>

namespace delpack {

namespace {

const double kSqrt2 = std::sqrt(2.0);
const double kSqrt3 = std::sqrt(3.0);

using Matrix = std::vector<VecN>;

// Determinant and inverse by Gauss-Jordan elimination with partial pivoting.
double invert(Matrix a, Matrix* inv)
{
    const int n = static_cast<int>(a.size());
    Matrix r(n, VecN(n, 0.0));
    for (int i = 0; i < n; ++i)
        r[i][i] = 1.0;
    double det = 1.0;
    for (int c = 0; c < n; ++c) {
        int piv = c;
        for (int i = c + 1; i < n; ++i)
            if (std::abs(a[i][c]) > std::abs(a[piv][c]))
                piv = i;
        if (a[piv][c] == 0.0)
            return 0.0;
        if (piv != c) {
            std::swap(a[piv], a[c]);
            std::swap(r[piv], r[c]);
            det = -det;
        }
        const double p = a[c][c];
        det *= p;
        for (int j = 0; j < n; ++j) {
            a[c][j] /= p;
            r[c][j] /= p;
        }
        for (int i = 0; i < n; ++i) {
            if (i == c)
                continue;
            const double f = a[i][c];
            if (f == 0.0)
                continue;
            for (int j = 0; j < n; ++j) {
                a[i][j] -= f * a[c][j];
                r[i][j] -= f * r[c][j];
            }
        }
    }
    if (inv)
        *inv = r;
    return det;
}

double length(const VecN& v)
{
    double s = 0.0;
    for (double x : v)
        s += x * x;
    return std::sqrt(s);
}

struct CellKey
{
    std::array<long long, 4> c{};
    bool operator==(const CellKey& o) const { return c == o.c; }
};

struct CellHash
{
    std::size_t operator()(const CellKey& k) const
    {
        std::size_t h = 1469598103934665603ULL;
        for (long long v : k.c)
            h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ULL;
        return h;
    }
};

void check_range(bool ok, const char* what)
{
    if (!ok)
        throw OutOfRange(what);
}

}  // namespace

double LatticeBasis::cell_volume() const
{
    const double det = std::abs(invert(vectors, nullptr));
    if (!(det > 0))
        throw std::invalid_argument("lattice basis vectors are linearly dependent");
    return det;
}

double LatticeBasis::gram_determinant() const
{
    Matrix g(vectors.size(), VecN(vectors.size(), 0.0));
    for (std::size_t i = 0; i < vectors.size(); ++i)
        for (std::size_t j = 0; j < vectors.size(); ++j)
            for (int k = 0; k < dim; ++k)
                g[i][j] += vectors[i][k] * vectors[j][k];
    return invert(g, nullptr);
}

double PeriodicPacking::density() const
{
    return static_cast<double>(motif.size()) * unit_ball_volume(periods.dim) / periods.cell_volume();
}

PeriodicPacking as_packing(const LatticeBasis& b)
{
    PeriodicPacking p;
    p.periods = b;
    p.motif = {VecN(b.dim, 0.0)};
    p.description = b.description;
    return p;
}

double unit_ball_volume(int dim)
{
    switch (dim) {
    case 1: return 2.0;
    case 2: return M_PI;
    case 3: return 4.0 * M_PI / 3.0;
    case 4: return M_PI * M_PI / 2.0;
    default: return std::pow(M_PI, dim / 2.0) / std::tgamma(dim / 2.0 + 1.0);
    }
}

PackingCheck verify_packing(const PeriodicPacking& p, double window_radius)
{
    const int n = p.periods.dim;
    if (n < 1 || n > 4)
        throw std::invalid_argument("packings of dimension 1 to 4 are supported");
    Matrix inv;
    if (invert(p.periods.vectors, &inv) == 0.0)
        throw std::invalid_argument("lattice basis vectors are linearly dependent");

    double motif_reach = 0.0;
    for (const VecN& m : p.motif)
        motif_reach = std::max(motif_reach, length(m));
    std::array<long long, 4> bound{};
    for (int i = 0; i < n; ++i) {
        double col = 0.0;
        for (int j = 0; j < n; ++j)
            col += inv[j][i] * inv[j][i];
        bound[i] = static_cast<long long>(std::ceil((window_radius + motif_reach) * std::sqrt(col))) + 1;
    }

    std::vector<VecN> centers;
    std::array<long long, 4> k{};
    std::function<void(int)> walk = [&](int level) {
        if (level == n) {
            for (const VecN& m : p.motif) {
                VecN x = m;
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j)
                        x[j] += static_cast<double>(k[i]) * p.periods.vectors[i][j];
                if (length(x) <= window_radius)
                    centers.push_back(std::move(x));
            }
            return;
        }
        for (k[level] = -bound[level]; k[level] <= bound[level]; ++k[level])
            walk(level + 1);
    };
    walk(0);

    double shortest = 1e300;
    for (const VecN& v : p.periods.vectors)
        shortest = std::min(shortest, length(v));
    const double cell = std::max(2.0, shortest) * (1.0 + 1e-9);
    std::unordered_map<CellKey, std::vector<int>, CellHash> grid;
    auto key_of = [&](const VecN& x) {
        CellKey key;
        for (int j = 0; j < n; ++j)
            key.c[j] = static_cast<long long>(std::floor(x[j] / cell));
        return key;
    };
    for (int i = 0; i < static_cast<int>(centers.size()); ++i)
        grid[key_of(centers[i])].push_back(i);

    PackingCheck res;
    res.window_radius = window_radius;
    res.centers = centers.size();
    double best2 = 1e300;
    std::size_t touching = 0;
    int span = 1;
    for (int j = 1; j < n; ++j)
        span *= 3;
    span *= 3;
    for (int i = 0; i < static_cast<int>(centers.size()); ++i) {
        const CellKey base = key_of(centers[i]);
        for (int code = 0; code < span; ++code) {
            CellKey nb = base;
            int c = code;
            for (int j = 0; j < n; ++j) {
                nb.c[j] += c % 3 - 1;
                c /= 3;
            }
            auto it = grid.find(nb);
            if (it == grid.end())
                continue;
            for (int other : it->second) {
                if (other <= i)
                    continue;
                double s = 0.0;
                for (int j = 0; j < n; ++j) {
                    const double dx = centers[i][j] - centers[other][j];
                    s += dx * dx;
                }
                best2 = std::min(best2, s);
                if (std::abs(std::sqrt(s) - 2.0) <= kDistanceTolerance)
                    ++touching;
            }
        }
    }
    res.min_center_distance = std::sqrt(best2);
    res.touching_pairs = touching;
    res.pass = centers.size() >= 2 && res.min_center_distance >= 2.0 - kDistanceTolerance;

    // Smoothly weighted count: the weight (1 - |x|^2/W^2)^2 integrates to
    // V_n W^n * 8 / ((n + 2)(n + 4)).
    double weighted = 0.0;
    const double w2 = window_radius * window_radius;
    for (const VecN& x : centers) {
        const double t = 1.0 - length(x) * length(x) / w2;
        weighted += t * t;
    }
    res.measured_density = weighted * (n + 2) * (n + 4) / (8.0 * std::pow(window_radius, n));
    return res;
}

double density_string_3d(double d)
{
    check_range(d >= 1.0 && d <= kSqrt2, "d must lie in [1, sqrt(2)]");
    return M_PI / (3.0 * d * std::sqrt(3.0 - d * d));
}

double density_planar_strings(double d)
{
    check_range(d > kSqrt3 && d < 2.0, "d must lie in (sqrt(3), 2)");
    return 2.0 * M_PI / (d * (std::sqrt(4.0 - d * d) + d * kSqrt3));
}

double density_planar_strings_closure(double d)
{
    check_range(d >= kSqrt3 && d <= 2.0, "d must lie in [sqrt(3), 2]");
    return 2.0 * M_PI / (d * (std::sqrt(std::max(0.0, 4.0 - d * d)) + d * kSqrt3));
}

double density_ball_4d() { return M_PI * M_PI / 16.0; }

LatticeBasis lattice_theorem_2_1(double d)
{
    check_range(d >= 1.0 && d <= kSqrt2, "d must lie in [1, sqrt(2)]");
    const double h = std::sqrt(3.0 - d * d);
    return {3, {{2.0, 0.0, 0.0}, {0.0, 2.0 * d, 0.0}, {1.0, d, h}}, "rectangular pyramid lattice"};
}

LatticeBasis lattice_theorem_2_1_tetrahedral(double d)
{
    check_range(d >= 1.0 && d <= kSqrt2, "d must lie in [1, sqrt(2)]");
    const double h = std::sqrt(3.0 - d * d);
    return {3, {{2.0, 0.0, 0.0}, {1.0, d, h}, {1.0, -d, h}}, "tetrahedral lattice"};
}

PeriodicPacking alternating_layer_packing(double d)
{
    const LatticeBasis t = lattice_theorem_2_1_tetrahedral(d);
    const VecN& a = t.vectors[0];
    const VecN& p = t.vectors[1];
    const VecN& q = t.vectors[2];
    // Split a into its component in the layer plane span{p, q} and the normal part.
    const double pp = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
    const double qq = q[0] * q[0] + q[1] * q[1] + q[2] * q[2];
    const double pq = p[0] * q[0] + p[1] * q[1] + p[2] * q[2];
    const double ap = a[0] * p[0] + a[1] * p[1] + a[2] * p[2];
    const double aq = a[0] * q[0] + a[1] * q[1] + a[2] * q[2];
    const double det = pp * qq - pq * pq;
    const double s = (ap * qq - aq * pq) / det;
    const double u = (aq * pp - ap * pq) / det;
    VecN in_plane(3), normal(3), other(3);
    for (int i = 0; i < 3; ++i) {
        in_plane[i] = s * p[i] + u * q[i];
        normal[i] = a[i] - in_plane[i];
        // Over the other triangle of the rhombic cell.
        other[i] = p[i] + q[i] - in_plane[i] + normal[i];
    }
    PeriodicPacking out;
    out.periods = {3, {p, q, {a[0] + other[0], a[1] + other[1], a[2] + other[2]}}, "two-layer period stacking"};
    out.motif = {{0.0, 0.0, 0.0}, a};
    out.description = "alternating layer stacking";
    return out;
}

PlanarConstruction planar_construction(double d)
{
    check_range(d > kSqrt3 && d < 2.0, "d must lie in (sqrt(3), 2)");
    PlanarConstruction c;
    c.d = d;
    const double s = std::sqrt(4.0 - d * d);
    c.A0 = {0.0, 0.0};
    c.A1 = {2.0 * d, 0.0};
    c.B0 = {d, s};
    c.C1 = {(3.0 * d + kSqrt3 * s) / 2.0, (kSqrt3 * d + s) / 2.0};
    c.packing.periods = {2, {{2.0 * d, 0.0}, {c.C1[0], c.C1[1]}}, "planar string rows"};
    c.packing.motif = {{0.0, 0.0}, {c.B0[0], c.B0[1]}};
    c.packing.description = "planar strings of spacing 2d";
    return c;
}

LatticeBasis lattice_4d_square_layers()
{
    return {4,
            {{0.0, 0.0, 2.0, 0.0}, {0.0, 0.0, 0.0, 2.0}, {kSqrt2, 0.0, 1.0, 1.0}, {0.0, kSqrt2, 1.0, -1.0}},
            "square layers over a square transversal lattice"};
}

LatticeBasis lattice_4d_tri_layers()
{
    // Layer lattice spanned by (2, 0) and (1, sqrt 3) in the last two coordinates.
    // Transversal steps of length 2 sqrt(2/3) carry the layer to a deep hole; the
    // angle between them has cosine 1/4 so that two steps to the same hole class
    // differ by exactly 2.
    const double t = 2.0 * std::sqrt(2.0 / 3.0);
    const double hx = 1.0, hy = 1.0 / kSqrt3;
    return {4,
            {{0.0, 0.0, 2.0, 0.0},
             {0.0, 0.0, 1.0, kSqrt3},
             {t, 0.0, hx, hy},
             {t * 0.25, t * std::sqrt(15.0) / 4.0, hx, hy}},
            "triangular layers over a rhombic transversal lattice"};
}

ConjectureConstruction conjecture_2_10_construction(double d)
{
    check_range(d >= kSqrt2 && d * d - 2.0 <= 2.0, "d must satisfy sqrt(2) <= d and d^2 - 2 <= 2");
    ConjectureConstruction c;
    c.d = d;
    c.delta = 0.5 * std::asin((d * d - 2.0) / 2.0);
    const double cs = std::cos(c.delta), sn = std::sin(c.delta);
    c.basis = {3, {{2 * cs, 2 * sn, 0.0}, {2 * sn, 2 * cs, 0.0}, {cs + sn, cs + sn, d}}, "rhombic prism lattice"};
    c.density = (4.0 * M_PI / 3.0) / (4.0 * d * std::cos(2.0 * c.delta));
    c.touching_identity = 2.0 * (cs - sn) * (cs - sn) + d * d;
    return c;
}

nlohmann::json to_json(const PackingCheck& c)
{
    return {{"unit_radius", c.unit_radius},       {"window_radius", c.window_radius},
            {"min_distance", c.min_center_distance}, {"centers", c.centers},
            {"touching_pairs", c.touching_pairs},  {"density_measured", c.measured_density},
            {"packing_pass", c.pass}};
}

nlohmann::json to_json(const LatticeBasis& b)
{
    return {{"dim", b.dim}, {"vectors", b.vectors}, {"description", b.description}, {"cell_volume", b.cell_volume()}};
}

}  // namespace delpack
