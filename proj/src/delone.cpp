#include "delpack/delone.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <tuple>
#include <unordered_map>

#include "json.hpp"

namespace delpack {

namespace {

// Flat triangle store used while building. n[i] is the neighbour across the
// side opposite v[i].
struct Cell
{
    std::array<int, 3> v{};
    std::array<int, 3> n{-1, -1, -1};
    bool dead = false;
};

class Builder
{
public:
    explicit Builder(const std::vector<Point2>& pts) : pts_(pts) {}

    void run()
    {
        const int n = static_cast<int>(pts_.size());
        BBox box{pts_[0].x, pts_[0].y, pts_[0].x, pts_[0].y};
        for (const Point2& p : pts_) {
            box.xmin = std::min(box.xmin, p.x);
            box.xmax = std::max(box.xmax, p.x);
            box.ymin = std::min(box.ymin, p.y);
            box.ymax = std::max(box.ymax, p.y);
        }
        const double cx = 0.5 * (box.xmin + box.xmax);
        const double cy = 0.5 * (box.ymin + box.ymax);
        const double span = std::max({box.xmax - box.xmin, box.ymax - box.ymin, 1.0});
        const double big = 32.0 * span;
        pts_.push_back({cx - 2 * big, cy - big});
        pts_.push_back({cx + 2 * big, cy - big});
        pts_.push_back({cx, cy + 2 * big});
        cells_.push_back(Cell{{n, n + 1, n + 2}, {-1, -1, -1}, false});

        for (int idx : insertion_order(box, n))
            insert(idx);

        for (Cell& c : cells_)
            for (int k = 0; k < 3; ++k)
                if (c.v[k] >= n)
                    c.dead = true;
        pts_.resize(n);
        merge_cocircular();
    }

    const std::vector<Point2>& points() const { return pts_; }
    const std::vector<Cell>& cells() const { return cells_; }

private:
    std::vector<int> insertion_order(const BBox& box, int n) const
    {
        // Serpentine order over a grid keeps the walk short and is deterministic.
        const int g = std::max(1, static_cast<int>(std::sqrt(n / 2.0)));
        const double w = std::max(box.xmax - box.xmin, 1e-300);
        const double h = std::max(box.ymax - box.ymin, 1e-300);
        std::vector<std::tuple<int, double, int>> keys;
        keys.reserve(n);
        for (int i = 0; i < n; ++i) {
            int gx = std::min(g - 1, static_cast<int>((pts_[i].x - box.xmin) / w * g));
            int gy = std::min(g - 1, static_cast<int>((pts_[i].y - box.ymin) / h * g));
            const int row = gy;
            const int col = (row % 2 == 0) ? gx : g - 1 - gx;
            const double along = (row % 2 == 0) ? pts_[i].x : -pts_[i].x;
            keys.emplace_back(row * g + col, along, i);
        }
        std::sort(keys.begin(), keys.end());
        std::vector<int> order;
        order.reserve(n);
        for (auto& k : keys)
            order.push_back(std::get<2>(k));
        return order;
    }

    int locate(Point2 p, int* on_edge)
    {
        int t = last_;
        if (t < 0 || cells_[t].dead)
            t = 0;
        const std::size_t cap = 4 * cells_.size() + 64;
        for (std::size_t step = 0; step < cap; ++step) {
            const Cell& c = cells_[t];
            int next = -1;
            int zero_edge = -1;
            for (int r = 0; r < 3; ++r) {
                const int i = (r + static_cast<int>(step)) % 3;
                const int o = orientation(pts_[c.v[(i + 1) % 3]], pts_[c.v[(i + 2) % 3]], p);
                if (o < 0) {
                    next = c.n[i];
                    break;
                }
                if (o == 0)
                    zero_edge = i;
            }
            if (next < 0) {
                *on_edge = zero_edge;
                return t;
            }
            t = next;
        }
        for (int i = 0; i < static_cast<int>(cells_.size()); ++i) {
            const Cell& c = cells_[i];
            int zero_edge = -1;
            bool inside = true;
            for (int e = 0; e < 3 && inside; ++e) {
                const int o = orientation(pts_[c.v[(e + 1) % 3]], pts_[c.v[(e + 2) % 3]], p);
                if (o < 0)
                    inside = false;
                else if (o == 0)
                    zero_edge = e;
            }
            if (inside) {
                *on_edge = zero_edge;
                return i;
            }
        }
        throw DeloneError("point location failed");
    }

    int slot_of(int cell, int neighbor) const
    {
        for (int k = 0; k < 3; ++k)
            if (cells_[cell].n[k] == neighbor)
                return k;
        return -1;
    }

    void relink(int cell, int old_neighbor, int new_neighbor)
    {
        if (cell < 0)
            return;
        const int k = slot_of(cell, old_neighbor);
        cells_[cell].n[k] = new_neighbor;
    }

    void insert(int p)
    {
        int edge = -1;
        const int t = locate(pts_[p], &edge);
        std::vector<std::pair<int, int>> stack;
        if (edge < 0) {
            const Cell c = cells_[t];
            const int t1 = static_cast<int>(cells_.size());
            const int t2 = t1 + 1;
            cells_.push_back({});
            cells_.push_back({});
            // t: (p, v1, v2), t1: (p, v2, v0), t2: (p, v0, v1)
            cells_[t] = Cell{{p, c.v[1], c.v[2]}, {c.n[0], t1, t2}, false};
            cells_[t1] = Cell{{p, c.v[2], c.v[0]}, {c.n[1], t2, t}, false};
            cells_[t2] = Cell{{p, c.v[0], c.v[1]}, {c.n[2], t, t1}, false};
            relink(c.n[1], t, t1);
            relink(c.n[2], t, t2);
            stack = {{t, 0}, {t1, 0}, {t2, 0}};
        } else {
            // p lies on the side opposite v[edge] of t.
            const Cell c = cells_[t];
            const int a = c.v[edge], b = c.v[(edge + 1) % 3], d = c.v[(edge + 2) % 3];
            const int o = c.n[edge];
            const int nb = c.n[(edge + 1) % 3];  // across (d, a)
            const int nd = c.n[(edge + 2) % 3];  // across (a, b)
            const int t1 = static_cast<int>(cells_.size());
            cells_.push_back({});
            if (o < 0)
                throw DeloneError("point on the outer boundary");
            const Cell oc = cells_[o];
            const int ko = slot_of(o, t);
            const int e = oc.v[ko];
            const int oe1 = oc.n[(ko + 1) % 3];  // across (b, e) ... depends on winding
            const int oe2 = oc.n[(ko + 2) % 3];
            // o is (e, d, b) in counter-clockwise order when ko points at e.
            const int t2 = static_cast<int>(cells_.size());
            cells_.push_back({});
            // t: (p, d, a)  t1: (p, a, b)  o: (p, b, e)  t2: (p, e, d)
            cells_[t] = Cell{{p, d, a}, {nb, t1, t2}, false};
            cells_[t1] = Cell{{p, a, b}, {nd, o, t}, false};
            relink(nd, t, t1);
            // In o, v[ko]=e, v[ko+1]=d', v[ko+2]=b' with d'=b of t side ordering.
            const int ov1 = oc.v[(ko + 1) % 3];
            const int n_across_ov1 = oe1;  // side opposite ov1: (ov2, e)
            const int n_across_ov2 = oe2;  // side opposite ov2: (e, ov1)
            // ov1 and ov2 are b and d in some order; t's side (b, d) is traversed d->b in o.
            int across_be, across_ed;
            if (ov1 == d) {
                across_be = n_across_ov1;
                across_ed = n_across_ov2;
            } else {
                across_be = n_across_ov2;
                across_ed = n_across_ov1;
            }
            cells_[o] = Cell{{p, b, e}, {across_be, t2, t1}, false};
            cells_[t2] = Cell{{p, e, d}, {across_ed, t, o}, false};
            relink(across_ed, o, t2);
            stack = {{t, 0}, {t1, 0}, {o, 0}, {t2, 0}};
        }

        while (!stack.empty()) {
            auto [ct, k] = stack.back();
            stack.pop_back();
            legalize(ct, k, stack);
        }
        last_ = t;
    }

    void legalize(int t, int k, std::vector<std::pair<int, int>>& stack)
    {
        const int o = cells_[t].n[k];
        if (o < 0)
            return;
        const Cell c = cells_[t];
        const Cell oc = cells_[o];
        const int ko = slot_of(o, t);
        const int q = oc.v[ko];
        const int p = c.v[k];
        const int a = c.v[(k + 1) % 3];
        const int b = c.v[(k + 2) % 3];
        if (incircle(pts_[p], pts_[a], pts_[b], pts_[q]) != CircleSide::Inside)
            return;
        // Quad p, a, q, b (counter-clockwise); replace diagonal ab with pq.
        const int n_pa = c.n[(k + 2) % 3];  // across side (p, a) opposite b
        const int n_bp = c.n[(k + 1) % 3];  // across side (b, p) opposite a
        int n_aq = -1, n_qb = -1;
        for (int j = 0; j < 3; ++j) {
            if (oc.v[j] == b)
                n_aq = oc.n[j];
            if (oc.v[j] == a)
                n_qb = oc.n[j];
        }
        cells_[t] = Cell{{p, a, q}, {n_aq, o, n_pa}, false};
        cells_[o] = Cell{{p, q, b}, {n_qb, n_bp, t}, false};
        relink(n_aq, o, t);
        relink(n_bp, t, o);
        stack.emplace_back(t, 0);
        stack.emplace_back(o, 0);
    }

    void merge_cocircular()
    {
        const int m = static_cast<int>(cells_.size());
        std::vector<int> parent(m);
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int x) {
            while (parent[x] != x)
                x = parent[x] = parent[parent[x]];
            return x;
        };
        bool any = false;
        for (int t = 0; t < m; ++t) {
            if (cells_[t].dead)
                continue;
            for (int k = 0; k < 3; ++k) {
                const int o = cells_[t].n[k];
                if (o < 0 || o < t || cells_[o].dead)
                    continue;
                const int q = cells_[o].v[slot_of(o, t)];
                const Cell& c = cells_[t];
                if (incircle(pts_[c.v[0]], pts_[c.v[1]], pts_[c.v[2]], pts_[q]) == CircleSide::OnCircle) {
                    parent[find(o)] = find(t);
                    any = true;
                }
            }
        }
        if (!any)
            return;
        std::map<int, std::vector<int>> groups;
        for (int t = 0; t < m; ++t)
            if (!cells_[t].dead && find(t) != t)
                groups[find(t)].push_back(t);
        for (auto& [root, members] : groups) {
            members.push_back(root);
            refan(members);
        }
        rebuild_adjacency();
    }

    void refan(const std::vector<int>& members)
    {
        // Boundary of the group: directed sides whose neighbour lies outside it.
        std::vector<char> in(cells_.size(), 0);
        for (int t : members)
            in[t] = 1;
        std::unordered_map<int, int> next;
        for (int t : members) {
            const Cell& c = cells_[t];
            for (int k = 0; k < 3; ++k) {
                const int o = c.n[k];
                if (o >= 0 && in[o])
                    continue;
                next[c.v[(k + 1) % 3]] = c.v[(k + 2) % 3];
            }
        }
        int start = next.begin()->first;
        for (auto& kv : next)
            if (lex_less(pts_[kv.first], pts_[start]) ||
                (pts_[kv.first] == pts_[start] && kv.first < start))
                start = kv.first;
        std::vector<int> ring{start};
        for (int cur = next.at(start); cur != start; cur = next.at(cur)) {
            ring.push_back(cur);
            if (ring.size() > next.size())
                return;
        }
        if (ring.size() != next.size() || ring.size() != members.size() + 2)
            return;
        for (std::size_t i = 1; i + 1 < ring.size(); ++i)
            if (orientation(pts_[ring[0]], pts_[ring[i]], pts_[ring[i + 1]]) <= 0)
                return;
        for (std::size_t i = 1; i + 1 < ring.size(); ++i) {
            Cell& c = cells_[members[i - 1]];
            c.v = {ring[0], ring[i], ring[i + 1]};
            c.n = {-1, -1, -1};
        }
    }

    void rebuild_adjacency()
    {
        std::unordered_map<long long, std::pair<int, int>> sides;
        const long long stride = static_cast<long long>(pts_.size()) + 1;
        for (int t = 0; t < static_cast<int>(cells_.size()); ++t) {
            Cell& c = cells_[t];
            c.n = {-1, -1, -1};
            if (c.dead)
                continue;
            for (int k = 0; k < 3; ++k)
                sides[c.v[(k + 1) % 3] * stride + c.v[(k + 2) % 3]] = {t, k};
        }
        for (int t = 0; t < static_cast<int>(cells_.size()); ++t) {
            Cell& c = cells_[t];
            if (c.dead)
                continue;
            for (int k = 0; k < 3; ++k) {
                auto it = sides.find(c.v[(k + 2) % 3] * stride + c.v[(k + 1) % 3]);
                if (it != sides.end())
                    c.n[k] = it->second.first;
            }
        }
    }

    std::vector<Point2> pts_;
    std::vector<Cell> cells_;
    int last_ = 0;
};

void check_points(const std::vector<Point2>& pts)
{
    if (pts.size() < 3)
        throw TooFewPoints("at least three points are required");
    std::vector<Point2> sorted = pts;
    std::sort(sorted.begin(), sorted.end(), lex_less);
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i] == sorted[i - 1])
            throw DuplicatePoints("duplicate point at (" + std::to_string(sorted[i].x) + ", " +
                                  std::to_string(sorted[i].y) + ")");
    for (const Point2& p : pts)
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            throw DeloneError("non-finite coordinate");
}

MeshTriangle make_triangle(std::array<int, 3> v, std::array<Point2, 3> pos)
{
    MeshTriangle t;
    t.v = v;
    t.pos = pos;
    t.neighbor = {kBoundary, kBoundary, kBoundary};
    t.metrics = triangle_metrics(pos[0], pos[1], pos[2]);
    return t;
}

DeloneTriangulation build_window(const std::vector<Point2>& points, const Domain& domain)
{
    Builder b(points);
    b.run();
    DeloneTriangulation out;
    out.domain = domain;
    out.points = points;
    std::vector<int> remap(b.cells().size(), -1);
    for (std::size_t i = 0; i < b.cells().size(); ++i) {
        const Cell& c = b.cells()[i];
        if (c.dead)
            continue;
        remap[i] = static_cast<int>(out.triangles.size());
        out.triangles.push_back(
            make_triangle(c.v, {points[c.v[0]], points[c.v[1]], points[c.v[2]]}));
    }
    const double tol = 1e-12 * std::max({std::abs(domain.bbox.xmax), std::abs(domain.bbox.xmin),
                                         std::abs(domain.bbox.ymax), std::abs(domain.bbox.ymin), 1.0});
    for (std::size_t i = 0; i < b.cells().size(); ++i) {
        if (remap[i] < 0)
            continue;
        MeshTriangle& t = out.triangles[remap[i]];
        for (int k = 0; k < 3; ++k) {
            const int o = b.cells()[i].n[k];
            t.neighbor[k] = o >= 0 ? remap[o] : kBoundary;
        }
        const Point2 cc = t.metrics.circumcenter;
        const double r = t.metrics.circumradius;
        t.interior = cc.x - r >= domain.bbox.xmin - tol && cc.x + r <= domain.bbox.xmax + tol &&
                     cc.y - r >= domain.bbox.ymin - tol && cc.y + r <= domain.bbox.ymax + tol;
    }
    return out;
}

struct Lift
{
    int orig;
    int ox;
    int oy;
    bool operator<(const Lift& o) const { return std::tie(orig, ox, oy) < std::tie(o.orig, o.ox, o.oy); }
    bool operator==(const Lift& o) const { return orig == o.orig && ox == o.ox && oy == o.oy; }
};

using LiftKey = std::array<Lift, 3>;

LiftKey canonical_key(std::array<Lift, 3> l)
{
    std::sort(l.begin(), l.end());
    const int sx = l[0].ox, sy = l[0].oy;
    for (Lift& x : l) {
        x.ox -= sx;
        x.oy -= sy;
    }
    return l;
}

DeloneTriangulation build_torus(std::vector<Point2> points, const Domain& domain)
{
    const double px = domain.period_x, py = domain.period_y;
    if (!(px > 0 && py > 0))
        throw DeloneError("torus periods must be positive");
    for (Point2& p : points)
        p = wrap_torus(p, px, py);
    check_points(points);
    const int n = static_cast<int>(points.size());

    std::vector<Point2> ghosts;
    std::vector<Lift> lifts;
    ghosts.reserve(9 * n);
    for (int oy = -1; oy <= 1; ++oy)
        for (int ox = -1; ox <= 1; ++ox)
            for (int i = 0; i < n; ++i) {
                ghosts.push_back({points[i].x + ox * px, points[i].y + oy * py});
                lifts.push_back({i, ox, oy});
            }

    Builder b(ghosts);
    b.run();
    const auto& cells = b.cells();

    auto lifts_of = [&](const Cell& c) {
        return std::array<Lift, 3>{lifts[c.v[0]], lifts[c.v[1]], lifts[c.v[2]]};
    };

    DeloneTriangulation out;
    out.domain = domain;
    out.points = points;
    std::map<LiftKey, int> index;
    std::vector<int> kept_cells;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const Cell& c = cells[i];
        if (c.dead)
            continue;
        auto l = lifts_of(c);
        const Lift anchor = *std::min_element(l.begin(), l.end());
        if (anchor.ox != 0 || anchor.oy != 0)
            continue;
        MeshTriangle t = make_triangle({l[0].orig, l[1].orig, l[2].orig},
                                       {ghosts[c.v[0]], ghosts[c.v[1]], ghosts[c.v[2]]});
        const Point2 cc = t.metrics.circumcenter;
        const double r = t.metrics.circumradius;
        if (cc.x - r < -px || cc.x + r > 2 * px || cc.y - r < -py || cc.y + r > 2 * py)
            throw DeloneError("torus periods too small for the point spacing");
        index[canonical_key(l)] = static_cast<int>(out.triangles.size());
        out.triangles.push_back(t);
        kept_cells.push_back(static_cast<int>(i));
    }
    for (std::size_t j = 0; j < kept_cells.size(); ++j) {
        const Cell& c = cells[kept_cells[j]];
        for (int k = 0; k < 3; ++k) {
            const int o = c.n[k];
            if (o < 0 || cells[o].dead)
                throw DeloneError("torus neighbour outside the ghost region");
            auto it = index.find(canonical_key(lifts_of(cells[o])));
            if (it == index.end())
                throw DeloneError("torus neighbour has no canonical representative");
            out.triangles[j].neighbor[k] = it->second;
        }
    }
    return out;
}

bool same_point(const DeloneTriangulation& t, int tri, int k, Point2 q, int idx)
{
    return t.triangles[tri].v[k] == idx && dist2(t.triangles[tri].pos[k], q) < 1e-24;
}

}  // namespace

Domain Domain::torus(double px, double py)
{
    Domain d;
    d.kind = Kind::Torus;
    d.period_x = px;
    d.period_y = py;
    d.bbox = {0.0, 0.0, px, py};
    return d;
}

Domain Domain::window(BBox box, double margin)
{
    if (margin < 0)
        throw DeloneError("window margin must be non-negative");
    Domain d;
    d.kind = Kind::Window;
    d.bbox = box;
    d.margin = margin;
    return d;
}

Point2 wrap_torus(Point2 p, double px, double py)
{
    double x = std::fmod(p.x, px);
    double y = std::fmod(p.y, py);
    if (x < 0)
        x += px;
    if (y < 0)
        y += py;
    if (x >= px)
        x -= px;
    if (y >= py)
        y -= py;
    return {x, y};
}

DeloneTriangulation build_delone(const std::vector<Point2>& points, const Domain& domain)
{
    if (domain.is_torus())
        return build_torus(points, domain);
    check_points(points);
    bool collinear = true;
    for (std::size_t i = 2; i < points.size() && collinear; ++i)
        collinear = orientation(points[0], points[1], points[i]) == 0;
    if (collinear)
        throw TooFewPoints("all points are collinear");
    return build_window(points, domain);
}

DeloneReport validate_delone(const DeloneTriangulation& t)
{
    DeloneReport rep;
    const bool torus = t.domain.is_torus();
    const double px = t.domain.period_x, py = t.domain.period_y;
    const int n = static_cast<int>(t.points.size());
    const int m = static_cast<int>(t.triangles.size());

    if (torus && m != 2 * n)
        rep.structural.push_back("torus triangle count " + std::to_string(m) + " differs from 2n = " +
                                 std::to_string(2 * n));

    for (int i = 0; i < m; ++i) {
        const MeshTriangle& tri = t.triangles[i];
        if (orientation(tri.pos[0], tri.pos[1], tri.pos[2]) <= 0)
            rep.structural.push_back("triangle " + std::to_string(i) + " is not counter-clockwise");
        const int range = torus ? 1 : 0;
        for (int j = 0; j < n; ++j) {
            for (int oy = -range; oy <= range; ++oy)
                for (int ox = -range; ox <= range; ++ox) {
                    const Point2 q{t.points[j].x + ox * px, t.points[j].y + oy * py};
                    if (same_point(t, i, 0, q, j) || same_point(t, i, 1, q, j) || same_point(t, i, 2, q, j))
                        continue;
                    if (incircle(tri.pos[0], tri.pos[1], tri.pos[2], q) == CircleSide::Inside)
                        rep.empty_circle.push_back({i, j});
                }
        }
        for (int k = 0; k < 3; ++k) {
            const int o = tri.neighbor[k];
            if (o == kBoundary)
                continue;
            const MeshTriangle& other = t.triangles[o];
            int back = -1;
            for (int kk = 0; kk < 3; ++kk)
                if (other.neighbor[kk] == i && other.v[(kk + 1) % 3] == tri.v[(k + 2) % 3] &&
                    other.v[(kk + 2) % 3] == tri.v[(k + 1) % 3])
                    back = kk;
            if (back < 0) {
                rep.structural.push_back("adjacency of triangle " + std::to_string(i) + " is not symmetric");
                continue;
            }
            if (o < i)
                continue;
            const double sum = tri.metrics.angles[k] + other.metrics.angles[back];
            if (sum > M_PI + 1e-9)
                rep.angular.push_back({i, o, sum});
        }
    }
    return rep;
}

double min_pair_distance(const DeloneTriangulation& t)
{
    double best = std::numeric_limits<double>::infinity();
    for (const MeshTriangle& tri : t.triangles)
        for (double s : tri.metrics.sides)
            best = std::min(best, s);
    return best;
}

std::vector<Point2> read_points_csv(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::vector<Point2> pts;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        if (first) {
            first = false;
            std::string h;
            for (char ch : line)
                if (!std::isspace(static_cast<unsigned char>(ch)))
                    h += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
            if (h == "x,y")
                continue;
        }
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        Point2 p;
        if (!(ss >> p.x >> p.y))
            throw std::runtime_error("malformed CSV row: " + line);
        pts.push_back(p);
    }
    return pts;
}

std::vector<Point2> read_points_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    const nlohmann::json j = nlohmann::json::parse(in);
    std::vector<Point2> pts;
    for (const auto& row : j) {
        if (!row.is_array() || row.size() != 2)
            throw std::runtime_error("expected [x, y] pairs");
        pts.push_back({row[0].get<double>(), row[1].get<double>()});
    }
    return pts;
}

std::vector<Point2> read_points(const std::string& path)
{
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json")
        return read_points_json(path);
    return read_points_csv(path);
}

}  // namespace delpack
