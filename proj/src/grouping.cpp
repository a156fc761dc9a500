#include "delpack/grouping.hpp"

#include <algorithm>
#include <cmath>

namespace delpack {

namespace {

const double kRatioLimit = 2.0 * std::sqrt(2.0);

std::vector<int> weak_components(const std::vector<int>& target, int* count)
{
    const int m = static_cast<int>(target.size());
    std::vector<int> parent(m);
    for (int i = 0; i < m; ++i)
        parent[i] = i;
    auto find = [&](int x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int i = 0; i < m; ++i)
        if (target[i] >= 0) {
            const int a = find(i), b = find(target[i]);
            if (a != b)
                parent[std::max(a, b)] = std::min(a, b);
        }
    std::vector<int> id(m, -1), comp(m);
    int c = 0;
    for (int i = 0; i < m; ++i) {
        const int root = find(i);
        if (id[root] < 0)
            id[root] = c++;
        comp[i] = id[root];
    }
    *count = c;
    return comp;
}

}  // namespace

RRRadii rr_radii(const DeloneTriangulation& t)
{
    RRRadii rr;
    rr.r = 0.5 * min_pair_distance(t);
    for (const MeshTriangle& tri : t.triangles)
        if (tri.interior)
            rr.R = std::max(rr.R, tri.metrics.circumradius);
    return rr;
}

ObtuseDigraph build_obtuse_digraph(const DeloneTriangulation& t, bool allow_ratio_exceeded)
{
    ObtuseDigraph g;
    g.radii = rr_radii(t);
    const bool ratio_ok = g.radii.ratio() <= kRatioLimit * (1 + 1e-12);
    if (!ratio_ok && !allow_ratio_exceeded)
        throw RatioExceeded("R/r = " + std::to_string(g.radii.ratio()) + " exceeds 2*sqrt(2)");

    const int m = static_cast<int>(t.triangles.size());
    g.target.assign(m, -1);
    g.sources.assign(m, {});
    std::vector<char> dangling(m, 0);
    for (int i = 0; i < m; ++i) {
        const MeshTriangle& tri = t.triangles[i];
        if (!tri.metrics.obtuse())
            continue;
        const int o = tri.neighbor[tri.metrics.longest_side];
        if (o == kBoundary)
            dangling[i] = 1;
        else
            g.target[i] = o;
    }

    int ncomp = 0;
    const std::vector<int> comp = weak_components(g.target, &ncomp);
    std::vector<char> comp_ok(ncomp, 1);
    for (int i = 0; i < m; ++i)
        if (!t.triangles[i].interior || dangling[i])
            comp_ok[comp[i]] = 0;

    std::vector<int> remap(ncomp, -1);
    g.active.assign(m, 0);
    g.component.assign(m, -1);
    for (int i = 0; i < m; ++i) {
        if (!comp_ok[comp[i]])
            continue;
        g.active[i] = 1;
        if (remap[comp[i]] < 0)
            remap[comp[i]] = g.component_count++;
        g.component[i] = remap[comp[i]];
    }
    for (int i = 0; i < m; ++i) {
        if (!g.active[i])
            g.target[i] = -1;
        else if (g.target[i] >= 0)
            g.sources[g.target[i]].push_back(i);
    }

    // Cycle detection along the out-pointers.
    std::vector<char> state(m, 0);
    for (int i = 0; i < m; ++i) {
        if (state[i])
            continue;
        std::vector<int> path;
        int cur = i;
        while (cur >= 0 && state[cur] == 0) {
            state[cur] = 1;
            path.push_back(cur);
            cur = g.target[cur];
        }
        if (cur >= 0 && state[cur] == 1) {
            if (ratio_ok)
                throw CycleDetected("cycle through triangle " + std::to_string(cur));
            g.longest_path = -1;
            return g;
        }
        for (int p : path)
            state[p] = 2;
    }

    // Longest path ending at each node, in topological order.
    std::vector<int> indeg(m, 0), depth(m, 0), order;
    for (int i = 0; i < m; ++i)
        if (g.target[i] >= 0)
            ++indeg[g.target[i]];
    for (int i = 0; i < m; ++i)
        if (indeg[i] == 0)
            order.push_back(i);
    for (std::size_t k = 0; k < order.size(); ++k) {
        const int i = order[k];
        const int o = g.target[i];
        if (o < 0)
            continue;
        depth[o] = std::max(depth[o], depth[i] + 1);
        if (--indeg[o] == 0)
            order.push_back(o);
    }
    for (int i = 0; i < m; ++i)
        g.longest_path = std::max(g.longest_path, depth[i]);
    std::vector<int> sizes(g.component_count, 0);
    for (int i = 0; i < m; ++i)
        if (g.component[i] >= 0)
            g.largest_component = std::max(g.largest_component, ++sizes[g.component[i]]);

    if (!ratio_ok)
        return g;
    g.invariants_checked = true;
    if (g.longest_path > kMaxPathEdges)
        throw PathTooLong("obtuse chain of " + std::to_string(g.longest_path) + " edges");
    const auto problems = digraph_violations(g, t);
    if (!problems.empty())
        throw InvariantViolation(problems.front());
    return g;
}

std::vector<std::string> digraph_violations(const ObtuseDigraph& g, const DeloneTriangulation& t)
{
    std::vector<std::string> out;
    const double p = 2.0 * g.radii.r;
    const double eps_len = 1e-9 * p * p;
    const int m = static_cast<int>(t.triangles.size());
    for (int i = 0; i < m; ++i) {
        if (!g.active[i])
            continue;
        const TriangleMetrics& mi = t.triangles[i].metrics;
        const int indeg = static_cast<int>(g.sources[i].size());
        if (indeg > 3)
            out.push_back("triangle " + std::to_string(i) + " has in-degree " + std::to_string(indeg));
        if (mi.obtuse() && indeg > 2)
            out.push_back("obtuse triangle " + std::to_string(i) + " has in-degree " + std::to_string(indeg));
        const int o = g.target[i];
        if (o < 0)
            continue;
        if (o == i)
            out.push_back("self loop at triangle " + std::to_string(i));
        const TriangleMetrics& mo = t.triangles[o].metrics;
        if (mo.obtuse()) {
            const double grow = mo.longest() * mo.longest() - mi.longest() * mi.longest();
            if (grow < p * p - eps_len)
                out.push_back("longest side does not grow enough along edge " + std::to_string(i) + " -> " +
                              std::to_string(o));
        }
    }
    if (g.longest_path > kMaxPathEdges)
        out.push_back("path of " + std::to_string(g.longest_path) + " edges");
    if (g.largest_component > kMaxComponentSize)
        out.push_back("component of " + std::to_string(g.largest_component) + " triangles");
    return out;
}

GroupingForest form_groups_unchecked(const ObtuseDigraph& g, const DeloneTriangulation& t)
{
    GroupingForest f;
    const int m = static_cast<int>(t.triangles.size());
    f.r = g.radii.r;
    const double p = 2.0 * f.r;
    f.tolerance = 1e-9 * p * p;
    const double two_r2 = 2.0 * f.r * f.r;
    for (int i = 0; i < m; ++i)
        if (g.active[i] && !t.triangles[i].metrics.obtuse())
            f.v0 = std::min(f.v0, t.triangles[i].metrics.area);

    f.class_of.assign(m, -1);
    auto is_leaf = [&](int s) { return t.triangles[s].metrics.obtuse() && g.sources[s].empty(); };

    for (int i = 0; i < m; ++i) {
        if (!g.active[i])
            continue;
        std::vector<int> leaves;
        for (int s : g.sources[i])
            if (is_leaf(s))
                leaves.push_back(s);
        if (leaves.empty())
            continue;
        TriangleClass c;
        c.hub = i;
        c.kind = t.triangles[i].metrics.obtuse() ? GroupCase::ObtuseHub : GroupCase::NonObtuseHub;
        c.members.push_back(i);
        c.members.insert(c.members.end(), leaves.begin(), leaves.end());
        const int cap = c.kind == GroupCase::ObtuseHub ? 2 : 3;
        if (static_cast<int>(leaves.size()) > cap)
            f.violations.push_back("class at triangle " + std::to_string(i) + " has " +
                                   std::to_string(leaves.size()) + " leaves");
        for (int x : c.members) {
            if (f.class_of[x] >= 0)
                f.violations.push_back("triangle " + std::to_string(x) + " assigned twice");
            f.class_of[x] = static_cast<int>(f.classes.size());
        }
        f.classes.push_back(std::move(c));
    }
    for (int i = 0; i < m; ++i) {
        if (!g.active[i] || f.class_of[i] >= 0)
            continue;
        TriangleClass c;
        c.hub = i;
        c.kind = t.triangles[i].metrics.obtuse() ? GroupCase::ObtuseSingle : GroupCase::NonObtuseSingle;
        c.members = {i};
        f.class_of[i] = static_cast<int>(f.classes.size());
        f.classes.push_back(std::move(c));
    }
    for (TriangleClass& c : f.classes) {
        double sum = 0.0;
        for (int x : c.members)
            sum += t.triangles[x].metrics.area;
        c.mean_area = sum / static_cast<double>(c.members.size());
        c.bound = c.kind == GroupCase::NonObtuseSingle ? f.v0 : two_r2;
        if (c.mean_area < c.bound - f.tolerance)
            f.violations.push_back("class at triangle " + std::to_string(c.hub) + " (case " +
                                   std::to_string(static_cast<int>(c.kind)) + ") has mean area " +
                                   std::to_string(c.mean_area) + " below " + std::to_string(c.bound));
    }
    return f;
}

GroupingForest form_groups(const ObtuseDigraph& g, const DeloneTriangulation& t)
{
    GroupingForest f = form_groups_unchecked(g, t);
    if (!f.violations.empty())
        throw InvariantViolation(f.violations.front());
    return f;
}

AreaCertificate average_area_certificate(const DeloneTriangulation& t, bool allow_ratio_exceeded)
{
    AreaCertificate c;
    const ObtuseDigraph g = build_obtuse_digraph(t, allow_ratio_exceeded);
    c.radii = g.radii;
    c.longest_path = g.longest_path;
    if (g.longest_path < 0) {
        c.violations.push_back("obtuse digraph has a cycle");
        return c;
    }
    GroupingForest f = form_groups_unchecked(g, t);
    if (!g.invariants_checked) {
        for (auto& v : digraph_violations(g, t))
            f.violations.push_back(v);
        c.violations.push_back("R/r exceeds 2*sqrt(2); bounds are not implied");
    }
    c.v0 = f.v0;
    double sum = 0.0;
    for (std::size_t i = 0; i < t.triangles.size(); ++i)
        if (g.active[i]) {
            sum += t.triangles[i].metrics.area;
            ++c.triangle_count;
        }
    c.mean_area = c.triangle_count ? sum / static_cast<double>(c.triangle_count) : 0.0;
    c.bound = std::min(f.v0, 2.0 * f.r * f.r);
    for (auto& v : f.violations)
        c.violations.push_back(v);
    if (c.triangle_count > 0 && c.mean_area < c.bound - f.tolerance)
        c.violations.push_back("global mean area below bound");
    c.classes = std::move(f.classes);
    c.pass = c.violations.empty() && c.triangle_count > 0;
    return c;
}

nlohmann::json to_json(const AreaCertificate& c)
{
    nlohmann::json j;
    j["r"] = c.radii.r;
    j["R"] = c.radii.R;
    j["ratio"] = c.radii.ratio();
    j["v0"] = std::isfinite(c.v0) ? nlohmann::json(c.v0) : nlohmann::json(nullptr);
    j["mean_area"] = c.mean_area;
    j["bound"] = c.bound;
    j["triangles"] = c.triangle_count;
    j["longest_path"] = c.longest_path;
    nlohmann::json classes = nlohmann::json::array();
    std::array<int, 5> counts{};
    for (const TriangleClass& k : c.classes) {
        classes.push_back({{"case", static_cast<int>(k.kind)}, {"size", k.members.size()}, {"mean", k.mean_area}});
        ++counts[static_cast<int>(k.kind)];
    }
    j["case_counts"] = {{"1", counts[1]}, {"2", counts[2]}, {"3", counts[3]}, {"4", counts[4]}};
    j["classes"] = std::move(classes);
    j["violations"] = c.violations;
    j["pass"] = c.pass;
    return j;
}

}  // namespace delpack
