#include "delpack/arcgeom.hpp"
#include "delpack/delone.hpp"
#include "delpack/generators.hpp"
#include "delpack/grouping.hpp"
#include "delpack/oracles.hpp"
#include "delpack/packings.hpp"
#include "delpack/profiles.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

using namespace delpack;
using nlohmann::json;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitError = 2;

void write_text(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << text;
}

// The report goes to stdout and, when requested, to a file.
int emit(const json& report, const std::string& out_path)
{
    const std::string text = report.dump(2) + "\n";
    std::cout << text;
    if (!out_path.empty())
        write_text(out_path, text);
    return report.value("pass", false) ? 0 : kExitFail;
}

double parse_real(const std::string& s)
{
    if (s == "sqrt2")
        return std::sqrt(2.0);
    if (s == "sqrt3")
        return std::sqrt(3.0);
    if (s == "sqrt5over2")
        return std::sqrt(2.5);
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size() || !std::isfinite(v))
        throw std::invalid_argument("not a number: " + s);
    return v;
}

// ---------------------------------------------------------------- group

struct GroupArgs
{
    std::string points;
    std::string lattice;
    bool poisson = false;
    int ensemble = 0;
    double side = 2.0;
    double aspect = 1.5;
    int cells = 10;
    double jitter = 0.0;
    double r = 1.0;
    double period = 40.0;
    double saturation = 2.0;
    std::uint64_t seed = 1;
    bool allow_ratio_exceeded = false;
    std::string out;
    std::string svg;
};

const char* class_color(int kind)
{
    switch (kind) {
    case 1:
        return "#9ecae1";
    case 2:
        return "#fdae6b";
    case 3:
        return "#a1d99b";
    case 4:
        return "#fc9272";
    default:
        return "#d9d9d9";
    }
}

Point2 centroid(const MeshTriangle& t)
{
    return {(t.pos[0].x + t.pos[1].x + t.pos[2].x) / 3, (t.pos[0].y + t.pos[1].y + t.pos[2].y) / 3};
}

std::string group_svg(const DeloneTriangulation& t, const ObtuseDigraph& g, const AreaCertificate& cert)
{
    std::vector<int> kind(t.triangles.size(), 0);
    for (const TriangleClass& c : cert.classes)
        for (int m : c.members)
            kind[m] = static_cast<int>(c.kind);

    double xmin = INFINITY, ymin = INFINITY, xmax = -INFINITY, ymax = -INFINITY;
    for (const MeshTriangle& tri : t.triangles)
        for (const Point2& p : tri.pos) {
            xmin = std::min(xmin, p.x);
            ymin = std::min(ymin, p.y);
            xmax = std::max(xmax, p.x);
            ymax = std::max(ymax, p.y);
        }
    if (t.triangles.empty())
        xmin = ymin = 0, xmax = ymax = 1;
    const double pad = 1.0;
    const double w = xmax - xmin + 2 * pad;
    const double h = ymax - ymin + 2 * pad;
    const double scale = 800.0 / std::max(w, h);

    std::ostringstream os;
    os << std::setprecision(10);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << scale * w << "\" height=\"" << scale * h
       << "\" viewBox=\"" << xmin - pad << ' ' << -(ymax + pad) << ' ' << w << ' ' << h << "\">\n";
    os << "<g transform=\"scale(1,-1)\">\n";
    for (std::size_t i = 0; i < t.triangles.size(); ++i) {
        const MeshTriangle& tri = t.triangles[i];
        os << "<polygon points=\"";
        for (const Point2& p : tri.pos)
            os << p.x << ',' << p.y << ' ';
        os << "\" style=\"fill:" << class_color(kind[i]) << ";stroke:#636363;stroke-width:0.02\"/>\n";
    }
    for (std::size_t i = 0; i < g.target.size(); ++i) {
        if (g.target[i] < 0)
            continue;
        const Point2 a = centroid(t.triangles[i]);
        // The target may lie in another torus lift, so the arrow ends on the shared side.
        const int side = g.target[i] == t.triangles[i].neighbor[0]   ? 0
                         : g.target[i] == t.triangles[i].neighbor[1] ? 1
                                                                      : 2;
        const Point2 p = t.triangles[i].pos[(side + 1) % 3];
        const Point2 q = t.triangles[i].pos[(side + 2) % 3];
        const Point2 mid{(p.x + q.x) / 2, (p.y + q.y) / 2};
        os << "<line x1=\"" << a.x << "\" y1=\"" << a.y << "\" x2=\"" << mid.x << "\" y2=\"" << mid.y
           << "\" style=\"stroke:#08306b;stroke-width:0.05\"/>\n";
        os << "<circle cx=\"" << mid.x << "\" cy=\"" << mid.y << "\" r=\"0.08\" style=\"fill:#08306b\"/>\n";
    }
    for (const Point2& p : t.points)
        os << "<circle cx=\"" << p.x << "\" cy=\"" << p.y << "\" r=\"0.06\" style=\"fill:#252525\"/>\n";
    os << "</g>\n</svg>\n";
    return os.str();
}

json certify_point_set(const PointSet& ps, bool allow, const std::string& svg_path)
{
    const DeloneTriangulation t = build_delone(ps.points, ps.domain);
    AreaCertificate cert = average_area_certificate(t, allow);
    json j = to_json(cert);
    j["points"] = ps.points.size();
    j["description"] = ps.description;
    if (!svg_path.empty())
        write_text(svg_path, group_svg(t, build_obtuse_digraph(t, allow), cert));
    return j;
}

PointSet points_from_file(const std::string& path)
{
    PointSet ps;
    ps.points = read_points(path);
    if (ps.points.empty())
        throw std::invalid_argument("no points in " + path);
    BBox box{ps.points[0].x, ps.points[0].y, ps.points[0].x, ps.points[0].y};
    for (const Point2& p : ps.points) {
        box.xmin = std::min(box.xmin, p.x);
        box.ymin = std::min(box.ymin, p.y);
        box.xmax = std::max(box.xmax, p.x);
        box.ymax = std::max(box.ymax, p.y);
    }
    ps.domain = Domain::window(box);
    ps.description = "points from " + path;
    return ps;
}

int run_group(const GroupArgs& a)
{
    const int sources = !a.points.empty() + !a.lattice.empty() + a.poisson + (a.ensemble > 0);
    if (sources != 1)
        throw std::invalid_argument("give exactly one of --points, --lattice, --poisson, --ensemble");

    json report;
    if (a.ensemble > 0) {
        json members = json::array();
        bool pass = true;
        std::size_t violations = 0;
        for (int i = 0; i < a.ensemble; ++i) {
            const PointSet ps = random_rr_system(a.seed, i);
            json m = certify_point_set(ps, a.allow_ratio_exceeded, "");
            pass = pass && m.at("pass").get<bool>();
            violations += m.at("violations").size();
            m.erase("classes");
            members.push_back(std::move(m));
        }
        report = {{"command", "group"}, {"seed", a.seed},        {"ensemble", a.ensemble},
                  {"members", members}, {"violations", violations}, {"pass", pass}};
        return emit(report, a.out);
    }

    PointSet ps;
    if (!a.points.empty()) {
        ps = points_from_file(a.points);
    } else if (!a.lattice.empty()) {
        LatticeParams lp;
        lp.kind = parse_lattice_kind(a.lattice);
        lp.side = a.side;
        lp.aspect = a.aspect;
        lp.cells_x = lp.cells_y = a.cells;
        lp.jitter = a.jitter;
        lp.seed = a.seed;
        ps = lattice_points(lp);
    } else {
        PoissonParams pp;
        pp.period_x = pp.period_y = a.period;
        pp.r = a.r;
        pp.saturation = a.saturation;
        pp.seed = a.seed;
        ps = poisson_disk(pp);
    }
    report = certify_point_set(ps, a.allow_ratio_exceeded, a.svg);
    report["command"] = "group";
    report["seed"] = a.seed;
    return emit(report, a.out);
}

// ---------------------------------------------------------------- oracle

struct OracleArgs
{
    std::vector<std::string> selector;
    std::string case_id;
    std::string resolution = "default";
    std::string radius_bound;
    double tolerance = kOracleTolerance;
    std::string out;
};

int run_oracle(const OracleArgs& a)
{
    std::string id = a.case_id;
    std::vector<std::string> words = a.selector;
    if (!words.empty() && words.front() == "run")
        words.erase(words.begin());
    if (id.empty())
        id = words.empty() ? "all" : words.front();
    else if (!words.empty() && words.front() != id)
        throw std::invalid_argument("conflicting case selectors");

    const Resolution res = resolution_from_string(a.resolution);
    if (id == "all") {
        if (!a.radius_bound.empty())
            throw std::invalid_argument("--radius-bound applies to a single case");
        json j = to_json(verify_all(res, a.tolerance));
        j["command"] = "oracle";
        return emit(j, a.out);
    }
    if (id == "list") {
        json j = json::array();
        for (const LemmaCase& c : list_cases())
            j.push_back(to_json(c));
        return emit({{"command", "oracle"}, {"cases", j}, {"pass", true}}, a.out);
    }
    OracleOptions opt;
    opt.tolerance = a.tolerance;
    if (!a.radius_bound.empty())
        opt.radius_bound = parse_real(a.radius_bound);
    json j = to_json(run_case(id, res, opt));
    j["command"] = "oracle";
    return emit(j, a.out);
}

// ---------------------------------------------------------------- density and construct

struct PackingArgs
{
    std::string family;
    std::string d;
    double window = 20.0;
    std::string out;
};

json packing_json(const PeriodicPacking& p, double window)
{
    const PackingCheck check = verify_packing(p, window);
    json j = to_json(check);
    j["periods"] = to_json(p.periods);
    j["motif_size"] = p.motif.size();
    j["packing_description"] = p.description;
    return j;
}

double required_d(const PackingArgs& a)
{
    if (a.d.empty())
        throw std::invalid_argument("--d is required for family " + a.family);
    return parse_real(a.d);
}

int run_density(const PackingArgs& a)
{
    json j;
    double closed = 0.0;
    std::optional<PeriodicPacking> witness;
    if (a.family == "string3d") {
        const double d = required_d(a);
        closed = density_string_3d(d);
        witness = as_packing(lattice_theorem_2_1(d));
        j["d"] = d;
    } else if (a.family == "planar") {
        const double d = required_d(a);
        closed = density_planar_strings(d);
        witness = planar_construction(d).packing;
        j["d"] = d;
    } else if (a.family == "ball4d") {
        closed = density_ball_4d();
        witness = as_packing(lattice_4d_square_layers());
        j["d"] = nullptr;
    } else if (a.family == "conjecture210") {
        const double d = required_d(a);
        const ConjectureConstruction c = conjecture_2_10_construction(d);
        closed = c.density;
        witness = as_packing(c.basis);
        j["d"] = d;
        j["label"] = c.label;
    } else {
        throw std::invalid_argument("unknown density family: " + a.family);
    }
    const PackingCheck check = verify_packing(*witness, a.window);
    j["command"] = "density";
    j["family"] = a.family;
    j["density_closed_form"] = closed;
    j["density_measured"] = check.measured_density;
    j["packing_pass"] = check.pass;
    j["min_distance"] = check.min_center_distance;
    j["window_radius"] = a.window;
    j["pass"] = check.pass;
    return emit(j, a.out);
}

int run_construct(const PackingArgs& a)
{
    json j;
    PeriodicPacking p;
    if (a.family == "theorem21") {
        const double d = required_d(a);
        const LatticeBasis b = lattice_theorem_2_1(d);
        const LatticeBasis t = lattice_theorem_2_1_tetrahedral(d);
        p = as_packing(b);
        j["d"] = d;
        j["basis"] = to_json(b);
        j["tetrahedral_basis"] = to_json(t);
        j["density"] = density_string_3d(d);
    } else if (a.family == "alternating") {
        const double d = required_d(a);
        p = alternating_layer_packing(d);
        j["d"] = d;
        j["density"] = density_string_3d(d);
    } else if (a.family == "planar") {
        const double d = required_d(a);
        const PlanarConstruction c = planar_construction(d);
        p = c.packing;
        j["d"] = d;
        j["A0"] = c.A0;
        j["A1"] = c.A1;
        j["B0"] = c.B0;
        j["C1"] = c.C1;
        j["density"] = density_planar_strings(d);
    } else if (a.family == "conjecture210") {
        const double d = required_d(a);
        const ConjectureConstruction c = conjecture_2_10_construction(d);
        p = as_packing(c.basis);
        j["d"] = d;
        j["label"] = c.label;
        j["delta"] = c.delta;
        j["basis"] = to_json(c.basis);
        j["density"] = c.density;
        j["touching_identity"] = c.touching_identity;
    } else if (a.family == "lattice4d-square" || a.family == "lattice4d-tri") {
        const LatticeBasis b = a.family == "lattice4d-square" ? lattice_4d_square_layers() : lattice_4d_tri_layers();
        p = as_packing(b);
        j["basis"] = to_json(b);
        j["density"] = density_ball_4d();
    } else {
        throw std::invalid_argument("unknown construction: " + a.family);
    }
    const PackingCheck check = verify_packing(p, a.window);
    j["command"] = "construct";
    j["family"] = a.family;
    j["check"] = to_json(check);
    j["pass"] = check.pass;
    return emit(j, a.out);
}

// ---------------------------------------------------------------- profile

struct ProfileArgs
{
    std::string kind = "string1d";
    std::string d = "1";
    std::string file;
    double tolerance = 1e-10;
    std::string out;
};

int run_profile(const ProfileArgs& a)
{
    StringProfile p;
    if (!a.file.empty()) {
        std::ifstream in(a.file);
        if (!in)
            throw std::invalid_argument("cannot read " + a.file);
        p = profile_from_json(json::parse(in));
    } else if (a.kind == "string1d") {
        p = StringProfile::string1d(parse_real(a.d));
    } else if (a.kind == "square") {
        p = StringProfile::square_layer();
    } else if (a.kind == "tri") {
        p = StringProfile::tri_layer();
    } else {
        throw std::invalid_argument("unknown profile kind: " + a.kind);
    }
    const ProfileExtremes ext = m_M_of(p);
    V0Options vo;
    vo.tolerance = a.tolerance;
    const V0Result v0 = v0_of(p, vo);
    json j;
    j["command"] = "profile";
    j["profile"] = to_json(p);
    j["m"] = ext.m;
    j["M"] = ext.M;
    j["argmin"] = ext.argmin;
    j["v0"] = {{"value", v0.value},     {"lower", v0.lower}, {"upper", v0.upper},
               {"sides", v0.sides},     {"offsets", v0.offsets}, {"boxes", v0.boxes},
               {"converged", v0.converged}};
    j["fill_density"] = fill_density(p);
    j["density_lower_bound"] = density_lower_bound(p);
    j["pass"] = v0.converged;
    return emit(j, a.out);
}

// ---------------------------------------------------------------- planar-proof

struct PlanarArgs
{
    std::string d = "1.9";
    int depth = 12;
    double inflate = 0.0;
    std::string out;
    std::string svg;
};

int run_planar(const PlanarArgs& a)
{
    CertifyOptions opt;
    opt.depth = a.depth;
    opt.inflate = a.inflate;
    const CertificateReport r = certify_planar_theorem(parse_real(a.d), opt);
    if (!a.svg.empty())
        write_text(a.svg, to_svg(r));
    json j = to_json(r);
    j["command"] = "planar-proof";
    return emit(j, a.out);
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Delone triangulation certificates, lemma oracles and packing constructions"};
    app.require_subcommand(1);

    GroupArgs ga;
    CLI::App* group = app.add_subcommand("group", "average triangle area certificate for a point set");
    group->add_option("--points", ga.points, "CSV (x,y) or JSON point file")->check(CLI::ExistingFile);
    group->add_option("--lattice", ga.lattice, "square, triangular or rectangular");
    group->add_flag("--poisson", ga.poisson, "saturated Poisson-disk set on a torus");
    group->add_option("--ensemble", ga.ensemble, "number of random (r,R)-systems to certify");
    group->add_option("--side", ga.side, "lattice side length");
    group->add_option("--aspect", ga.aspect, "rectangular cell height / width");
    group->add_option("--cells", ga.cells, "lattice periods per direction");
    group->add_option("--jitter", ga.jitter, "uniform coordinate jitter");
    group->add_option("--r", ga.r, "Poisson-disk packing radius");
    group->add_option("--period", ga.period, "Poisson-disk torus side");
    group->add_option("--saturation", ga.saturation, "Poisson-disk largest empty circle");
    group->add_option("--seed", ga.seed, "random seed");
    group->add_flag("--allow-ratio-exceeded", ga.allow_ratio_exceeded, "skip the R/r <= 2 sqrt(2) check");
    group->add_option("--out", ga.out, "JSON report path");
    group->add_option("--svg", ga.svg, "SVG figure path");

    OracleArgs oa;
    CLI::App* oracle = app.add_subcommand("oracle", "numerical checks of the triangle area lemmas");
    oracle->add_option("selector", oa.selector, "all, list, a case id, or run");
    oracle->add_option("--case", oa.case_id, "case id");
    oracle->add_option("--resolution", oa.resolution, "coarse, default or fine")
        ->check(CLI::IsMember({"coarse", "default", "fine"}));
    oracle->add_option("--radius-bound", oa.radius_bound, "circumradius bound: a number, sqrt2 or sqrt5over2");
    oracle->add_option("--tolerance", oa.tolerance, "absolute tolerance on constants");
    oracle->add_option("--out", oa.out, "JSON report path");

    PackingArgs da;
    CLI::App* density = app.add_subcommand("density", "closed-form density checked against a witness packing");
    density->add_option("family", da.family, "string3d, planar, ball4d or conjecture210")->required();
    density->add_option("--d", da.d, "string half spacing");
    density->add_option("--window", da.window, "verification window radius");
    density->add_option("--out", da.out, "JSON report path");

    PackingArgs ca;
    CLI::App* construct = app.add_subcommand("construct", "build and verify a packing construction");
    construct->add_option("family", ca.family,
                          "theorem21, alternating, planar, conjecture210, lattice4d-square or lattice4d-tri")
        ->required();
    construct->add_option("--d", ca.d, "string half spacing");
    construct->add_option("--window", ca.window, "verification window radius");
    construct->add_option("--out", ca.out, "JSON report path");

    ProfileArgs pa;
    CLI::App* profile = app.add_subcommand("profile", "separation extremes and least triangle area of a profile");
    profile->add_option("--kind", pa.kind, "string1d, square or tri");
    profile->add_option("--d", pa.d, "string half spacing");
    profile->add_option("--file", pa.file, "profile JSON {kind, d, f_samples}")->check(CLI::ExistingFile);
    profile->add_option("--tolerance", pa.tolerance, "bracket width for the least area");
    profile->add_option("--out", pa.out, "JSON report path");

    PlanarArgs pla;
    CLI::App* planar = app.add_subcommand("planar-proof", "certify the planar string packing bound");
    planar->add_option("--d", pla.d, "string half spacing in (sqrt3, 2)");
    planar->add_option("--depth", pla.depth, "subdivision depth");
    planar->add_option("--inflate", pla.inflate, "enlarge the sumset (negative control)");
    planar->add_option("--out", pla.out, "JSON report path");
    planar->add_option("--svg", pla.svg, "SVG figure path");

    CLI11_PARSE(app, argc, argv);

    std::string out_path;
    std::string command;
    try {
        if (group->parsed()) {
            command = "group", out_path = ga.out;
            return run_group(ga);
        }
        if (oracle->parsed()) {
            command = "oracle", out_path = oa.out;
            return run_oracle(oa);
        }
        if (density->parsed()) {
            command = "density", out_path = da.out;
            return run_density(da);
        }
        if (construct->parsed()) {
            command = "construct", out_path = ca.out;
            return run_construct(ca);
        }
        if (profile->parsed()) {
            command = "profile", out_path = pa.out;
            return run_profile(pa);
        }
        command = "planar-proof", out_path = pla.out;
        return run_planar(pla);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        try {
            emit({{"command", command}, {"error", e.what()}, {"pass", false}}, out_path);
        } catch (const std::exception&) {
        }
        return kExitError;
    }
}
