#include "delpack/profiles.hpp"

#include "delpack/geom.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace delpack {

namespace {

const double kSqrt3 = std::sqrt(3.0);
const double kHalfSqrt2 = std::sqrt(0.5);
constexpr double kHypothesisTol = 1e-9;

double half_separation(double delta)
{
    if (delta > 2.0 + 1e-12)
        throw CoveringViolated("axial distance " + std::to_string(delta) + " exceeds 2");
    return 0.5 * std::sqrt(std::max(0.0, 4.0 - delta * delta));
}

double reduce(double t, double period)
{
    return t - period * std::round(t / period);
}

double custom_value(const StringProfile& p, double z)
{
    const std::size_t n = p.f_samples.size();
    const double period = 2.0 * p.d;
    double u = (z + p.d) / period;
    u -= std::floor(u);
    const double pos = u * static_cast<double>(n);
    std::size_t i = static_cast<std::size_t>(pos);
    if (i >= n)
        i = n - 1;
    const double frac = pos - static_cast<double>(i);
    return (1.0 - frac) * p.f_samples[i] + frac * p.f_samples[(i + 1) % n];
}

double custom_g(const StringProfile& p, double t)
{
    const std::size_t n = p.f_samples.size();
    const double h = 2.0 * p.d / static_cast<double>(n);
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double z = -p.d + static_cast<double>(i) * h;
        best = std::max(best, custom_value(p, z) + custom_value(p, z - t));
        best = std::max(best, custom_value(p, z + t) + custom_value(p, z));
    }
    return 0.5 * best;
}

double custom_lipschitz(const StringProfile& p)
{
    const std::size_t n = p.f_samples.size();
    const double h = 2.0 * p.d / static_cast<double>(n);
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        s = std::max(s, std::abs(p.f_samples[(i + 1) % n] - p.f_samples[i]) / h);
    return 0.5 * s;
}

// Lattice basis of a layer's axial lattice.
std::array<std::array<double, 2>, 2> layer_basis(StringProfile::Kind k)
{
    if (k == StringProfile::Kind::SquareLayer)
        return {{{2.0, 0.0}, {0.0, 2.0}}};
    return {{{2.0, 0.0}, {1.0, kSqrt3}}};
}

double area_of_sides(double a, double b, double c)
{
    try {
        return area_from_sides(a, b, c);
    } catch (const TriangleInequalityViolated&) {
        return 0.0;
    }
}

}  // namespace

StringProfile StringProfile::string1d(double d)
{
    if (!(d >= 1.0))
        throw ProfileError("ball strings need d >= 1 so that consecutive balls do not overlap");
    StringProfile p;
    p.kind = Kind::String1D;
    p.d = d;
    return p;
}

StringProfile StringProfile::square_layer()
{
    StringProfile p;
    p.kind = Kind::SquareLayer;
    return p;
}

StringProfile StringProfile::tri_layer()
{
    StringProfile p;
    p.kind = Kind::TriLayer;
    return p;
}

StringProfile StringProfile::custom(double half_period, std::vector<double> samples)
{
    if (!(half_period > 0) || samples.size() < 3)
        throw ProfileError("custom profile needs a positive period and at least three samples");
    for (double f : samples)
        if (!(f >= kHalfSqrt2 - kHypothesisTol && f <= 1.0 + kHypothesisTol))
            throw HypothesisViolated("custom profile values must lie in [1/sqrt(2), 1]");
    for (std::size_t i = 1; i + 1 < samples.size(); ++i)
        if (samples[i - 1] + samples[i + 1] - 2.0 * samples[i] > 1e-12)
            throw HypothesisViolated("custom profile is not concave");
    StringProfile p;
    p.kind = Kind::CustomConcave;
    p.d = half_period;
    p.f_samples = std::move(samples);
    return p;
}

int StringProfile::axis_dim() const
{
    return (kind == Kind::SquareLayer || kind == Kind::TriLayer) ? 2 : 1;
}

const char* to_string(StringProfile::Kind k)
{
    switch (k) {
    case StringProfile::Kind::String1D: return "string1d";
    case StringProfile::Kind::SquareLayer: return "square_layer";
    case StringProfile::Kind::TriLayer: return "tri_layer";
    case StringProfile::Kind::CustomConcave: return "custom";
    }
    return "?";
}

StringProfile profile_from_json(const nlohmann::json& j)
{
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "string1d" || kind == "string")
        return StringProfile::string1d(j.at("d").get<double>());
    if (kind == "square_layer")
        return StringProfile::square_layer();
    if (kind == "tri_layer")
        return StringProfile::tri_layer();
    if (kind == "custom")
        return StringProfile::custom(j.at("d").get<double>(), j.at("f_samples").get<std::vector<double>>());
    throw ProfileError("unknown profile kind: " + kind);
}

nlohmann::json to_json(const StringProfile& p)
{
    nlohmann::json j{{"kind", to_string(p.kind)}};
    if (p.kind == StringProfile::Kind::String1D || p.kind == StringProfile::Kind::CustomConcave)
        j["d"] = p.d;
    if (p.kind == StringProfile::Kind::CustomConcave)
        j["f_samples"] = p.f_samples;
    return j;
}

double axial_distance(const StringProfile& p, AxialOffset o)
{
    switch (p.kind) {
    case StringProfile::Kind::String1D:
    case StringProfile::Kind::CustomConcave:
        return std::abs(reduce(o[0], 2.0 * p.d));
    case StringProfile::Kind::SquareLayer:
        return std::hypot(reduce(o[0], 2.0), reduce(o[1], 2.0));
    case StringProfile::Kind::TriLayer: {
        const auto b = layer_basis(p.kind);
        const double v = o[1] / b[1][1];
        const double u = (o[0] - v * b[1][0]) / b[0][0];
        double best = 1e300;
        for (int dv = -1; dv <= 2; ++dv)
            for (int du = -1; du <= 2; ++du) {
                const double kv = std::floor(v) + dv, ku = std::floor(u) + du;
                best = std::min(best, std::hypot(o[0] - ku * b[0][0] - kv * b[1][0], o[1] - kv * b[1][1]));
            }
        return best;
    }
    }
    return 0.0;
}

double g_value(const StringProfile& p, AxialOffset offset)
{
    if (p.kind == StringProfile::Kind::CustomConcave)
        return custom_g(p, offset[0]);
    return half_separation(axial_distance(p, offset));
}

ProfileExtremes m_M_of(const StringProfile& p)
{
    ProfileExtremes e;
    e.M = g_value(p, {0.0, 0.0});
    e.m = e.M;
    if (p.axis_dim() == 1) {
        const double period = 2.0 * p.d;
        const int n = 4096;
        double lo = 0.0, hi = period;
        double best_t = 0.0;
        for (int round = 0; round < 6; ++round) {
            const double step = (hi - lo) / n;
            for (int i = 0; i <= n; ++i) {
                const double t = lo + i * step;
                const double v = g_value(p, {t, 0.0});
                if (v < e.m) {
                    e.m = v;
                    best_t = t;
                }
            }
            lo = best_t - 2 * step;
            hi = best_t + 2 * step;
        }
        e.argmin = {best_t, 0.0};
    } else {
        const auto b = layer_basis(p.kind);
        const int n = 256;
        double ulo = 0, uhi = 1, vlo = 0, vhi = 1, bu = 0, bv = 0;
        for (int round = 0; round < 6; ++round) {
            const double su = (uhi - ulo) / n, sv = (vhi - vlo) / n;
            for (int j = 0; j <= n; ++j)
                for (int i = 0; i <= n; ++i) {
                    const double u = ulo + i * su, v = vlo + j * sv;
                    const double val = g_value(p, {u * b[0][0] + v * b[1][0], u * b[0][1] + v * b[1][1]});
                    if (val < e.m) {
                        e.m = val;
                        bu = u;
                        bv = v;
                    }
                }
            ulo = bu - 2 * su;
            uhi = bu + 2 * su;
            vlo = bv - 2 * sv;
            vhi = bv + 2 * sv;
        }
        e.argmin = {bu * b[0][0] + bv * b[1][0], bu * b[0][1] + bv * b[1][1]};
    }
    if (e.m < kHalfSqrt2 - kHypothesisTol)
        throw HypothesisViolated("m(L) = " + std::to_string(e.m) + " is below 1/sqrt(2)");
    return e;
}

namespace {

struct Box
{
    std::array<double, 4> lo{};
    std::array<double, 4> hi{};
    double lower = 0.0;
};

struct BoxOrder
{
    bool operator()(const Box& a, const Box& b) const
    {
        if (a.lower != b.lower)
            return a.lower > b.lower;
        return a.lo > b.lo;
    }
};

class V0Search
{
public:
    V0Search(const StringProfile& p, double m) : p_(p), m_(m)
    {
        dim_ = 2 * p.axis_dim();
        if (p.axis_dim() == 2)
            basis_ = layer_basis(p.kind);
        if (p.kind == StringProfile::Kind::CustomConcave)
            lip_ = custom_lipschitz(p);
    }

    int dim() const { return dim_; }

    // Offsets of the two independent pairs and of their sum, in axial coordinates.
    std::array<AxialOffset, 3> offsets(const std::array<double, 4>& x) const
    {
        if (dim_ == 2)
            return {AxialOffset{x[0], 0.0}, AxialOffset{x[1], 0.0}, AxialOffset{x[0] + x[1], 0.0}};
        auto cart = [&](double u, double v) {
            return AxialOffset{u * basis_[0][0] + v * basis_[1][0], u * basis_[0][1] + v * basis_[1][1]};
        };
        return {cart(x[0], x[1]), cart(x[2], x[3]), cart(x[0] + x[2], x[1] + x[3])};
    }

    std::array<double, 3> sides(const std::array<double, 4>& x) const
    {
        const auto o = offsets(x);
        return {2 * g_value(p_, o[0]), 2 * g_value(p_, o[1]), 2 * g_value(p_, o[2])};
    }

    double area(const std::array<double, 4>& x) const
    {
        const auto s = sides(x);
        return area_of_sides(s[0], s[1], s[2]);
    }

    double upper_coordinate() const { return dim_ == 2 ? 2.0 * p_.d : 1.0; }

    // Certified lower bound of the area over a box. All admissible side triples
    // have ratio at most sqrt(2), so the area is monotone in each side there.
    double lower_bound(const Box& b) const
    {
        std::array<double, 3> low_side{};
        if (dim_ == 2) {
            const double lo[3] = {b.lo[0], b.lo[1], b.lo[0] + b.lo[1]};
            const double hi[3] = {b.hi[0], b.hi[1], b.hi[0] + b.hi[1]};
            for (int k = 0; k < 3; ++k) {
                if (p_.kind == StringProfile::Kind::CustomConcave) {
                    const double mid = 0.5 * (lo[k] + hi[k]);
                    const double g = custom_g(p_, mid) - lip_ * 0.5 * (hi[k] - lo[k]);
                    low_side[k] = 2 * std::max(g, m_);
                } else {
                    low_side[k] = 2 * half_separation(max_delta_1d(lo[k], hi[k]));
                }
            }
        } else {
            std::array<double, 4> mid{};
            for (int i = 0; i < 4; ++i)
                mid[i] = 0.5 * (b.lo[i] + b.hi[i]);
            const auto o = offsets(mid);
            const double lu = std::hypot(basis_[0][0], basis_[0][1]);
            const double lv = std::hypot(basis_[1][0], basis_[1][1]);
            const double r1 = 0.5 * ((b.hi[0] - b.lo[0]) * lu + (b.hi[1] - b.lo[1]) * lv);
            const double r2 = 0.5 * ((b.hi[2] - b.lo[2]) * lu + (b.hi[3] - b.lo[3]) * lv);
            const double rad[3] = {r1, r2, r1 + r2};
            for (int k = 0; k < 3; ++k) {
                const double delta = std::min(axial_distance(p_, o[k]) + rad[k], delta_max_);
                low_side[k] = 2 * std::max(half_separation(delta), m_);
            }
        }
        return area_of_sides(low_side[0], low_side[1], low_side[2]);
    }

    void set_delta_max(double v) { delta_max_ = v; }

private:
    // Largest distance to the nearest multiple of 2d over [lo, hi].
    double max_delta_1d(double lo, double hi) const
    {
        const double period = 2.0 * p_.d;
        const double k = std::ceil((lo - p_.d) / period);
        if (p_.d + k * period <= hi)
            return p_.d;
        return std::max(std::abs(reduce(lo, period)), std::abs(reduce(hi, period)));
    }

    const StringProfile& p_;
    double m_;
    int dim_ = 2;
    std::array<std::array<double, 2>, 2> basis_{};
    double lip_ = 0.0;
    double delta_max_ = 2.0;
};

}  // namespace

V0Result v0_of(const StringProfile& p, const V0Options& opt)
{
    const ProfileExtremes ext = m_M_of(p);
    V0Search s(p, ext.m);
    s.set_delta_max(std::sqrt(std::max(0.0, 4.0 - 4.0 * ext.m * ext.m)) + 1e-12);
    const int dim = s.dim();
    const int per_dim = dim == 2 ? opt.grid : std::max(2, opt.grid / 16);
    const double top = s.upper_coordinate();

    V0Result res;
    res.upper = 1e300;
    std::array<double, 4> best_x{};
    std::priority_queue<Box, std::vector<Box>, BoxOrder> queue;

    auto consider = [&](Box& b) {
        std::array<double, 4> mid{};
        for (int i = 0; i < dim; ++i)
            mid[i] = 0.5 * (b.lo[i] + b.hi[i]);
        const double a = s.area(mid);
        if (a < res.upper) {
            res.upper = a;
            best_x = mid;
        }
        b.lower = s.lower_bound(b);
        queue.push(b);
        ++res.boxes;
    };

    std::array<int, 4> idx{};
    const double step = top / per_dim;
    while (true) {
        Box b;
        for (int i = 0; i < dim; ++i) {
            b.lo[i] = idx[i] * step;
            b.hi[i] = (idx[i] + 1) * step;
        }
        consider(b);
        int k = 0;
        while (k < dim && ++idx[k] == per_dim)
            idx[k++] = 0;
        if (k == dim)
            break;
    }

    res.lower = queue.top().lower;
    while (!queue.empty() && res.boxes < opt.max_boxes) {
        Box b = queue.top();
        queue.pop();
        res.lower = b.lower;
        if (b.lower >= res.upper - opt.tolerance) {
            res.converged = true;
            break;
        }
        int widest = 0;
        for (int i = 1; i < dim; ++i)
            if (b.hi[i] - b.lo[i] > b.hi[widest] - b.lo[widest])
                widest = i;
        const double cut = 0.5 * (b.lo[widest] + b.hi[widest]);
        Box left = b, right = b;
        left.hi[widest] = cut;
        right.lo[widest] = cut;
        consider(left);
        consider(right);
    }
    if (queue.empty())
        res.converged = true;
    res.lower = std::min(res.lower, res.upper);
    res.value = res.upper;
    const auto o = s.offsets(best_x);
    res.offsets = {o[0], o[1]};
    res.sides = s.sides(best_x);
    return res;
}

double fill_density(const StringProfile& p)
{
    switch (p.kind) {
    case StringProfile::Kind::String1D: return 2.0 / (3.0 * p.d);
    case StringProfile::Kind::SquareLayer: return M_PI / 8.0;
    case StringProfile::Kind::TriLayer: return M_PI / (4.0 * kSqrt3);
    case StringProfile::Kind::CustomConcave: {
        const std::size_t n = p.f_samples.size();
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double a = p.f_samples[i], b = p.f_samples[(i + 1) % n];
            sum += (a * a + a * b + b * b) / 3.0;
        }
        return sum / static_cast<double>(n);
    }
    }
    return 0.0;
}

double density_lower_bound(const StringProfile& p)
{
    const ProfileExtremes e = m_M_of(p);
    const double q = 4.0 * e.m * e.m - 1.0;
    return M_PI * fill_density(p) / (2.0 * std::sqrt(q));
}

}  // namespace delpack
