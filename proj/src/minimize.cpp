#include "delpack/minimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace delpack {

namespace {

// Visits every point of a tensor grid with n[i] points spanning [a[i], b[i]].
template <class Fn>
void for_each_grid_point(const std::vector<double>& a, const std::vector<double>& b, const std::vector<int>& n, Fn fn)
{
    const std::size_t dim = a.size();
    std::vector<int> idx(dim, 0);
    std::vector<double> x(dim);
    while (true) {
        for (std::size_t i = 0; i < dim; ++i)
            x[i] = n[i] == 1 ? (a[i] + b[i]) / 2 : a[i] + (b[i] - a[i]) * idx[i] / (n[i] - 1);
        fn(x, idx);
        std::size_t k = dim;
        while (k > 0) {
            --k;
            if (++idx[k] < n[k])
                break;
            idx[k] = 0;
            if (k == 0)
                return;
        }
        if (dim == 0)
            return;
    }
}

}  // namespace

MinResult grid_minimize(const BoxObjective& f, const std::vector<double>& lo, const std::vector<double>& hi,
                        const GridOptions& o)
{
    const std::size_t dim = lo.size();
    if (dim == 0 || hi.size() != dim)
        throw std::invalid_argument("grid_minimize needs matching non-empty bounds");
    int per_dim = std::max(3, o.points);
    while (per_dim > 3 && std::pow(static_cast<double>(per_dim), static_cast<double>(dim)) > static_cast<double>(o.budget))
        --per_dim;
    MinResult out;
    out.coarse_points = per_dim;
    const std::vector<int> n(dim, per_dim);

    struct Sample
    {
        double value;
        std::size_t order;
        std::vector<int> idx;
        std::vector<double> x;
    };
    std::vector<Sample> samples;
    std::size_t order = 0;
    for_each_grid_point(lo, hi, n, [&](const std::vector<double>& x, const std::vector<int>& idx) {
        const double v = f(x);
        ++out.evaluations;
        if (std::isfinite(v)) {
            ++out.feasible;
            samples.push_back({v, order, idx, x});
        }
        ++order;
    });
    if (samples.empty())
        return out;
    std::sort(samples.begin(), samples.end(), [](const Sample& a, const Sample& b) {
        return a.value < b.value || (a.value == b.value && a.order < b.order);
    });
    // Greedy pick of incumbents at least three cells apart so starts cover distinct basins.
    std::vector<const Sample*> starts;
    for (const Sample& s : samples) {
        if (static_cast<int>(starts.size()) >= o.top_k)
            break;
        const bool separated = std::all_of(starts.begin(), starts.end(), [&](const Sample* t) {
            for (std::size_t i = 0; i < dim; ++i)
                if (std::abs(s.idx[i] - t->idx[i]) >= 3)
                    return true;
            return false;
        });
        if (separated)
            starts.push_back(&s);
    }

    std::vector<double> cell(dim);
    for (std::size_t i = 0; i < dim; ++i)
        cell[i] = (hi[i] - lo[i]) / (per_dim - 1);
    const std::vector<int> rn(dim, std::max(3, o.refine_points));
    if (o.zoom <= 1.0 || o.zoom > (rn[0] - 1) / 2.0)
        throw std::invalid_argument("grid_minimize zoom must lie in (1, (refine_points - 1) / 2]");
    for (const Sample* s : starts) {
        std::vector<double> x = s->x;
        double v = s->value;
        double before = v;
        std::vector<double> half = cell;
        for (int round = 0; round < o.rounds; ++round) {
            before = v;
            // While the best point lies on a face of the box, re-centre without shrinking.
            for (int move = 0; move <= o.max_moves; ++move) {
                std::vector<double> a(dim), b(dim);
                for (std::size_t i = 0; i < dim; ++i) {
                    a[i] = std::max(lo[i], x[i] - half[i]);
                    b[i] = std::min(hi[i], x[i] + half[i]);
                }
                std::vector<double> best_x = x;
                std::vector<int> best_idx;
                double best = v;
                for_each_grid_point(a, b, rn, [&](const std::vector<double>& y, const std::vector<int>& idx) {
                    const double w = f(y);
                    ++out.evaluations;
                    if (w < best) {
                        best = w;
                        best_x = y;
                        best_idx = idx;
                    }
                });
                bool on_face = false;
                for (std::size_t i = 0; i < best_idx.size(); ++i) {
                    if ((best_idx[i] == 0 && a[i] > lo[i]) || (best_idx[i] == rn[i] - 1 && b[i] < hi[i]))
                        on_face = true;
                }
                x = best_x;
                v = best;
                if (!on_face)
                    break;
            }
            for (double& h : half)
                h /= o.zoom;
        }
        if (v < out.value) {
            out.value = v;
            out.x = x;
            out.previous = before;
        }
    }
    return out;
}

}  // namespace delpack
