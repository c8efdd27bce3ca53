#include "sival/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <string>

namespace sival {

namespace {

bool splittable(const Interval& x)
{
    if (x.is_empty() || !x.is_bounded()) {
        return false;
    }
    const auto m = midpoint(x);
    return m && x.lo() < *m && *m < x.hi();
}

Interval halve_toward(const Interval& x, double a)
{
    if (x.is_singleton()) {
        return x;
    }
    const double half = (x.hi() - x.lo()) * 0.5;
    double lo = std::max(x.lo(), a - half * 0.5);
    double hi = lo + half;
    if (hi > x.hi()) {
        hi = x.hi();
        lo = std::max(x.lo(), hi - half);
    }
    lo = std::min(lo, a);
    hi = std::max(hi, a);
    return Interval(lo, hi);
}

// Hull of the live leaf intervals.
Interval hull_of(const std::vector<Interval>& values, const std::vector<bool>& alive)
{
    Interval h = Interval::empty();
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (alive[i]) {
            h = hull_union(h, values[i]);
        }
    }
    return h;
}

} // namespace

RefinementSequence refine_toward(const Box& box0, std::span<const double> target, std::size_t steps)
{
    if (target.size() != box0.size()) {
        throw ArityError("refine_toward: target has " + std::to_string(target.size()) + " coordinates, box has " +
                         std::to_string(box0.size()));
    }
    if (!box0.is_bounded()) {
        throw std::domain_error("refine_toward: initial box must be bounded");
    }
    if (!box0.contains(target)) {
        throw std::domain_error("refine_toward: target is not inside the initial box");
    }
    RefinementSequence seq;
    seq.target.assign(target.begin(), target.end());
    seq.boxes.reserve(steps + 1);
    seq.boxes.push_back(box0);
    for (std::size_t s = 0; s < steps; ++s) {
        const Box& prev = seq.boxes.back();
        std::vector<Interval> dims;
        dims.reserve(prev.size());
        for (std::size_t i = 0; i < prev.size(); ++i) {
            dims.push_back(halve_toward(prev[i], target[i]));
        }
        seq.boxes.emplace_back(std::move(dims));
    }
    return seq;
}

EnclosureReport check_convergence(const Expr& e, const Interpretation& interp, const RefinementSequence& seq,
                                  double tol)
{
    const RealResult value = eval_real(e, interp, seq.target);
    if (!value) {
        throw std::domain_error("check_convergence: expression is undefined at the target");
    }
    EnclosureReport report;
    report.value = value;
    bool contains_value = true;
    for (const Box& b : seq.boxes) {
        Interval y = eval_interval(e, interp, b);
        if (!report.intervals.empty() && !subset(y, report.intervals.back())) {
            report.nested = false;
        }
        contains_value = contains_value && member(*value, y);
        report.widths.push_back(width(y));
        report.intervals.push_back(std::move(y));
    }
    report.iterations = seq.boxes.empty() ? 0 : seq.boxes.size() - 1;
    if (!report.intervals.empty()) {
        report.enclosure = report.intervals.back();
    }
    report.converged = !report.widths.empty() && report.widths.back() <= tol && contains_value;
    return report;
}

std::optional<std::size_t> widest_coordinate(const Box& b)
{
    std::optional<std::size_t> best;
    double best_width = -1;
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (!splittable(b[i])) {
            continue;
        }
        const double w = width(b[i]);
        if (w > best_width) {
            best = i;
            best_width = w;
        }
    }
    return best;
}

std::pair<Box, Box> bisect(const Box& b, std::size_t coord)
{
    if (coord >= b.size()) {
        throw std::domain_error("bisect: coordinate index out of range");
    }
    const Interval& x = b[coord];
    if (!splittable(x)) {
        throw std::domain_error("bisect: coordinate " + std::to_string(coord) +
                                " is empty, unbounded or too narrow to split");
    }
    const double m = *midpoint(x);
    return {b.with(coord, Interval(x.lo(), m)), b.with(coord, Interval(m, x.hi()))};
}

EnclosureReport subdivide_enclosure(const Expr& e, const Interpretation& interp, const Box& box0, double tol,
                                    std::size_t max_boxes)
{
    if (box0.is_empty() || !box0.is_bounded()) {
        throw std::domain_error("subdivide_enclosure: initial box must be bounded and non-empty");
    }
    max_boxes = std::max<std::size_t>(max_boxes, 1);

    std::vector<Box> boxes{box0};
    std::vector<Interval> values{eval_interval(e, interp, box0)};
    std::vector<bool> alive{true};
    std::size_t live = 1;

    // Widest interval first; older leaf first on ties.
    using Entry = std::pair<double, std::size_t>;
    auto later = [](const Entry& a, const Entry& b) {
        if (a.first != b.first) {
            return a.first < b.first;
        }
        return a.second > b.second;
    };
    std::priority_queue<Entry, std::vector<Entry>, decltype(later)> pending(later);
    if (width(values[0]) > tol) {
        pending.emplace(width(values[0]), 0);
    }

    EnclosureReport report;
    report.widths.push_back(width(values[0]));
    std::size_t next_checkpoint = 2;
    bool stuck = false;

    while (!pending.empty() && live < max_boxes) {
        const std::size_t idx = pending.top().second;
        pending.pop();
        const auto coord = widest_coordinate(boxes[idx]);
        if (!coord) {
            stuck = true;
            continue;
        }
        auto [a, b] = bisect(boxes[idx], *coord);
        alive[idx] = false;
        for (Box* child : {&a, &b}) {
            Interval y = eval_interval(e, interp, *child);
            const double w = width(y);
            boxes.push_back(std::move(*child));
            values.push_back(std::move(y));
            alive.push_back(true);
            if (w > tol) {
                pending.emplace(w, boxes.size() - 1);
            }
        }
        ++live;
        ++report.iterations;
        if (live == next_checkpoint) {
            report.widths.push_back(width(hull_of(values, alive)));
            next_checkpoint *= 2;
        }
    }

    report.enclosure = hull_of(values, alive);
    if (report.iterations > 0 && live != next_checkpoint / 2) {
        report.widths.push_back(width(report.enclosure));
    }
    report.converged = pending.empty() && !stuck;
    return report;
}

} // namespace sival
