#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <queue>
#include <span>
#include <vector>

namespace rissop::quad {

struct Tolerance {
    double absolute = 1e-10;
    double relative = 1e-10;
    std::size_t max_intervals = 4000;
};

struct Result {
    double value = 0.0;
    double error = 0.0;
    std::size_t evaluations = 0;
    std::size_t intervals = 0;
    bool converged = false;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15).
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double lo;
    double hi;
    double value;
    double error;
    bool operator<(const Segment& other) const { return error < other.error; }
};

template <class F>
Segment gk15(const F& f, double lo, double hi) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double fc = f(center);
    double kronrod = kWgk[7] * fc;
    double gauss = kWg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double pair = f(center - dx) + f(center + dx);
        kronrod += kWgk[j] * pair;
        if (j % 2 == 1) {
            gauss += kWg[j / 2] * pair;
        }
    }
    return {lo, hi, kronrod * half, std::abs((kronrod - gauss) * half)};
}

} // namespace detail

/// Globally adaptive Gauss-Kronrod integration over the union of the segments
/// [breaks[0], breaks[1]], [breaks[1], breaks[2]], ... The segment with the
/// largest error estimate is bisected until
///   error <= max(tol.absolute, tol.relative * |value|).
/// `breaks` must be nondecreasing; empty segments are skipped.
template <class F>
Result integrate(const F& f, std::span<const double> breaks, const Tolerance& tol = {}) {
    Result out;
    std::priority_queue<detail::Segment> heap;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (breaks[i + 1] > breaks[i]) {
            auto seg = detail::gk15(f, breaks[i], breaks[i + 1]);
            out.value += seg.value;
            out.error += seg.error;
            out.evaluations += 15;
            heap.push(seg);
        }
    }
    out.intervals = heap.size();
    auto done = [&] {
        return out.error <= std::max(tol.absolute, tol.relative * std::abs(out.value));
    };
    while (!heap.empty() && !done()) {
        if (out.intervals >= tol.max_intervals) {
            return out;
        }
        const auto worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(mid > worst.lo && mid < worst.hi)) {
            // Interval cannot be split further in floating point.
            return out;
        }
        const auto left = detail::gk15(f, worst.lo, mid);
        const auto right = detail::gk15(f, mid, worst.hi);
        out.evaluations += 30;
        out.value += left.value + right.value - worst.value;
        out.error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++out.intervals;
    }
    // Re-sum from the leaves so accumulated update round-off does not linger.
    double value = 0.0;
    double error = 0.0;
    while (!heap.empty()) {
        value += heap.top().value;
        error += heap.top().error;
        heap.pop();
    }
    out.value = value;
    out.error = error;
    out.converged = done();
    return out;
}

template <class F>
Result integrate(const F& f, double lo, double hi, const Tolerance& tol = {}) {
    const double breaks[2] = {lo, hi};
    return integrate(f, std::span<const double>(breaks, 2), tol);
}

} // namespace rissop::quad
