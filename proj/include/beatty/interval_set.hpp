#pragma once
// Finite unions of half-open intervals [lo, hi) with exact rational
// endpoints. The stored form is canonical: sorted, disjoint, non-empty and
// with touching neighbours merged, so equality is structural.

#include <algorithm>
#include <initializer_list>
#include <string>
#include <vector>

#include "exact.hpp"

namespace beatty {

struct Interval {
    Rational lo, hi;

    bool empty() const { return !(lo < hi); }
    Rational length() const { return empty() ? Rational(0) : Rational(hi - lo); }
    bool contains(const Rational& v) const { return lo <= v && v < hi; }
    bool operator==(const Interval&) const = default;
};

class IntervalSet {
public:
    IntervalSet() = default;

    IntervalSet(std::initializer_list<Interval> parts) {
        for (const auto& p : parts) add(p);
    }

    static IntervalSet single(const Rational& lo, const Rational& hi) {
        IntervalSet s;
        s.add({lo, hi});
        return s;
    }

    /// Inserts one interval, keeping canonical form.
    void add(const Interval& iv) {
        if (iv.empty()) return;
        auto it = std::lower_bound(parts_.begin(), parts_.end(), iv.lo,
                                   [](const Interval& a, const Rational& v) { return a.hi < v; });
        Interval merged = iv;
        auto first = it;
        while (it != parts_.end() && it->lo <= merged.hi) {
            if (it->lo < merged.lo) merged.lo = it->lo;
            if (it->hi > merged.hi) merged.hi = it->hi;
            ++it;
        }
        it = parts_.erase(first, it);
        parts_.insert(it, merged);
    }

    const std::vector<Interval>& parts() const { return parts_; }
    bool empty() const { return parts_.empty(); }
    std::size_t size() const { return parts_.size(); }

    Rational measure() const {
        Rational m = 0;
        for (const auto& p : parts_) m += p.hi - p.lo;
        return m;
    }

    bool contains(const Rational& v) const {
        auto it = std::upper_bound(parts_.begin(), parts_.end(), v,
                                   [](const Rational& x, const Interval& a) { return x < a.hi; });
        return it != parts_.end() && it->contains(v);
    }

    bool operator==(const IntervalSet&) const = default;

    /// "[a/b;c/d) [e/f;g/h)" with no commas, suitable for a CSV cell.
    std::string to_string() const {
        if (parts_.empty()) return "empty";
        std::string s;
        for (const auto& p : parts_) {
            if (!s.empty()) s += ' ';
            s += "[" + ratio_string(p.lo) + ";" + ratio_string(p.hi) + ")";
        }
        return s;
    }

private:
    std::vector<Interval> parts_;
};

inline IntervalSet set_union(const IntervalSet& a, const IntervalSet& b) {
    IntervalSet out = a;
    for (const auto& p : b.parts()) out.add(p);
    return out;
}

inline IntervalSet set_intersect(const IntervalSet& a, const IntervalSet& b) {
    IntervalSet out;
    const auto &pa = a.parts(), &pb = b.parts();
    std::size_t i = 0, j = 0;
    while (i < pa.size() && j < pb.size()) {
        const Rational& lo = std::max(pa[i].lo, pb[j].lo);
        const Rational& hi = std::min(pa[i].hi, pb[j].hi);
        if (lo < hi) out.add({lo, hi});
        if (pa[i].hi < pb[j].hi) ++i; else ++j;
    }
    return out;
}

/// [lo, hi) minus a.
inline IntervalSet complement_in(const IntervalSet& a, const Rational& lo, const Rational& hi) {
    IntervalSet out;
    Rational cursor = lo;
    for (const auto& p : a.parts()) {
        if (p.hi <= cursor) continue;
        if (p.lo >= hi) break;
        if (p.lo > cursor) out.add({cursor, std::min(p.lo, hi)});
        cursor = std::max(cursor, p.hi);
    }
    if (cursor < hi) out.add({cursor, hi});
    return out;
}

} // namespace beatty
