#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

namespace mathreuse::util {

// Half-open [start, end) range of code-point offsets.
struct Interval {
    std::size_t start = 0;
    std::size_t end = 0;

    std::size_t length() const { return end > start ? end - start : 0; }
    bool empty() const { return end <= start; }
    bool contains(const Interval& o) const { return start <= o.start && o.end <= end; }
    bool overlaps(const Interval& o) const { return start < o.end && o.start < end; }
    friend bool operator==(const Interval&, const Interval&) = default;
    friend auto operator<=>(const Interval&, const Interval&) = default;
};

inline std::size_t overlap_length(const Interval& a, const Interval& b) {
    const std::size_t lo = std::max(a.start, b.start);
    const std::size_t hi = std::min(a.end, b.end);
    return hi > lo ? hi - lo : 0;
}

inline Interval hull(const Interval& a, const Interval& b) {
    return {std::min(a.start, b.start), std::max(a.end, b.end)};
}

// Distance between two intervals; 0 when they touch or overlap.
inline std::size_t gap_between(const Interval& a, const Interval& b) {
    if (a.end <= b.start) return b.start - a.end;
    if (b.end <= a.start) return a.start - b.end;
    return 0;
}

// Sorted, disjoint union of intervals.
class IntervalSet {
public:
    IntervalSet() = default;
    explicit IntervalSet(std::vector<Interval> items);

    void add(Interval iv);
    std::size_t covered(const Interval& iv) const;  // |iv ∩ set|
    std::size_t total() const;
    const std::vector<Interval>& items() const { return items_; }

private:
    std::vector<Interval> items_;
};

}  // namespace mathreuse::util
