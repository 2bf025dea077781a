#include "mathreuse/util/interval.hpp"

namespace mathreuse::util {

IntervalSet::IntervalSet(std::vector<Interval> items) {
    for (const auto& iv : items) add(iv);
}

void IntervalSet::add(Interval iv) {
    if (iv.empty()) return;
    auto it = std::lower_bound(items_.begin(), items_.end(), iv,
                               [](const Interval& a, const Interval& b) { return a.end < b.start; });
    // it now points at the first interval that may touch iv.
    auto last = it;
    while (last != items_.end() && last->start <= iv.end) {
        iv = hull(iv, *last);
        ++last;
    }
    it = items_.erase(it, last);
    items_.insert(it, iv);
}

std::size_t IntervalSet::covered(const Interval& iv) const {
    std::size_t sum = 0;
    auto it = std::lower_bound(items_.begin(), items_.end(), iv,
                               [](const Interval& a, const Interval& b) { return a.end <= b.start; });
    for (; it != items_.end() && it->start < iv.end; ++it) sum += overlap_length(*it, iv);
    return sum;
}

std::size_t IntervalSet::total() const {
    std::size_t sum = 0;
    for (const auto& iv : items_) sum += iv.length();
    return sum;
}

}  // namespace mathreuse::util
