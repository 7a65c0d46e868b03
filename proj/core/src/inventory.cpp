#include "dmfprep/inventory.hpp"

#include <algorithm>

namespace dmfprep {

std::optional<Droplet> Inventory::store(const Droplet& d) {
    std::optional<Droplet> evicted;
    if (capacity_ && items_.size() >= *capacity_ && !items_.empty()) {
        evicted = items_.front();
        items_.pop_front();
    }
    items_.push_back(d);
    peak_ = std::max(peak_, items_.size());
    return evicted;
}

std::optional<Droplet> Inventory::take_exact(const ConcFactor& cf) {
    for (auto it = items_.begin(); it != items_.end(); ++it) {
        if (it->cf == cf) {
            Droplet d = *it;
            items_.erase(it);
            return d;
        }
    }
    return std::nullopt;
}

std::optional<Droplet> Inventory::peek_immediate_higher(
    const ConcFactor& cf) const {
    const Droplet* best = nullptr;
    for (const auto& d : items_) {
        if (d.cf <= cf) continue;
        if (!best || d.cf < best->cf) best = &d;  // oldest wins ties (FIFO scan)
    }
    if (!best) return std::nullopt;
    return *best;
}

std::optional<Droplet> Inventory::take_immediate_higher(const ConcFactor& cf) {
    auto best = items_.end();
    for (auto it = items_.begin(); it != items_.end(); ++it) {
        if (it->cf <= cf) continue;
        if (best == items_.end() || it->cf < best->cf) best = it;
    }
    if (best == items_.end()) return std::nullopt;
    Droplet d = *best;
    items_.erase(best);
    return d;
}

bool Inventory::contains(const ConcFactor& cf) const {
    return std::any_of(items_.begin(), items_.end(),
                       [&](const Droplet& d) { return d.cf == cf; });
}

std::vector<Droplet> Inventory::contents() const {
    return {items_.begin(), items_.end()};
}

std::vector<ConcFactor> Inventory::distinct_values() const {
    std::vector<ConcFactor> vals;
    vals.reserve(items_.size());
    for (const auto& d : items_) vals.push_back(d.cf);
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    return vals;
}

}  // namespace dmfprep
