#pragma once

#include <cstddef>
#include <deque>
#include <optional>
#include <vector>

#include "dmfprep/plan.hpp"

namespace dmfprep {

// FIFO droplet storage.  Unbounded by default; with a capacity, storing
// into a full inventory evicts (and returns) the oldest droplet.
class Inventory {
public:
    explicit Inventory(std::optional<std::size_t> capacity = std::nullopt)
        : capacity_(capacity) {}

    std::optional<Droplet> store(const Droplet& d);

    // oldest droplet of exactly this concentration
    std::optional<Droplet> take_exact(const ConcFactor& cf);

    // smallest stored concentration strictly above cf; oldest among equals
    std::optional<Droplet> take_immediate_higher(const ConcFactor& cf);
    std::optional<Droplet> peek_immediate_higher(const ConcFactor& cf) const;

    bool contains(const ConcFactor& cf) const;
    std::size_t size() const { return items_.size(); }
    bool empty() const { return items_.empty(); }
    std::size_t peak() const { return peak_; }
    std::optional<std::size_t> capacity() const { return capacity_; }

    // insertion order (oldest first)
    std::vector<Droplet> contents() const;
    // distinct concentrations present, ascending
    std::vector<ConcFactor> distinct_values() const;

private:
    std::deque<Droplet> items_;
    std::optional<std::size_t> capacity_;
    std::size_t peak_ = 0;
};

}  // namespace dmfprep
