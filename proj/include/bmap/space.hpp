#pragma once

#include "bmap/vec.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace bmap {

// Grid coordinates of one cell, one index per axis.
using CellIndex = std::vector<int>;

// A bounded belief space: the hypercube [-half_extent, +half_extent]^dims,
// discretized into cells_per_axis equal bins per axis. Each cell has a
// stable human-readable label derived from label_seed; equal parameters
// always produce equal labels.
class BeliefSpace {
public:
    BeliefSpace(int dims, double half_extent, int cells_per_axis,
                std::uint64_t label_seed);

    int dims() const { return dims_; }
    double half_extent() const { return half_extent_; }
    int cells_per_axis() const { return cells_per_axis_; }
    std::uint64_t label_seed() const { return label_seed_; }
    double cell_width() const { return 2.0 * half_extent_ / cells_per_axis_; }

    // cells_per_axis^dims, saturated at uint64 max for very large spaces.
    std::uint64_t cell_count() const { return cell_count_; }

    // Bins are half-open [lo, hi) except the last one per axis, which
    // includes the top boundary so every in-bounds position has a cell.
    // Positions outside the hypercube throw DataError.
    CellIndex cell_of(std::span<const double> position) const;

    bool contains(std::span<const double> position) const;

    std::string label_of(const CellIndex& cell) const;
    Vec cell_center(const CellIndex& cell) const;

    // Token table for one axis; entry i names coordinate i on that axis.
    const std::vector<std::string>& axis_tokens(int axis) const;

private:
    int dims_;
    double half_extent_;
    int cells_per_axis_;
    std::uint64_t label_seed_;
    std::uint64_t cell_count_;
    std::vector<std::vector<std::string>> tokens_; // [axis][coordinate]
};

} // namespace bmap
