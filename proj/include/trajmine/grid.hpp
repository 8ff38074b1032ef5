#pragma once

#include <cstdint>
#include <vector>

#include "trajmine/model.hpp"
#include "trajmine/rational.hpp"

namespace trajmine {

// Axis-aligned box with exact coordinates. Incoming doubles are converted
// exactly (every finite double is dyadic), so overlap areas stay rational.
struct Box {
    Rational xmin, ymin, xmax, ymax;

    static Box from_doubles(double xmin, double ymin, double xmax, double ymax);
};

using Region = Box;
using Mbr = Box;

// Partition of the region into half-open [x, x+w) x [y, y+h) cells, row-major
// 0-based ids starting at the region's (xmin, ymin) corner. Cells in the last
// column/row are clipped to the region boundary.
struct CellGrid {
    Region region;
    Rational cell_width, cell_height;
    std::int64_t n_cols = 0, n_rows = 0;

    std::int64_t cell_count() const { return n_cols * n_rows; }
    CellId cell_id(std::int64_t col, std::int64_t row) const { return row * n_cols + col; }
    // Cell extent after clipping to the region.
    Box cell_box(CellId id) const;
};

// Throws std::invalid_argument on a degenerate region or non-positive cell size.
CellGrid build_grid(const Region& region, const Rational& cell_width, const Rational& cell_height);

// Weights are overlap(cell, mbr clipped to region) / area(clipped mbr); they
// sum to exactly 1. Throws EncodingError when the clipped MBR has zero area.
WeightedLocationSet encode_region(const Mbr& mbr, const CellGrid& grid);

struct AnonymousTerm {
    Mbr mbr;
    std::vector<Activity> activities; // non-empty; encoding sorts and dedups
};

struct AnonymousTrajectory {
    std::string id;
    std::vector<AnonymousTerm> terms; // non-empty
};

void validate(const AnonymousTrajectory& traj);

WlasTerm encode_term(const AnonymousTerm& term, const CellGrid& grid);
// Validates the trajectory first; encoding failures are rethrown as
// EncodingError naming the trajectory and term.
WlasSequence encode_trajectory(const AnonymousTrajectory& traj, const CellGrid& grid);
WlasDatabase encode_database(const std::vector<AnonymousTrajectory>& trajs, const CellGrid& grid);

} // namespace trajmine
