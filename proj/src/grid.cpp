#include "trajmine/grid.hpp"

#include <algorithm>
#include <stdexcept>

#include "trajmine/errors.hpp"

namespace trajmine {

namespace {

std::int64_t floor_div(const Rational& r) {
    std::int64_t q = r.num() / r.den();
    if (r.num() % r.den() != 0 && r.num() < 0) --q;
    return q;
}

std::int64_t ceil_div(const Rational& r) {
    std::int64_t q = r.num() / r.den();
    if (r.num() % r.den() != 0 && r.num() > 0) ++q;
    return q;
}

} // namespace

Box Box::from_doubles(double xmin, double ymin, double xmax, double ymax) {
    return Box{Rational::from_double(xmin), Rational::from_double(ymin),
               Rational::from_double(xmax), Rational::from_double(ymax)};
}

Box CellGrid::cell_box(CellId id) const {
    std::int64_t row = id / n_cols;
    std::int64_t col = id % n_cols;
    Box b;
    b.xmin = region.xmin + cell_width * Rational(col);
    b.ymin = region.ymin + cell_height * Rational(row);
    b.xmax = std::min(region.xmin + cell_width * Rational(col + 1), region.xmax);
    b.ymax = std::min(region.ymin + cell_height * Rational(row + 1), region.ymax);
    return b;
}

CellGrid build_grid(const Region& region, const Rational& cell_width, const Rational& cell_height) {
    if (!(region.xmax > region.xmin) || !(region.ymax > region.ymin))
        throw std::invalid_argument("degenerate region");
    if (!(cell_width > Rational(0)) || !(cell_height > Rational(0)))
        throw std::invalid_argument("non-positive cell size");
    CellGrid g;
    g.region = region;
    g.cell_width = cell_width;
    g.cell_height = cell_height;
    g.n_cols = ceil_div((region.xmax - region.xmin) / cell_width);
    g.n_rows = ceil_div((region.ymax - region.ymin) / cell_height);
    return g;
}

WeightedLocationSet encode_region(const Mbr& mbr, const CellGrid& grid) {
    const Region& r = grid.region;
    Rational xlo = std::max(mbr.xmin, r.xmin);
    Rational ylo = std::max(mbr.ymin, r.ymin);
    Rational xhi = std::min(mbr.xmax, r.xmax);
    Rational yhi = std::min(mbr.ymax, r.ymax);
    if (!(xhi > xlo) || !(yhi > ylo))
        throw EncodingError("MBR clipped to the region has zero area");
    Rational area = (xhi - xlo) * (yhi - ylo);

    std::int64_t col_lo = floor_div((xlo - r.xmin) / grid.cell_width);
    std::int64_t row_lo = floor_div((ylo - r.ymin) / grid.cell_height);

    WeightedLocationSet out;
    for (std::int64_t row = row_lo; row < grid.n_rows; ++row) {
        Rational cy0 = r.ymin + grid.cell_height * Rational(row);
        if (!(cy0 < yhi)) break;
        Rational cy1 = std::min(cy0 + grid.cell_height, r.ymax);
        Rational oh = std::min(yhi, cy1) - std::max(ylo, cy0);
        if (!(oh > Rational(0))) continue;
        for (std::int64_t col = col_lo; col < grid.n_cols; ++col) {
            Rational cx0 = r.xmin + grid.cell_width * Rational(col);
            if (!(cx0 < xhi)) break;
            Rational cx1 = std::min(cx0 + grid.cell_width, r.xmax);
            Rational ow = std::min(xhi, cx1) - std::max(xlo, cx0);
            if (!(ow > Rational(0))) continue;
            out.push_back({grid.cell_id(col, row), ow * oh / area});
        }
    }
    std::sort(out.begin(), out.end(),
              [](const WeightedCell& a, const WeightedCell& b) { return a.cell < b.cell; });
    return out;
}

void validate(const AnonymousTrajectory& traj) {
    if (traj.id.empty()) throw std::invalid_argument("trajectory with empty id");
    if (traj.terms.empty())
        throw std::invalid_argument("trajectory '" + traj.id + "' has no terms");
    for (const auto& t : traj.terms)
        if (t.activities.empty())
            throw std::invalid_argument("trajectory '" + traj.id + "' has a term without activities");
}

WlasTerm encode_term(const AnonymousTerm& term, const CellGrid& grid) {
    WlasTerm out;
    out.locations = encode_region(term.mbr, grid);
    out.activities = term.activities;
    std::sort(out.activities.begin(), out.activities.end());
    out.activities.erase(std::unique(out.activities.begin(), out.activities.end()),
                         out.activities.end());
    return out;
}

WlasSequence encode_trajectory(const AnonymousTrajectory& traj, const CellGrid& grid) {
    validate(traj);
    WlasSequence seq;
    seq.id = traj.id;
    seq.terms.reserve(traj.terms.size());
    for (std::size_t t = 0; t < traj.terms.size(); ++t) {
        std::string at = "trajectory '" + traj.id + "' term " + std::to_string(t + 1) + ": ";
        try {
            seq.terms.push_back(encode_term(traj.terms[t], grid));
        } catch (const EncodingError& e) {
            throw EncodingError(at + e.what());
        } catch (const std::overflow_error& e) {
            throw EncodingError(at + e.what());
        }
    }
    return seq;
}

WlasDatabase encode_database(const std::vector<AnonymousTrajectory>& trajs, const CellGrid& grid) {
    WlasDatabase db;
    db.sequences.reserve(trajs.size());
    for (const auto& t : trajs) db.sequences.push_back(encode_trajectory(t, grid));
    validate(db);
    return db;
}

} // namespace trajmine
