#include "bmap/space.hpp"

#include "bmap/errors.hpp"
#include "bmap/rng.hpp"
#include "bmap/text.hpp"

#include <cmath>
#include <limits>
#include <unordered_set>

namespace bmap {

namespace {

constexpr std::uint64_t kPurposeAxisTokens = 2;

const char* const kConsonants = "bdfghjklmnprstvz";
const char* const kVowels = "aeiou";
constexpr int kSyllables = 16 * 5;

std::string syllable(std::uint64_t index) {
    std::string s;
    s += kConsonants[index / 5];
    s += kVowels[index % 5];
    return s;
}

// Smallest syllable count whose token space is at least 4x the table size,
// so rejection sampling below terminates quickly.
int token_syllables(int cells_per_axis) {
    int k = 1;
    std::uint64_t capacity = kSyllables;
    while (capacity < 4ULL * static_cast<std::uint64_t>(cells_per_axis)) {
        ++k;
        capacity *= kSyllables;
    }
    return k;
}

std::vector<std::string> make_axis_tokens(std::uint64_t label_seed, int axis,
                                          int cells_per_axis) {
    StreamRng rng(label_seed, static_cast<std::uint64_t>(axis), kPurposeAxisTokens);
    int k = token_syllables(cells_per_axis);
    std::vector<std::string> tokens;
    tokens.reserve(static_cast<std::size_t>(cells_per_axis));
    std::unordered_set<std::string> used;
    while (tokens.size() < static_cast<std::size_t>(cells_per_axis)) {
        std::string t;
        for (int i = 0; i < k; ++i) t += syllable(rng.next_u64() % kSyllables);
        if (used.insert(t).second) tokens.push_back(std::move(t));
    }
    return tokens;
}

std::uint64_t saturating_pow(std::uint64_t base, int exp) {
    std::uint64_t r = 1;
    for (int i = 0; i < exp; ++i) {
        if (r > std::numeric_limits<std::uint64_t>::max() / base)
            return std::numeric_limits<std::uint64_t>::max();
        r *= base;
    }
    return r;
}

} // namespace

BeliefSpace::BeliefSpace(int dims, double half_extent, int cells_per_axis,
                         std::uint64_t label_seed)
    : dims_(dims),
      half_extent_(half_extent),
      cells_per_axis_(cells_per_axis),
      label_seed_(label_seed) {
    if (dims < 1) throw ConfigError("dims must be >= 1, got " + format_int(dims));
    if (!(half_extent > 0) || !std::isfinite(half_extent))
        throw ConfigError("half_extent must be finite and > 0, got " +
                          format_double(half_extent));
    if (cells_per_axis < 1)
        throw ConfigError("cells_per_axis must be >= 1, got " +
                          format_int(cells_per_axis));
    cell_count_ = saturating_pow(static_cast<std::uint64_t>(cells_per_axis), dims);
    tokens_.reserve(static_cast<std::size_t>(dims));
    for (int a = 0; a < dims; ++a)
        tokens_.push_back(make_axis_tokens(label_seed, a, cells_per_axis));
}

bool BeliefSpace::contains(std::span<const double> position) const {
    if (position.size() != static_cast<std::size_t>(dims_)) return false;
    for (double x : position)
        if (!(x >= -half_extent_ && x <= half_extent_)) return false;
    return true;
}

CellIndex BeliefSpace::cell_of(std::span<const double> position) const {
    if (position.size() != static_cast<std::size_t>(dims_))
        throw DataError("position has " + format_uint(position.size()) +
                        " components, space has dims=" + format_int(dims_));
    CellIndex cell(static_cast<std::size_t>(dims_));
    double width = cell_width();
    for (int a = 0; a < dims_; ++a) {
        double x = position[static_cast<std::size_t>(a)];
        if (!(x >= -half_extent_ && x <= half_extent_))
            throw DataError("position component " + format_int(a) + " = " +
                            format_double(x) + " is outside [-" +
                            format_double(half_extent_) + ", " +
                            format_double(half_extent_) + "]");
        int idx = static_cast<int>(std::floor((x + half_extent_) / width));
        if (idx >= cells_per_axis_) idx = cells_per_axis_ - 1; // top boundary
        if (idx < 0) idx = 0;
        cell[static_cast<std::size_t>(a)] = idx;
    }
    return cell;
}

std::string BeliefSpace::label_of(const CellIndex& cell) const {
    if (cell.size() != static_cast<std::size_t>(dims_))
        throw DataError("cell index has " + format_uint(cell.size()) +
                        " components, space has dims=" + format_int(dims_));
    std::string label;
    for (int a = 0; a < dims_; ++a) {
        int idx = cell[static_cast<std::size_t>(a)];
        if (idx < 0 || idx >= cells_per_axis_)
            throw DataError("cell coordinate " + format_int(idx) +
                            " out of range on axis " + format_int(a));
        if (a > 0) label += '_';
        label += tokens_[static_cast<std::size_t>(a)][static_cast<std::size_t>(idx)];
    }
    return label;
}

Vec BeliefSpace::cell_center(const CellIndex& cell) const {
    if (cell.size() != static_cast<std::size_t>(dims_))
        throw DataError("cell index has " + format_uint(cell.size()) +
                        " components, space has dims=" + format_int(dims_));
    Vec center(static_cast<std::size_t>(dims_));
    double width = cell_width();
    for (int a = 0; a < dims_; ++a) {
        int idx = cell[static_cast<std::size_t>(a)];
        if (idx < 0 || idx >= cells_per_axis_)
            throw DataError("cell coordinate " + format_int(idx) +
                            " out of range on axis " + format_int(a));
        center[static_cast<std::size_t>(a)] = -half_extent_ + (idx + 0.5) * width;
    }
    return center;
}

const std::vector<std::string>& BeliefSpace::axis_tokens(int axis) const {
    if (axis < 0 || axis >= dims_)
        throw DataError("axis " + format_int(axis) + " out of range for dims=" +
                        format_int(dims_));
    return tokens_[static_cast<std::size_t>(axis)];
}

} // namespace bmap
