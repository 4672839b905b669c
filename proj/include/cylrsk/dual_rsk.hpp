#pragma once

// Plain dual-RSK by column insertion with insertion-path tracking.
//
// Insertion rule: the inserted letter b replaces the uppermost entry >= b of
// the current column and the displaced entry recurses into the next column;
// if every entry is smaller, b is appended at the end of the column.

#include <optional>
#include <utility>
#include <vector>

#include "cylrsk/shapes.hpp"

namespace cylrsk {

// Two-row array of (time, letter) pairs, lexicographically ordered with
// distinct pairs (one clock ring per particle per step).
struct InnovationArray {
    int letters = 0;  // letters range over [1, letters]
    std::vector<std::pair<int, int>> pairs;

    friend bool operator==(const InnovationArray&, const InnovationArray&) = default;
};

inline void validate_innovation(const InnovationArray& a) {
    for (std::size_t i = 0; i < a.pairs.size(); ++i) {
        auto [t, b] = a.pairs[i];
        if (t < 1) throw validation_error("innovation array: time must be >= 1");
        if (b < 1 || b > a.letters) throw validation_error("innovation array: letter out of range");
        if (i > 0 && !(a.pairs[i - 1] < a.pairs[i]))
            throw validation_error("innovation array: pairs not strictly lexicographic");
    }
}

// Cells whose value changed during one insertion, in bump order; the final
// cell is the new box. Columns strictly increase along the path.
struct InsertionPath {
    std::vector<Cell> cells;

    Cell new_box() const { return cells.back(); }
    bool empty() const { return cells.empty(); }

    std::optional<int> row_in_col(int c) const {
        for (const Cell& cell : cells)
            if (cell.col == c) return cell.row;
        return std::nullopt;
    }
    int max_col() const {
        int m = 0;
        for (const Cell& cell : cells) m = std::max(m, cell.col);
        return m;
    }
};

// Path order relations. "r_above strictly above r_below": on every shared
// column the row of r_above is strictly smaller, and r_above does not end
// strictly left of r_below. Weak version allows equality on both counts.
inline bool strictly_above(const InsertionPath& r_above, const InsertionPath& r_below) {
    if (r_above.empty() || r_below.empty()) return true;
    for (const Cell& cell : r_below.cells) {
        auto row = r_above.row_in_col(cell.col);
        if (row && *row >= cell.row) return false;
    }
    return r_below.max_col() <= r_above.max_col();
}

inline bool weakly_above(const InsertionPath& r_above, const InsertionPath& r_below) {
    if (r_above.empty() || r_below.empty()) return true;
    for (const Cell& cell : r_below.cells) {
        auto row = r_above.row_in_col(cell.col);
        if (row && *row > cell.row) return false;
    }
    return r_below.max_col() >= r_above.max_col();
}

// Column-inserts b into t (straight shape). Returns the path of changed
// cells; equal-entry replacements displace but leave no visible change.
inline InsertionPath column_insert(Tableau& t, int b) {
    if (b < 1) throw validation_error("column insert: letter must be positive");
    InsertionPath path;
    int e = b;
    for (int c = 1;; ++c) {
        int hit = 0;
        for (int r = 1; r <= t.col_height(c); ++r)
            if (t.at(r, c) >= e) {
                hit = r;
                break;
            }
        if (hit) {
            int displaced = t.at(hit, c);
            if (displaced != e) {
                t.set(hit, c, e);
                path.cells.push_back({hit, c});
            }
            e = displaced;
        } else {
            int r = t.col_height(c) + 1;
            t.append(r, c, e);
            path.cells.push_back({r, c});
            return path;
        }
    }
}

// P column-strict/row-weak, Q recording creation times with the same shape.
struct RskPair {
    Tableau p;
    Tableau q;
};

inline RskPair dual_rsk(const InnovationArray& a) {
    validate_innovation(a);
    RskPair out;
    for (auto [time, letter] : a.pairs) {
        InsertionPath path = column_insert(out.p, letter);
        Cell box = path.new_box();
        out.q.append(box.row, box.col, time);
    }
    return out;
}

namespace detail {

// Reverse one bump step: the carried entry settles where the lowest entry
// <= e sits; that entry is carried further left.
inline int reverse_bump_column(Tableau& t, int c, int e) {
    for (int r = t.col_height(c); r >= 1; --r) {
        if (t.at(r, c) <= e) {
            int carried = t.at(r, c);
            t.set(r, c, e);
            return carried;
        }
    }
    throw not_in_image("reverse bump: no entry <= carried value");
}

}  // namespace detail

// Exact left inverse of dual_rsk. Within a time slice letters strictly
// increase, so new boxes descend strictly south; the southernmost box with
// the current time is the last one inserted.
inline InnovationArray dual_rsk_invert(const RskPair& pair, int letters) {
    if (pair.p.outer() != pair.q.outer() || pair.p.inner() != pair.q.inner())
        throw not_in_image("invert: P and Q shapes differ");
    Tableau p = pair.p;
    Tableau q = pair.q;
    std::vector<std::pair<int, int>> rev;
    try {
        while (!q.empty()) {
            int time = 0;
            Cell box{0, 0};
            for (int r = 1; r <= q.num_rows(); ++r)
                for (int c = q.row_begin(r); c <= q.row_end(r); ++c) {
                    int v = q.at(r, c);
                    if (v > time || (v == time && r > box.row)) {
                        time = v;
                        box = {r, c};
                    }
                }
            int e = p.at(box.row, box.col);
            p.remove(box.row, box.col);
            q.remove(box.row, box.col);
            for (int c = box.col - 1; c >= 1; --c) e = detail::reverse_bump_column(p, c, e);
            if (e < 1 || (letters > 0 && e > letters))
                throw not_in_image("invert: recovered letter out of range");
            rev.emplace_back(time, e);
        }
        InnovationArray a;
        a.letters = letters;
        a.pairs.assign(rev.rbegin(), rev.rend());
        validate_innovation(a);
        return a;
    } catch (const validation_error& err) {
        throw not_in_image(std::string("invert: un-bumping inconsistency: ") + err.what());
    }
}

}  // namespace cylrsk
