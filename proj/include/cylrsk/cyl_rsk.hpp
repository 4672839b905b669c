#pragma once

// Cylindrical dual-RSK on CIYT/CISYT states.
//
// Only the main period P0 is stored; period m is the implicit copy of P0
// with entries shifted by -m*N, drawn m*(L-N) columns to the right and m*N
// rows up. A bump that walks past the stored columns continues inside the
// next period's copy; re-expressing that copy through P0 turns the crossing
// into: column index drops by L-N, carried entry grows by N, winding + 1.

#include <array>
#include <utility>
#include <vector>

#include "cylrsk/dual_rsk.hpp"
#include "cylrsk/shapes.hpp"

namespace cylrsk {

// One cylindrical insertion: iteration k holds the cells changed between
// crossings k-1 and k, in P0 coordinates of the frame current at that point.
struct CylInsertionPath {
    std::vector<InsertionPath> iterations;
    int winding = 0;

    const InsertionPath& final_iteration() const { return iterations.back(); }
    Cell new_box() const { return iterations.back().new_box(); }
    // Position of the new box in the frame where the insertion started.
    Cell new_box_global(int n, int l) const {
        Cell b = new_box();
        return {b.row - winding * n, b.col + winding * (l - n)};
    }
};

// Main-period state: P0 is the augmented tableau (the inner shape mu is
// pre-filled with entry k along row k and never changes afterwards); Q and W
// live on the skew part only.
class CylState {
  public:
    CylState(int n, int l, Partition mu = Partition())
        : n_(n), l_(l), mu_(std::move(mu)), q_(mu_), w_(mu_) {
        if (n < 1 || l - n < 1) throw validation_error("cyl state: need N >= 1 and L - N >= 1");
        if (mu_.num_rows() > n) throw validation_error("cyl state: mu has more than N rows");
        std::vector<std::vector<int>> rows;
        for (int r = 1; r <= mu_.num_rows(); ++r)
            rows.emplace_back(mu_.part(r), r);
        p0_ = Tableau(Partition(), std::move(rows));
        check_shape();
    }

    CylState(int n, int l, Partition mu, Tableau p0, Tableau q, Tableau w)
        : n_(n), l_(l), mu_(std::move(mu)), p0_(std::move(p0)), q_(std::move(q)), w_(std::move(w)) {
        if (n < 1 || l - n < 1) throw validation_error("cyl state: need N >= 1 and L - N >= 1");
        validate();
    }

    int n() const { return n_; }
    int l() const { return l_; }
    const Partition& mu() const { return mu_; }
    const Tableau& p0() const { return p0_; }
    const Tableau& q() const { return q_; }
    const Tableau& w() const { return w_; }
    Partition shape() const { return p0_.outer(); }

    // Structural checks: augmented P0 column-strict/row-weak with the
    // standard filling on mu, shapes of Q/W matching relative to mu, at most
    // N rows, and the wrap bound on the shape.
    void validate() const {
        if (p0_.num_rows() > n_) throw validation_error("cyl state: more than N rows");
        if (!p0_.inner().empty()) throw validation_error("cyl state: P0 must be augmented (straight)");
        if (!is_ssyt(p0_)) throw validation_error("cyl state: P0 not column-strict/row-weak");
        for (int r = 1; r <= mu_.num_rows(); ++r)
            for (int c = 1; c <= mu_.part(r); ++c)
                if (!p0_.has_cell(r, c) || p0_.at(r, c) != r)
                    throw validation_error("cyl state: mu region not standard");
        if (q_.inner() != mu_ || w_.inner() != mu_ || q_.outer() != p0_.outer() ||
            w_.outer() != p0_.outer())
            throw validation_error("cyl state: Q/W shape mismatch");
        for (int r = 1; r <= w_.num_rows(); ++r)
            for (int c = w_.row_begin(r); c <= w_.row_end(r); ++c)
                if (w_.at(r, c) < 0) throw validation_error("cyl state: negative winding");
        check_shape();
    }

    void check_shape() const {
        Partition lam = p0_.outer();
        if (lam.part(1) > l_ - n_ + lam.part(n_))
            throw validation_error("cyl state: shape exceeds one wrap");
    }

    // Largest k with lambda_1 = ... = lambda_k = L - N + lambda_N, else 0.
    int overflow_rows() const {
        Partition lam = p0_.outer();
        int full = l_ - n_ + lam.part(n_);
        int k = 0;
        while (k < n_ && lam.part(k + 1) == full) ++k;
        return k;
    }

    // Column-inserts letter b at the given time, wrapping through periods as
    // needed; records the creation time and crossing count at the new box.
    CylInsertionPath insert(int b, int time) {
        if (b < 1 || b > n_) throw validation_error("cyl insert: letter out of range");
        CylInsertionPath path;
        path.iterations.emplace_back();
        int e = b;
        int c = 1;
        for (;;) {
            int cprev = c - (l_ - n_);
            int h_up = cprev >= 1 ? p0_.col_height(cprev) : 0;
            int h = p0_.col_height(c);
            if (h_up > 0 &&
                (p0_.at(h_up, cprev) - n_ >= e || (h == 0 && h_up < n_))) {
                // Uppermost entry >= e lies in the next period's copy, or the
                // box would hang below it: continue there via P0.
                c = cprev;
                e += n_;
                ++path.winding;
                path.iterations.emplace_back();
                continue;
            }
            int hit = 0;
            for (int r = 1; r <= h; ++r)
                if (p0_.at(r, c) >= e) {
                    hit = r;
                    break;
                }
            if (hit) {
                int displaced = p0_.at(hit, c);
                if (displaced != e) {
                    p0_.set(hit, c, e);
                    path.iterations.back().cells.push_back({hit, c});
                }
                e = displaced;
                ++c;
            } else {
                if (h + 1 > n_) throw validation_error("cyl insert: box below row N");
                p0_.append(h + 1, c, e);
                path.iterations.back().cells.push_back({h + 1, c});
                q_.append(h + 1, c, time);
                w_.append(h + 1, c, path.winding);
                check_shape();
                return path;
            }
        }
    }

    // Vector whose i-th component counts entries i in row i of P0.
    std::vector<int> ledge() const {
        std::vector<int> v(n_, 0);
        for (int r = 1; r <= std::min(n_, p0_.num_rows()); ++r)
            for (int c = 1; c <= p0_.row_end(r); ++c)
                if (p0_.at(r, c) == r) ++v[r - 1];
        return v;
    }

  private:
    int n_;
    int l_;
    Partition mu_;
    Tableau p0_;
    Tableau q_;
    Tableau w_;

    friend InnovationArray cyl_rsk_invert(CylState state);
};

inline std::vector<int> ledge(const CylState& s) { return s.ledge(); }
inline int overflow_rows(const CylState& s) { return s.overflow_rows(); }

inline CylState cyl_rsk(const InnovationArray& a, int n, int l, const Partition& mu = Partition()) {
    validate_innovation(a);
    if (a.letters > n) throw validation_error("cyl rsk: letters exceed N");
    CylState s(n, l, mu);
    for (auto [time, letter] : a.pairs) s.insert(letter, time);
    return s;
}

namespace detail {

// Reverse a cylindrical bump across one column of the unrolled picture.
// Global column g collects, for every period m, the cells of P0's column
// g - m*(L-N) with entries shifted by -m*N; the carried entry settles at the
// lowest cell (largest global row) whose entry does not exceed it.
inline int cyl_reverse_bump(Tableau& p0, int n, int l, int g, int e) {
    int maxcol = p0.row_end(1);
    int best_grow = 0;
    int best_m = 0, best_r = 0, best_val = 0;
    bool found = false;
    int span = l - n;
    int m_lo = (g - maxcol) / span - 1;
    int m_hi = (g - 1) / span + 1;
    for (int m = m_lo; m <= m_hi; ++m) {
        int cm = g - m * span;
        if (cm < 1 || cm > maxcol) continue;
        int h = p0.col_height(cm);
        for (int r = h; r >= 1; --r) {
            int val = p0.at(r, cm) - m * n;
            if (val <= e) {
                int grow = r - m * n;
                if (!found || grow > best_grow) {
                    found = true;
                    best_grow = grow;
                    best_m = m;
                    best_r = r;
                    best_val = val;
                }
                break;  // higher cells in this period are smaller rows
            }
        }
    }
    if (!found) throw not_in_image("cyl invert: no entry <= carried value");
    p0.set(best_r, g - best_m * span, e + best_m * n);
    return best_val;
}

}  // namespace detail

// Exact inverse of cyl_rsk. Per time slice, windings weakly decrease along
// insertion order and, within the minimal-winding group, new boxes descend
// strictly south; so the last insertion sits at the southernmost box of that
// group. Un-bumping runs through the unrolled periods, with the winding
// fixing how many columns the walk spans.
inline InnovationArray cyl_rsk_invert(CylState state) {
    state.validate();
    int n = state.n_;
    int l = state.l_;
    Tableau& p0 = state.p0_;
    Tableau& q = state.q_;
    Tableau& w = state.w_;
    std::vector<std::pair<int, int>> rev;
    try {
        while (!q.empty()) {
            int time = 0;
            for (int r = 1; r <= q.num_rows(); ++r)
                for (int c = q.row_begin(r); c <= q.row_end(r); ++c)
                    time = std::max(time, q.at(r, c));
            // Minimal winding among the time-slice boxes, then southernmost.
            int wmin = 0;
            bool have = false;
            for (int r = 1; r <= q.num_rows(); ++r)
                for (int c = q.row_begin(r); c <= q.row_end(r); ++c)
                    if (q.at(r, c) == time && (!have || w.at(r, c) < wmin)) {
                        wmin = w.at(r, c);
                        have = true;
                    }
            Cell box{0, 0};
            for (int r = 1; r <= q.num_rows(); ++r)
                for (int c = q.row_begin(r); c <= q.row_end(r); ++c)
                    if (q.at(r, c) == time && w.at(r, c) == wmin &&
                        (r > box.row || (r == box.row && c > box.col)))
                        box = {r, c};
            int omega = wmin;
            int e = p0.at(box.row, box.col) - omega * n;
            p0.remove(box.row, box.col);
            q.remove(box.row, box.col);
            w.remove(box.row, box.col);
            for (int g = box.col + omega * (l - n) - 1; g >= 1; --g)
                e = detail::cyl_reverse_bump(p0, n, l, g, e);
            if (e < 1 || e > n) throw not_in_image("cyl invert: letter out of range");
            rev.emplace_back(time, e);
        }
    } catch (const validation_error& err) {
        throw not_in_image(std::string("cyl invert: un-bumping inconsistency: ") + err.what());
    }
    InnovationArray a;
    a.letters = n;
    a.pairs.assign(rev.rbegin(), rev.rend());
    validate_innovation(a);
    return a;
}

}  // namespace cylrsk
