#pragma once

// Partitions, skew shapes, tableau storage and weights.

#include <algorithm>
#include <compare>
#include <map>
#include <numeric>
#include <vector>

#include "cylrsk/errors.hpp"

namespace cylrsk {

// Cell coordinates are 1-based, row 1 at the top.
struct Cell {
    int row = 0;
    int col = 0;
    friend auto operator<=>(const Cell&, const Cell&) = default;
};

// Weakly decreasing sequence of nonnegative integers. Trailing zeros are
// normalized away; part(i) is zero-extended, so a fixed logical length N is
// supplied by the caller where it matters.
class Partition {
  public:
    Partition() = default;

    explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (parts_[i] < 0) throw validation_error("partition: negative part");
            if (i + 1 < parts_.size() && parts_[i] < parts_[i + 1])
                throw validation_error("partition: not weakly decreasing");
        }
        while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
    }

    static Partition zeros() { return Partition(); }

    // 1-based; zero beyond the stored length.
    int part(int i) const {
        return (i >= 1 && i <= static_cast<int>(parts_.size())) ? parts_[i - 1] : 0;
    }
    int num_rows() const { return static_cast<int>(parts_.size()); }
    long long size() const { return std::accumulate(parts_.begin(), parts_.end(), 0LL); }
    bool empty() const { return parts_.empty(); }
    const std::vector<int>& parts() const { return parts_; }

    // i-th part of the conjugate = number of parts >= i.
    Partition conjugate() const {
        std::vector<int> c(parts_.empty() ? 0 : parts_[0], 0);
        for (int i = 1; i <= static_cast<int>(c.size()); ++i)
            c[i - 1] = static_cast<int>(std::count_if(
                parts_.begin(), parts_.end(), [i](int p) { return p >= i; }));
        return Partition(std::move(c));
    }

    bool contains(const Partition& inner) const {
        int n = std::max(num_rows(), inner.num_rows());
        for (int i = 1; i <= n; ++i)
            if (inner.part(i) > part(i)) return false;
        return true;
    }

    friend bool operator==(const Partition& a, const Partition& b) { return a.parts_ == b.parts_; }
    friend auto operator<=>(const Partition& a, const Partition& b) { return a.parts_ <=> b.parts_; }

  private:
    std::vector<int> parts_;
};

inline Partition validate_partition(const std::vector<int>& parts) { return Partition(parts); }

struct SkewShape {
    Partition outer;
    Partition inner;

    SkewShape() = default;
    SkewShape(Partition out, Partition in) : outer(std::move(out)), inner(std::move(in)) {
        if (!outer.contains(inner)) throw validation_error("skew shape: inner not contained in outer");
    }

    long long size() const { return outer.size() - inner.size(); }
    friend bool operator==(const SkewShape&, const SkewShape&) = default;
};

// Row-major list of the cells of outer/inner.
inline std::vector<Cell> skew_cells(const SkewShape& s) {
    std::vector<Cell> cells;
    for (int r = 1; r <= s.outer.num_rows(); ++r)
        for (int c = s.inner.part(r) + 1; c <= s.outer.part(r); ++c) cells.push_back({r, c});
    return cells;
}

// A filling of a (skew) shape. Row r holds entries at columns
// inner_r+1 .. inner_r+rows[r-1].size(); constraint profiles are predicates,
// not baked into the type.
class Tableau {
  public:
    Tableau() = default;
    explicit Tableau(Partition inner) : inner_(std::move(inner)) {}

    Tableau(Partition inner, std::vector<std::vector<int>> rows)
        : inner_(std::move(inner)), rows_(std::move(rows)) {
        normalize();
        std::vector<int> outer;
        for (std::size_t r = 0; r < rows_.size(); ++r)
            outer.push_back(inner_.part(static_cast<int>(r) + 1) +
                            static_cast<int>(rows_[r].size()));
        Partition check(outer);  // throws if row lengths do not nest
        if (!check.contains(inner_)) throw validation_error("tableau: inner exceeds outer");
    }

    static Tableau from_rows(std::vector<std::vector<int>> rows) {
        return Tableau(Partition(), std::move(rows));
    }

    const Partition& inner() const { return inner_; }
    int num_rows() const { return static_cast<int>(rows_.size()); }
    int row_begin(int r) const { return inner_.part(r) + 1; }                  // first filled column
    int row_end(int r) const { return inner_.part(r) + row_len(r); }           // last filled column
    int row_len(int r) const {
        return (r >= 1 && r <= num_rows()) ? static_cast<int>(rows_[r - 1].size()) : 0;
    }

    Partition outer() const {
        std::vector<int> o;
        for (int r = 1; r <= num_rows(); ++r) o.push_back(row_end(r));
        return Partition(o);
    }
    SkewShape shape() const { return SkewShape(outer(), inner_); }
    long long num_cells() const {
        long long n = 0;
        for (auto& row : rows_) n += static_cast<long long>(row.size());
        return n;
    }
    bool empty() const { return rows_.empty(); }

    bool has_cell(int r, int c) const {
        return r >= 1 && r <= num_rows() && c >= row_begin(r) && c <= row_end(r);
    }
    int at(int r, int c) const {
        if (!has_cell(r, c)) throw validation_error("tableau: no such cell");
        return rows_[r - 1][c - row_begin(r)];
    }
    void set(int r, int c, int v) {
        if (!has_cell(r, c)) throw validation_error("tableau: no such cell");
        rows_[r - 1][c - row_begin(r)] = v;
    }

    // Append a cell at the right end of row r; must keep the diagram valid.
    void append(int r, int c, int v) {
        if (r < 1 || r > num_rows() + 1) throw validation_error("tableau: append row gap");
        if (r == num_rows() + 1) rows_.emplace_back();
        if (c != row_end(r) + 1) throw validation_error("tableau: append not at row end");
        if (r > 1 && row_end(r - 1) < c) throw validation_error("tableau: append breaks shape");
        rows_[r - 1].push_back(v);
    }

    // Remove the cell (r, c); must be the last cell of its row and leave a
    // valid diagram (no longer row below).
    void remove(int r, int c) {
        if (!has_cell(r, c) || c != row_end(r)) throw validation_error("tableau: cell not removable");
        if (r < num_rows() && row_end(r + 1) > c - 1)
            throw validation_error("tableau: removal breaks shape");
        rows_[r - 1].pop_back();
        normalize();
    }

    // Height of column c = number of rows whose filled range covers c. For
    // straight shapes (empty inner) columns are contiguous from row 1.
    int col_height(int c) const {
        int h = 0;
        for (int r = 1; r <= num_rows(); ++r)
            if (has_cell(r, c)) ++h;
        return h;
    }

    const std::vector<std::vector<int>>& rows() const { return rows_; }

    friend bool operator==(const Tableau& a, const Tableau& b) {
        return a.inner_ == b.inner_ && a.rows_ == b.rows_;
    }

  private:
    void normalize() {
        while (!rows_.empty() && rows_.back().empty()) rows_.pop_back();
    }

    Partition inner_;
    std::vector<std::vector<int>> rows_;
};

// Rows weakly increase left to right, columns strictly increase downward.
inline bool is_ssyt(const Tableau& t) {
    for (int r = 1; r <= t.num_rows(); ++r)
        for (int c = t.row_begin(r); c <= t.row_end(r); ++c) {
            if (c > t.row_begin(r) && t.at(r, c - 1) > t.at(r, c)) return false;
            if (r > 1 && t.has_cell(r - 1, c) && t.at(r - 1, c) >= t.at(r, c)) return false;
            if (t.at(r, c) < 1) return false;
        }
    return true;
}

// Rows strictly increase (recording tableaux of plain dual-RSK).
inline bool is_row_strict(const Tableau& t) {
    for (int r = 1; r <= t.num_rows(); ++r)
        for (int c = t.row_begin(r) + 1; c <= t.row_end(r); ++c)
            if (t.at(r, c - 1) >= t.at(r, c)) return false;
    return true;
}

// Rows strictly decrease, columns weakly increase.
inline bool is_anti_cossyt(const Tableau& t) {
    for (int r = 1; r <= t.num_rows(); ++r)
        for (int c = t.row_begin(r); c <= t.row_end(r); ++c) {
            if (c > t.row_begin(r) && t.at(r, c - 1) <= t.at(r, c)) return false;
            if (r > 1 && t.has_cell(r - 1, c) && t.at(r - 1, c) > t.at(r, c)) return false;
        }
    return true;
}

// Exponent vector in p_1..p_N.
struct Monomial {
    std::vector<int> exponents;

    explicit Monomial(int n = 0) : exponents(n, 0) {}
    explicit Monomial(std::vector<int> e) : exponents(std::move(e)) {}

    int degree() const { return std::accumulate(exponents.begin(), exponents.end(), 0); }
    friend auto operator<=>(const Monomial&, const Monomial&) = default;

    Monomial operator*(const Monomial& o) const {
        Monomial m = *this;
        for (std::size_t i = 0; i < exponents.size(); ++i) m.exponents[i] += o.exponents[i];
        return m;
    }
};

// Exponent k = multiplicity of entry k in t; entries must lie in [1, N].
inline Monomial tableau_weight(const Tableau& t, int n) {
    Monomial w(n);
    for (int r = 1; r <= t.num_rows(); ++r)
        for (int c = t.row_begin(r); c <= t.row_end(r); ++c) {
            int v = t.at(r, c);
            if (v < 1 || v > n) throw validation_error("tableau weight: entry out of range");
            ++w.exponents[v - 1];
        }
    return w;
}

}  // namespace cylrsk
