#ifndef WEYLKIT_LINALG_HPP
#define WEYLKIT_LINALG_HPP

#include <weylkit/rational.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace weylkit {

// Dense matrix over the rationals, row-major.
class RationalMatrix {
  public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols) {}
    RationalMatrix(std::size_t rows, std::size_t cols, std::vector<Rat> entries)
        : rows_(rows), cols_(cols), a_(std::move(entries)) {
        if (a_.size() != rows * cols) throw std::invalid_argument("entry count mismatch");
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rat& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rat& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    std::vector<Rat> row(std::size_t i) const {
        return std::vector<Rat>(a_.begin() + static_cast<long>(i * cols_),
                                a_.begin() + static_cast<long>((i + 1) * cols_));
    }

    RationalMatrix transpose() const {
        RationalMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    static RationalMatrix from_rows(const std::vector<std::vector<Rat>>& rows) {
        if (rows.empty()) return {};
        RationalMatrix m(rows.size(), rows[0].size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_) throw std::invalid_argument("ragged rows");
            for (std::size_t j = 0; j < m.cols_; ++j) m.at(i, j) = rows[i][j];
        }
        return m;
    }

    bool operator==(const RationalMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rat> a_;
};

struct RrefResult {
    RationalMatrix mat;            // reduced row echelon form
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;  // pivot column per pivot row
};

// Reduced row echelon form.  Rows are first scaled to integers, forward
// elimination runs fraction-free (Bareiss: entries stay integral, each step
// divides exactly by the previous pivot), pivot rows chosen as the first row
// with a nonzero entry in the pivot column; back-substitution and pivot
// normalization then produce the canonical rational RREF.
inline RrefResult rref(const RationalMatrix& m) {
    const std::size_t R = m.rows(), C = m.cols();
    std::vector<std::vector<Int>> w(R, std::vector<Int>(C));
    for (std::size_t i = 0; i < R; ++i) {
        Int l = 1;
        for (std::size_t j = 0; j < C; ++j)
            l = boost::multiprecision::lcm(l, rat_den(m.at(i, j)));
        for (std::size_t j = 0; j < C; ++j) {
            Rat v = m.at(i, j) * Rat(l);
            w[i][j] = rat_num(v);
        }
    }

    std::vector<std::size_t> pivots;
    Int prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < C && r < R; ++c) {
        std::size_t sel = r;
        while (sel < R && w[sel][c] == 0) ++sel;
        if (sel == R) continue;
        std::swap(w[sel], w[r]);
        for (std::size_t i = r + 1; i < R; ++i) {
            for (std::size_t j = c + 1; j < C; ++j)
                w[i][j] = (w[r][c] * w[i][j] - w[i][c] * w[r][j]) / prev;
            w[i][c] = 0;
        }
        prev = w[r][c];
        pivots.push_back(c);
        ++r;
    }

    RationalMatrix out(R, C);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < C; ++j) out.at(i, j) = Rat(w[i][j]);
    for (std::size_t i = r; i-- > 0;) {
        Rat p = out.at(i, pivots[i]);
        for (std::size_t j = pivots[i]; j < C; ++j) out.at(i, j) /= p;
        for (std::size_t u = 0; u < i; ++u) {
            Rat f = out.at(u, pivots[i]);
            if (f == 0) continue;
            for (std::size_t j = pivots[i]; j < C; ++j)
                out.at(u, j) -= f * out.at(i, j);
        }
    }
    return {std::move(out), r, std::move(pivots)};
}

inline std::size_t rank(const RationalMatrix& m) { return rref(m).rank; }

// Basis of { x : M x = 0 }, one row per free column of the RREF.
inline RationalMatrix nullspace(const RationalMatrix& m) {
    RrefResult r = rref(m);
    const std::size_t C = m.cols();
    std::vector<bool> is_pivot(C, false);
    for (std::size_t c : r.pivots) is_pivot[c] = true;
    std::vector<std::vector<Rat>> rows;
    for (std::size_t f = 0; f < C; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rat> v(C);
        v[f] = 1;
        for (std::size_t i = 0; i < r.rank; ++i) v[r.pivots[i]] = -r.mat.at(i, f);
        rows.push_back(std::move(v));
    }
    RationalMatrix out(rows.size(), C);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < C; ++j) out.at(i, j) = rows[i][j];
    return out;
}

// Linear subspace of Q^ambient with a canonical basis: the RREF rows of any
// generating set.  Equal subspaces have identical representations.
class Subspace {
  public:
    Subspace() = default;
    explicit Subspace(std::size_t ambient) : ambient_(ambient), basis_(0, ambient) {}

    static Subspace span_of(std::size_t ambient, const RationalMatrix& generators) {
        Subspace s(ambient);
        if (generators.rows() == 0) return s;
        if (generators.cols() != ambient) throw std::invalid_argument("generator width mismatch");
        RrefResult r = rref(generators);
        RationalMatrix b(r.rank, ambient);
        for (std::size_t i = 0; i < r.rank; ++i)
            for (std::size_t j = 0; j < ambient; ++j) b.at(i, j) = r.mat.at(i, j);
        s.basis_ = std::move(b);
        s.pivots_ = std::move(r.pivots);
        return s;
    }

    static Subspace span_of_rows(std::size_t ambient, const std::vector<std::vector<Rat>>& rows) {
        if (rows.empty()) return Subspace(ambient);
        return span_of(ambient, RationalMatrix::from_rows(rows));
    }

    std::size_t ambient() const { return ambient_; }
    std::size_t dim() const { return basis_.rows(); }
    const RationalMatrix& basis() const { return basis_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    bool contains(const std::vector<Rat>& v) const {
        if (v.size() != ambient_) throw std::invalid_argument("vector width mismatch");
        std::vector<Rat> w(v);
        for (std::size_t i = 0; i < basis_.rows(); ++i) {
            Rat f = w[pivots_[i]];
            if (f == 0) continue;
            for (std::size_t j = pivots_[i]; j < ambient_; ++j) w[j] -= f * basis_.at(i, j);
        }
        for (const Rat& x : w)
            if (x != 0) return false;
        return true;
    }

    bool includes(const Subspace& other) const {
        if (other.ambient_ != ambient_) throw std::invalid_argument("ambient mismatch");
        for (std::size_t i = 0; i < other.basis_.rows(); ++i)
            if (!contains(other.basis_.row(i))) return false;
        return true;
    }

    bool operator==(const Subspace& o) const {
        return ambient_ == o.ambient_ && basis_ == o.basis_;
    }
    bool operator!=(const Subspace& o) const { return !(*this == o); }

    Subspace sum(const Subspace& o) const {
        if (o.ambient_ != ambient_) throw std::invalid_argument("ambient mismatch");
        std::vector<std::vector<Rat>> rows;
        for (std::size_t i = 0; i < basis_.rows(); ++i) rows.push_back(basis_.row(i));
        for (std::size_t i = 0; i < o.basis_.rows(); ++i) rows.push_back(o.basis_.row(i));
        return span_of_rows(ambient_, rows);
    }

    // { w : <w, v> = 0 for all v in this }, as the nullspace of the basis.
    Subspace orthocomplement() const {
        if (dim() == 0) {
            RationalMatrix id(ambient_, ambient_);
            for (std::size_t i = 0; i < ambient_; ++i) id.at(i, i) = 1;
            return span_of(ambient_, id);
        }
        return span_of(ambient_, nullspace(basis_));
    }

    Subspace intersect(const Subspace& o) const {
        return orthocomplement().sum(o.orthocomplement()).orthocomplement();
    }

    // The same subspace embedded in a larger ambient space (zero-padded).
    Subspace padded(std::size_t new_ambient) const {
        if (new_ambient < ambient_) throw std::invalid_argument("cannot shrink ambient");
        if (new_ambient == ambient_) return *this;
        Subspace s(new_ambient);
        RationalMatrix b(basis_.rows(), new_ambient);
        for (std::size_t i = 0; i < basis_.rows(); ++i)
            for (std::size_t j = 0; j < ambient_; ++j) b.at(i, j) = basis_.at(i, j);
        s.basis_ = std::move(b);
        s.pivots_ = pivots_;
        return s;
    }

  private:
    std::size_t ambient_ = 0;
    RationalMatrix basis_;  // RREF rows, no zero rows
    std::vector<std::size_t> pivots_;
};

}  // namespace weylkit

#endif  // WEYLKIT_LINALG_HPP
