#ifndef WEYLKIT_WEYL_ALGEBRA_HPP
#define WEYLKIT_WEYL_ALGEBRA_HPP

#include <weylkit/linalg.hpp>
#include <weylkit/polynomial.hpp>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace weylkit {

struct PolyFamily {
    std::vector<IntegralPolynomial> polys;
    bool essentially_distinct = false;
    bool zero_constant_term = false;

    PolyFamily() = default;
    explicit PolyFamily(std::vector<IntegralPolynomial> ps) : polys(std::move(ps)) {
        if (polys.empty()) throw std::invalid_argument("family must be nonempty");
        essentially_distinct = weylkit::essentially_distinct(polys);
        zero_constant_term = true;
        for (const auto& p : polys)
            if (!p.has_zero_constant_term()) zero_constant_term = false;
    }

    std::size_t r() const { return polys.size(); }
    int max_degree() const {
        int d = kNegInfDegree;
        for (const auto& p : polys) d = std::max(d, p.degree());
        return d;
    }
    std::string str() const {
        std::string s = "{";
        for (std::size_t i = 0; i < polys.size(); ++i) {
            if (i) s += ", ";
            s += polys[i].str();
        }
        return s + "}";
    }
};

inline PolyFamily parse_family(const std::string& text) {
    std::vector<IntegralPolynomial> ps;
    std::size_t start = 0;
    int depth = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i < text.size() && text[i] == '(') ++depth;
        if (i < text.size() && text[i] == ')') --depth;
        if (i == text.size() || (text[i] == ',' && depth == 0)) {
            ps.push_back(parse_polynomial(text.substr(start, i - start)));
            start = i + 1;
        }
    }
    return PolyFamily(std::move(ps));
}

// The (r*k) x k matrix Lambda_k(P): rows in k blocks of r, block b holding the
// b-th binomial transforms; entry at (block b, poly i, column c) is p_i^[b-c+1]
// when c <= b and zero otherwise.  Lambda_0 is the empty matrix.
class LambdaMatrix {
  public:
    LambdaMatrix(const PolyFamily& fam, unsigned k) : k_(k), r_(fam.r()), family_(fam) {
        if (!fam.essentially_distinct)
            throw std::invalid_argument("family must be essentially distinct");
        tf_.resize(r_);
        for (std::size_t i = 0; i < r_; ++i) {
            tf_[i].reserve(k);
            for (unsigned b = 1; b <= k; ++b)
                tf_[i].push_back(fam.polys[i].binomial_transform(b));
        }
    }

    unsigned k() const { return k_; }
    std::size_t r() const { return r_; }
    std::size_t rows() const { return r_ * k_; }
    std::size_t cols() const { return k_; }
    const PolyFamily& family() const { return family_; }

    // p_i^[b], 0-based poly index, b in [1, k].
    const IntegralPolynomial& transform(std::size_t i, unsigned b) const {
        return tf_[i][b - 1];
    }

    // Entry by 0-based row/column; row = (b-1)*r + i.
    IntegralPolynomial entry(std::size_t row, std::size_t col) const {
        unsigned b = static_cast<unsigned>(row / r_) + 1;
        std::size_t i = row % r_;
        unsigned c = static_cast<unsigned>(col) + 1;
        if (c > b) return {};
        return transform(i, b - c + 1);
    }

  private:
    unsigned k_;
    std::size_t r_;
    PolyFamily family_;
    std::vector<std::vector<IntegralPolynomial>> tf_;
};

// R-span of Lambda_k as a subspace of Q^(r*k): the span of the monomial
// coefficient vectors of every column (equivalently, of all column values
// Lambda_k(x), x real, by Vandermonde).
inline Subspace r_span(const LambdaMatrix& L) {
    const std::size_t rk = L.rows();
    std::vector<std::vector<Rat>> gens;
    for (std::size_t c = 0; c < L.cols(); ++c) {
        std::vector<RationalPolynomial> col(rk);
        int maxdeg = 0;
        for (std::size_t row = 0; row < rk; ++row) {
            col[row] = L.entry(row, c).to_monomial();
            maxdeg = std::max(maxdeg, col[row].degree());
        }
        for (int j = 0; j <= maxdeg; ++j) {
            std::vector<Rat> v(rk);
            for (std::size_t row = 0; row < rk; ++row) v[row] = col[row].coeff(static_cast<std::size_t>(j));
            gens.push_back(std::move(v));
        }
    }
    return Subspace::span_of_rows(rk, gens);
}

inline std::size_t span_dim(const LambdaMatrix& L) { return r_span(L).dim(); }

// xi(v) = v^T Lambda_k e_1 = sum_{b,i} v_{(b-1)r+i} * p_i^[b].
inline RationalPolynomial xi_image(const LambdaMatrix& L, const std::vector<Rat>& v) {
    if (v.size() != L.rows()) throw std::invalid_argument("xi argument width mismatch");
    RationalPolynomial acc;
    for (unsigned b = 1; b <= L.k(); ++b)
        for (std::size_t i = 0; i < L.r(); ++i) {
            const Rat& c = v[(b - 1) * L.r() + i];
            if (c == 0) continue;
            acc = acc + L.transform(i, b).to_monomial().scaled(c);
        }
    return acc;
}

struct NotStabilizedError : std::runtime_error {
    std::vector<std::pair<unsigned, std::size_t>> trace;  // (k, dim R-span(Lambda_k))
    explicit NotStabilizedError(std::vector<std::pair<unsigned, std::size_t>> t)
        : std::runtime_error("Weyl complexity did not stabilize within k_max"), trace(std::move(t)) {}
};

inline unsigned default_k_max(const PolyFamily& fam) {
    return 2 * (static_cast<unsigned>(fam.r()) * static_cast<unsigned>(fam.max_degree()) + 1);
}

// Minimal k with dim R-span(Lambda_k) = dim R-span(Lambda_{k-1}) + r.
inline unsigned weyl_complexity(const PolyFamily& fam, unsigned k_max = 0,
                                std::vector<std::pair<unsigned, std::size_t>>* trace_out = nullptr) {
    if (k_max == 0) k_max = default_k_max(fam);
    std::vector<std::pair<unsigned, std::size_t>> trace;
    std::size_t prev = 0;
    for (unsigned k = 1; k <= k_max; ++k) {
        std::size_t d = span_dim(LambdaMatrix(fam, k));
        trace.emplace_back(k, d);
        if (d == prev + fam.r()) {
            if (trace_out) *trace_out = trace;
            return k;
        }
        prev = d;
    }
    throw NotStabilizedError(std::move(trace));
}

// The space WP_k(P) of k-th Weyl polynomials, with its canonical rational
// basis (RREF of monomial coefficient rows) and the integral basis obtained
// by scaling each rational basis vector by the least positive integer that
// clears its binomial-coefficient denominators.
struct WeylSpace {
    PolyFamily family;
    unsigned k = 0;
    int ambient_degree = 0;             // coordinates = monomial coeffs 0..ambient_degree
    Subspace rational_basis;            // subspace of Q^(ambient_degree+1)
    std::vector<RationalPolynomial> rational_rows;
    std::vector<IntegralPolynomial> integral_basis;

    std::size_t dim() const { return rational_basis.dim(); }

    std::string canonical_text() const {
        std::string s = "span{";
        for (std::size_t i = 0; i < integral_basis.size(); ++i) {
            if (i) s += ", ";
            s += integral_basis[i].str();
        }
        return s + "}";
    }
};

inline std::vector<Rat> poly_coord_vector(const RationalPolynomial& p, std::size_t width) {
    std::vector<Rat> v(width);
    for (std::size_t j = 0; j < width; ++j) v[j] = p.coeff(j);
    return v;
}

// Least positive integer multiple of p whose binomial coefficients are integers.
inline IntegralPolynomial integral_scale(const RationalPolynomial& p) {
    if (p.is_zero()) return {};
    std::size_t m = static_cast<std::size_t>(p.degree());
    std::vector<Rat> values(m + 1);
    for (std::size_t i = 0; i <= m; ++i) values[i] = p.eval(Rat(Int(i)));
    Int l = 1;
    std::vector<Rat> tab(values);
    for (std::size_t j = 0; j <= m; ++j) {
        l = boost::multiprecision::lcm(l, rat_den(tab.front()));
        for (std::size_t i = 0; i + 1 < tab.size(); ++i) tab[i] = tab[i + 1] - tab[i];
        tab.pop_back();
    }
    return IntegralPolynomial::from_monomial(p.scaled(Rat(l)));
}

inline WeylSpace weyl_space(const PolyFamily& fam, unsigned k) {
    if (!fam.essentially_distinct)
        throw std::invalid_argument("family must be essentially distinct");
    WeylSpace W;
    W.family = fam;
    W.k = k;
    if (k == 0) {
        W.ambient_degree = 0;
        W.rational_basis = Subspace(1);
        return W;
    }

    LambdaMatrix L(fam, k);
    std::vector<RationalPolynomial> images;
    for (const auto& p : fam.polys) images.push_back(p.to_monomial());
    if (k >= 2) {
        Subspace tail = r_span(LambdaMatrix(fam, k - 1)).orthocomplement();
        const std::size_t rk = fam.r() * k;
        for (std::size_t t = 0; t < tail.dim(); ++t) {
            std::vector<Rat> v(rk);
            std::vector<Rat> w = tail.basis().row(t);
            for (std::size_t j = 0; j < w.size(); ++j) v[fam.r() + j] = w[j];
            images.push_back(xi_image(L, v));
        }
    }

    int D = 1;
    for (const auto& im : images) D = std::max(D, im.degree());
    W.ambient_degree = D;
    std::vector<std::vector<Rat>> rows;
    for (const auto& im : images)
        rows.push_back(poly_coord_vector(im, static_cast<std::size_t>(D) + 1));
    W.rational_basis = Subspace::span_of_rows(static_cast<std::size_t>(D) + 1, rows);
    for (std::size_t i = 0; i < W.rational_basis.dim(); ++i) {
        RationalPolynomial row(W.rational_basis.basis().row(i));
        W.rational_rows.push_back(row);
        W.integral_basis.push_back(integral_scale(row));
    }
    return W;
}

inline bool contains_rational(const WeylSpace& W, const RationalPolynomial& h) {
    if (h.is_zero()) return true;
    std::size_t width = static_cast<std::size_t>(std::max(W.ambient_degree, h.degree())) + 1;
    Subspace s = W.rational_basis.padded(width);
    return s.contains(poly_coord_vector(h, width));
}

inline bool contains_poly(const WeylSpace& W, const IntegralPolynomial& h) {
    return contains_rational(W, h.to_monomial());
}

// weyl_polynomials(P) = WP_{W(P)}(P); dimension r by stabilization.
inline WeylSpace weyl_polynomials(const PolyFamily& fam, unsigned k_max = 0,
                                  std::vector<std::pair<unsigned, std::size_t>>* trace_out = nullptr) {
    unsigned k = weyl_complexity(fam, k_max, trace_out);
    WeylSpace W = weyl_space(fam, k);
    if (W.dim() != fam.r())
        throw std::logic_error("stabilized Weyl space has dimension != r");
    return W;
}

enum class CompareVerdict { Equivalent, PrecImpliesQrec, QrecImpliesPrec, GeneralPosition };

inline std::string verdict_name(CompareVerdict v) {
    switch (v) {
        case CompareVerdict::Equivalent: return "Equivalent";
        case CompareVerdict::PrecImpliesQrec: return "PrecImpliesQrec";
        case CompareVerdict::QrecImpliesPrec: return "QrecImpliesPrec";
        default: return "GeneralPosition";
    }
}

struct SchemeComparison {
    CompareVerdict verdict;
    WeylSpace wp, wq;
    // First canonical basis row of one space that the other misses.
    std::optional<RationalPolynomial> cert_p_not_q;  // in WP(P) \ WP(Q)
    std::optional<RationalPolynomial> cert_q_not_p;  // in WP(Q) \ WP(P)
};

// Inclusion WP(A) <= WP(B) holds iff every B-recurrence set is an
// A-recurrence set; so WP(Q) <= WP(P) means P-recurrence implies Q-recurrence.
inline SchemeComparison scheme_compare(const PolyFamily& P, const PolyFamily& Q,
                                       unsigned k_max = 0) {
    SchemeComparison out{CompareVerdict::GeneralPosition, weyl_polynomials(P, k_max),
                         weyl_polynomials(Q, k_max), std::nullopt, std::nullopt};
    bool p_in_q = true, q_in_p = true;
    for (const auto& row : out.wp.rational_rows)
        if (!contains_rational(out.wq, row)) {
            p_in_q = false;
            if (!out.cert_p_not_q) out.cert_p_not_q = row;
        }
    for (const auto& row : out.wq.rational_rows)
        if (!contains_rational(out.wp, row)) {
            q_in_p = false;
            if (!out.cert_q_not_p) out.cert_q_not_p = row;
        }
    if (p_in_q && q_in_p) out.verdict = CompareVerdict::Equivalent;
    else if (q_in_p) out.verdict = CompareVerdict::PrecImpliesQrec;
    else if (p_in_q) out.verdict = CompareVerdict::QrecImpliesPrec;
    return out;
}

}  // namespace weylkit

#endif  // WEYLKIT_WEYL_ALGEBRA_HPP
