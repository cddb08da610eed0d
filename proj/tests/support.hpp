#ifndef WEYLKIT_TESTS_SUPPORT_HPP
#define WEYLKIT_TESTS_SUPPORT_HPP

#include <weylkit/linalg.hpp>
#include <weylkit/polynomial.hpp>
#include <weylkit/weyl_algebra.hpp>

#include <algorithm>
#include <cstdint>
#include <vector>

namespace testkit {

using weylkit::Int;
using weylkit::IntegralPolynomial;
using weylkit::PolyFamily;
using weylkit::Rat;
using weylkit::RationalMatrix;
using weylkit::RationalPolynomial;
using weylkit::Subspace;

// Deterministic splitmix64 stream so property tests replay byte-identically.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : s_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [lo, hi], inclusive.
    long long in_range(long long lo, long long hi) {
        return lo + static_cast<long long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }

  private:
    std::uint64_t s_;
};

// Textbook Gauss-Jordan over the rationals: a second route to the reduced
// echelon form, sharing no code with the fraction-free elimination under test.
inline RationalMatrix naive_rref(const RationalMatrix& m) {
    RationalMatrix a = m;
    const std::size_t R = a.rows(), C = a.cols();
    std::size_t r = 0;
    for (std::size_t c = 0; c < C && r < R; ++c) {
        std::size_t sel = r;
        while (sel < R && a.at(sel, c) == 0) ++sel;
        if (sel == R) continue;
        for (std::size_t j = 0; j < C; ++j) std::swap(a.at(sel, j), a.at(r, j));
        Rat p = a.at(r, c);
        for (std::size_t j = 0; j < C; ++j) a.at(r, j) /= p;
        for (std::size_t i = 0; i < R; ++i) {
            if (i == r) continue;
            Rat f = a.at(i, c);
            if (f == 0) continue;
            for (std::size_t j = 0; j < C; ++j) a.at(i, j) -= f * a.at(r, j);
        }
        ++r;
    }
    RationalMatrix out(R, C);
    std::size_t w = 0;
    for (std::size_t i = 0; i < R; ++i) {
        bool zero = true;
        for (std::size_t j = 0; j < C; ++j)
            if (a.at(i, j) != 0) zero = false;
        if (zero) continue;
        for (std::size_t j = 0; j < C; ++j) out.at(w, j) = a.at(i, j);
        ++w;
    }
    return out;
}

inline RationalMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
    RationalMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            m.at(i, j) = Rat(rng.in_range(-6, 6), rng.in_range(1, 4));
    return m;
}

// Polynomial with the given binomial-basis coefficients, reconstructed through
// from_values (sum of b_j * C(n, j) sampled at n = 0..deg).
inline IntegralPolynomial from_binomial_coeffs(const std::vector<Int>& b) {
    std::size_t deg = b.empty() ? 0 : b.size() - 1;
    std::vector<Int> values(deg + 1, Int(0));
    for (std::size_t n = 0; n <= deg; ++n)
        for (std::size_t j = 0; j < b.size(); ++j)
            values[n] += b[j] * weylkit::binomial(Int(n), static_cast<unsigned>(j));
    return IntegralPolynomial::from_values(values);
}

// Random integral polynomial with zero constant term, degree in [1, max_deg],
// binomial coefficients in [-3, 3], nonzero leading coefficient.
inline IntegralPolynomial random_poly(Rng& rng, int max_deg) {
    int deg = static_cast<int>(rng.in_range(1, max_deg));
    for (;;) {
        std::vector<Int> b(static_cast<std::size_t>(deg) + 1, Int(0));
        for (int j = 1; j <= deg; ++j) b[static_cast<std::size_t>(j)] = Int(rng.in_range(-3, 3));
        if (b.back() == 0) continue;
        return from_binomial_coeffs(b);
    }
}

inline PolyFamily random_family(Rng& rng, std::size_t max_r, int max_deg) {
    std::size_t r = static_cast<std::size_t>(rng.in_range(1, static_cast<long long>(max_r)));
    for (;;) {
        std::vector<IntegralPolynomial> ps;
        for (std::size_t i = 0; i < r; ++i) ps.push_back(random_poly(rng, max_deg));
        if (weylkit::essentially_distinct(ps)) return PolyFamily(std::move(ps));
    }
}

// Family whose members have integer monomial coefficients (still zero constant
// term): the shape needed for exact scaling arguments along arithmetic
// progressions, where (p(mn+i) - p(i))/m must stay integral.
inline PolyFamily random_monomial_family(Rng& rng, std::size_t max_r, int max_deg) {
    std::size_t r = static_cast<std::size_t>(rng.in_range(1, static_cast<long long>(max_r)));
    for (;;) {
        std::vector<IntegralPolynomial> ps;
        for (std::size_t i = 0; i < r; ++i) {
            int deg = static_cast<int>(rng.in_range(1, max_deg));
            std::vector<Rat> c(static_cast<std::size_t>(deg) + 1, Rat(0));
            for (int j = 1; j <= deg; ++j) c[static_cast<std::size_t>(j)] = Rat(Int(rng.in_range(-2, 2)));
            if (c.back() == 0) c.back() = Rat(1);
            ps.push_back(IntegralPolynomial::from_monomial(RationalPolynomial(c)));
        }
        if (weylkit::essentially_distinct(ps)) return PolyFamily(std::move(ps));
    }
}

// Subspace equality / inclusion across possibly different ambient widths.
inline bool same_space(const weylkit::WeylSpace& a, const weylkit::WeylSpace& b) {
    std::size_t w = std::max(a.rational_basis.ambient(), b.rational_basis.ambient());
    return a.rational_basis.padded(w) == b.rational_basis.padded(w);
}

inline bool space_includes(const weylkit::WeylSpace& big, const weylkit::WeylSpace& small) {
    std::size_t w = std::max(big.rational_basis.ambient(), small.rational_basis.ambient());
    return big.rational_basis.padded(w).includes(small.rational_basis.padded(w));
}

}  // namespace testkit

#endif  // WEYLKIT_TESTS_SUPPORT_HPP
