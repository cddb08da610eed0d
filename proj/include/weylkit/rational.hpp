#ifndef WEYLKIT_RATIONAL_HPP
#define WEYLKIT_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace weylkit {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& q) { return Int(boost::multiprecision::numerator(q)); }
inline Int rat_den(const Rat& q) { return Int(boost::multiprecision::denominator(q)); }

inline std::string int_str(const Int& n) { return n.str(); }

inline std::string rat_str(const Rat& q) {
    Int d = rat_den(q);
    if (d == 1) return rat_num(q).str();
    return rat_num(q).str() + "/" + d.str();
}

inline double rat_double(const Rat& q) { return q.convert_to<double>(); }

// Floor of an exact rational; exact for negatives as well.
inline Int rat_floor(const Rat& q) {
    Int n = rat_num(q), d = rat_den(q);
    Int quo = n / d;
    if (n % d != 0 && n < 0) --quo;
    return quo;
}

// Fractional part in [0, 1).
inline Rat rat_frac(const Rat& q) { return q - Rat(rat_floor(q)); }

// frac(k * a) for a = num/den in lowest terms, reducing k mod den first.
inline Rat frac_mult(const Int& k, const Rat& a) {
    Int d = rat_den(a);
    Int r = (k % d) * rat_num(a) % d;
    if (r < 0) r += d;
    return Rat(r, d);
}

// Distance to the nearest integer of a fractional part f in [0, 1).
inline Rat torus_dist_of_frac(const Rat& f) {
    Rat other = Rat(1) - f;
    return f < other ? f : other;
}

// || k * a || = distance of k*a to the nearest integer, exact.
inline Rat torus_dist(const Int& k, const Rat& a) {
    return torus_dist_of_frac(frac_mult(k, a));
}

inline Int parse_int_str(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty integer literal");
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) throw std::invalid_argument("bad integer literal: " + s);
    for (std::size_t i = start; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("bad integer literal: " + s);
    return Int(s);
}

// Parses "a" or "a/b" with b != 0.
inline Rat parse_rat_str(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(parse_int_str(s));
    Int num = parse_int_str(s.substr(0, slash));
    Int den = parse_int_str(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator: " + s);
    return Rat(num, den);
}

// Complex number with exact rational real and imaginary parts.
struct GaussianRat {
    Rat re;
    Rat im;

    GaussianRat() = default;
    GaussianRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
    explicit GaussianRat(const Rat& r) : re(r), im(0) {}

    GaussianRat operator+(const GaussianRat& o) const { return {re + o.re, im + o.im}; }
    GaussianRat operator-(const GaussianRat& o) const { return {re - o.re, im - o.im}; }
    GaussianRat operator*(const GaussianRat& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    bool operator==(const GaussianRat& o) const { return re == o.re && im == o.im; }
    bool is_zero() const { return re == 0 && im == 0; }
    GaussianRat conj() const { return {re, -im}; }
    Rat norm2() const { return re * re + im * im; }

    std::string str() const {
        if (im == 0) return rat_str(re);
        if (re == 0) return rat_str(im) + "i";
        std::string s = rat_str(re);
        s += (im > 0) ? "+" : "-";
        Rat a = im > 0 ? im : Rat(-im);
        return s + rat_str(a) + "i";
    }
};

}  // namespace weylkit

#endif  // WEYLKIT_RATIONAL_HPP
