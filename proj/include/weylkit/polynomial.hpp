#ifndef WEYLKIT_POLYNOMIAL_HPP
#define WEYLKIT_POLYNOMIAL_HPP

#include <weylkit/rational.hpp>

#include <algorithm>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace weylkit {

// Degree of the zero polynomial; compares below every attainable degree.
inline constexpr int kNegInfDegree = std::numeric_limits<int>::min();

// binom(n, k) for arbitrary integer n via the falling-factorial formula;
// each intermediate division is exact.
inline Int binomial(const Int& n, unsigned k) {
    Int acc = 1;
    for (unsigned i = 0; i < k; ++i) {
        acc *= n - Int(i);
        acc /= Int(i) + 1;
    }
    return acc;
}

struct ParseError : std::runtime_error {
    std::size_t pos;
    ParseError(const std::string& msg, std::size_t p)
        : std::runtime_error(msg + " at position " + std::to_string(p)), pos(p) {}
};

struct IntegralityError : std::runtime_error {
    std::size_t index;
    Rat value;
    IntegralityError(std::size_t j, Rat v)
        : std::runtime_error("non-integral binomial coefficient binom(n," + std::to_string(j) +
                             "): " + rat_str(v)),
          index(j),
          value(std::move(v)) {}
};

// Polynomial with rational coefficients in the monomial basis, ascending
// degree, trailing zeros trimmed (zero polynomial = empty coefficient list).
class RationalPolynomial {
  public:
    RationalPolynomial() = default;
    explicit RationalPolynomial(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

    static RationalPolynomial constant(const Rat& c) {
        return RationalPolynomial(std::vector<Rat>{c});
    }
    static RationalPolynomial monomial(unsigned j, const Rat& c) {
        std::vector<Rat> v(j + 1);
        v[j] = c;
        return RationalPolynomial(std::move(v));
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return c_.empty() ? kNegInfDegree : static_cast<int>(c_.size()) - 1; }
    Rat coeff(std::size_t j) const { return j < c_.size() ? c_[j] : Rat(0); }
    const std::vector<Rat>& coeffs() const { return c_; }

    Rat eval(const Rat& x) const {
        Rat acc = 0;
        for (std::size_t j = c_.size(); j-- > 0;) acc = acc * x + c_[j];
        return acc;
    }
    Rat eval(const Int& n) const { return eval(Rat(n)); }

    RationalPolynomial operator+(const RationalPolynomial& o) const {
        std::vector<Rat> v(std::max(c_.size(), o.c_.size()));
        for (std::size_t j = 0; j < v.size(); ++j) v[j] = coeff(j) + o.coeff(j);
        return RationalPolynomial(std::move(v));
    }
    RationalPolynomial operator-(const RationalPolynomial& o) const {
        std::vector<Rat> v(std::max(c_.size(), o.c_.size()));
        for (std::size_t j = 0; j < v.size(); ++j) v[j] = coeff(j) - o.coeff(j);
        return RationalPolynomial(std::move(v));
    }
    RationalPolynomial operator-() const {
        std::vector<Rat> v(c_);
        for (auto& x : v) x = -x;
        return RationalPolynomial(std::move(v));
    }
    RationalPolynomial operator*(const RationalPolynomial& o) const {
        if (is_zero() || o.is_zero()) return {};
        std::vector<Rat> v(c_.size() + o.c_.size() - 1);
        for (std::size_t a = 0; a < c_.size(); ++a)
            for (std::size_t b = 0; b < o.c_.size(); ++b) v[a + b] += c_[a] * o.c_[b];
        return RationalPolynomial(std::move(v));
    }
    RationalPolynomial scaled(const Rat& s) const {
        std::vector<Rat> v(c_);
        for (auto& x : v) x *= s;
        return RationalPolynomial(std::move(v));
    }

    // p.compose(q) = p(q(x)), by Horner in the polynomial ring.
    RationalPolynomial compose(const RationalPolynomial& q) const {
        RationalPolynomial acc;
        for (std::size_t j = c_.size(); j-- > 0;) {
            acc = acc * q;
            acc = acc + constant(c_[j]);
        }
        return acc;
    }

    bool operator==(const RationalPolynomial& o) const { return c_ == o.c_; }
    bool operator!=(const RationalPolynomial& o) const { return !(*this == o); }

    std::string str() const {
        if (c_.empty()) return "0";
        std::string out;
        bool first = true;
        for (std::size_t j = 0; j < c_.size(); ++j) {
            if (c_[j] == 0) continue;
            Rat a = c_[j];
            if (first) {
                if (a < 0) {
                    out += "-";
                    a = -a;
                }
            } else {
                out += (a < 0) ? " - " : " + ";
                if (a < 0) a = -a;
            }
            if (j == 0) {
                out += rat_str(a);
            } else {
                if (a != 1) out += rat_str(a) + "*";
                out += "n";
                if (j > 1) out += "^" + std::to_string(j);
            }
            first = false;
        }
        return out.empty() ? "0" : out;
    }

  private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Rat> c_;
};

// Integer-valued polynomial stored by its coefficients in the binomial basis:
// p(n) = sum_j b_[j] * binom(n, j).  Integrality holds exactly when all b_[j]
// are integers (Newton forward-difference expansion).
class IntegralPolynomial {
  public:
    IntegralPolynomial() = default;
    explicit IntegralPolynomial(std::vector<Int> binom_coeffs) : b_(std::move(binom_coeffs)) {
        trim();
    }

    static IntegralPolynomial constant(const Int& c) {
        return IntegralPolynomial(std::vector<Int>{c});
    }

    // Interpolates the unique polynomial of degree < values.size() through
    // (i, values[i]) via the finite-difference table; exact in integers.
    static IntegralPolynomial from_values(std::vector<Int> values) {
        std::vector<Int> coeffs;
        coeffs.reserve(values.size());
        while (!values.empty()) {
            coeffs.push_back(values.front());
            for (std::size_t i = 0; i + 1 < values.size(); ++i) values[i] = values[i + 1] - values[i];
            values.pop_back();
        }
        return IntegralPolynomial(std::move(coeffs));
    }

    // Conversion from the monomial basis; throws IntegralityError naming the
    // first non-integral binomial coefficient.
    static IntegralPolynomial from_monomial(const RationalPolynomial& p) {
        if (p.is_zero()) return {};
        std::size_t m = static_cast<std::size_t>(p.degree());
        std::vector<Rat> values(m + 1);
        for (std::size_t i = 0; i <= m; ++i) values[i] = p.eval(Rat(Int(i)));
        std::vector<Int> coeffs;
        coeffs.reserve(m + 1);
        for (std::size_t j = 0; j <= m; ++j) {
            const Rat& c = values.front();
            if (rat_den(c) != 1) throw IntegralityError(j, c);
            coeffs.push_back(rat_num(c));
            for (std::size_t i = 0; i + 1 < values.size(); ++i) values[i] = values[i + 1] - values[i];
            values.pop_back();
        }
        return IntegralPolynomial(std::move(coeffs));
    }

    bool is_zero() const { return b_.empty(); }
    int degree() const { return b_.empty() ? kNegInfDegree : static_cast<int>(b_.size()) - 1; }
    Int binom_coeff(std::size_t j) const { return j < b_.size() ? b_[j] : Int(0); }
    const std::vector<Int>& binom_coeffs() const { return b_; }
    Int constant_term() const { return binom_coeff(0); }
    bool has_zero_constant_term() const { return constant_term() == 0; }

    Int eval(const Int& n) const {
        Int acc = 0;
        Int ch = 1;  // binom(n, j), updated incrementally
        for (std::size_t j = 0; j < b_.size(); ++j) {
            if (j > 0) {
                ch *= n - Int(j - 1);
                ch /= Int(j);
            }
            acc += b_[j] * ch;
        }
        return acc;
    }

    RationalPolynomial to_monomial() const {
        RationalPolynomial acc;
        RationalPolynomial basis = RationalPolynomial::constant(1);  // binom(n, j)
        for (std::size_t j = 0; j < b_.size(); ++j) {
            if (j > 0) {
                RationalPolynomial lin(std::vector<Rat>{Rat(-Int(j - 1)), Rat(1)});
                basis = (basis * lin).scaled(Rat(1, static_cast<int>(j)));
            }
            acc = acc + basis.scaled(Rat(b_[j]));
        }
        return acc;
    }

    IntegralPolynomial operator+(const IntegralPolynomial& o) const {
        std::vector<Int> v(std::max(b_.size(), o.b_.size()));
        for (std::size_t j = 0; j < v.size(); ++j) v[j] = binom_coeff(j) + o.binom_coeff(j);
        return IntegralPolynomial(std::move(v));
    }
    IntegralPolynomial operator-(const IntegralPolynomial& o) const {
        std::vector<Int> v(std::max(b_.size(), o.b_.size()));
        for (std::size_t j = 0; j < v.size(); ++j) v[j] = binom_coeff(j) - o.binom_coeff(j);
        return IntegralPolynomial(std::move(v));
    }
    IntegralPolynomial operator-() const {
        std::vector<Int> v(b_);
        for (auto& x : v) x = -x;
        return IntegralPolynomial(std::move(v));
    }
    IntegralPolynomial scaled(const Int& s) const {
        std::vector<Int> v(b_);
        for (auto& x : v) x *= s;
        return IntegralPolynomial(std::move(v));
    }

    // p.compose(q) = p(q(n)); integer-valued since q maps Z into Z.
    IntegralPolynomial compose(const IntegralPolynomial& q) const {
        if (is_zero()) return {};
        if (degree() == 0 || q.is_zero()) return constant(eval(q.is_zero() ? Int(0) : q.eval(0)));
        if (q.degree() == 0) return constant(eval(q.eval(0)));
        std::size_t m = static_cast<std::size_t>(degree()) * static_cast<std::size_t>(q.degree());
        std::vector<Int> values(m + 1);
        for (std::size_t i = 0; i <= m; ++i) values[i] = eval(q.eval(Int(i)));
        return from_values(std::move(values));
    }

    // p^[k](n) = binom(p(n), k); degree k*deg(p) for nonconstant p.
    IntegralPolynomial binomial_transform(unsigned k) const {
        if (k == 0) return constant(1);
        if (is_zero() || degree() == 0) return constant(binomial(constant_term(), k));
        std::size_t m = static_cast<std::size_t>(degree()) * k;
        std::vector<Int> values(m + 1);
        for (std::size_t i = 0; i <= m; ++i) values[i] = binomial(eval(Int(i)), k);
        return from_values(std::move(values));
    }

    bool operator==(const IntegralPolynomial& o) const { return b_ == o.b_; }
    bool operator!=(const IntegralPolynomial& o) const { return !(*this == o); }
    bool operator<(const IntegralPolynomial& o) const { return b_ < o.b_; }

    std::string str() const { return to_monomial().str(); }

  private:
    void trim() {
        while (!b_.empty() && b_.back() == 0) b_.pop_back();
    }
    std::vector<Int> b_;
};

// A family is essentially distinct when no member is constant and no two
// members differ by a constant.
inline bool essentially_distinct(const std::vector<IntegralPolynomial>& polys) {
    for (const auto& p : polys)
        if (p.degree() < 1) return false;
    for (std::size_t i = 0; i < polys.size(); ++i)
        for (std::size_t j = i + 1; j < polys.size(); ++j)
            if ((polys[i] - polys[j]).degree() < 1) return false;
    return true;
}

namespace detail {

// Recursive-descent parser for polynomial expressions in the variable n.
//   poly   := ('+'|'-')? term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor | factor')*    (juxtaposition = '*')
//   factor := UINT | 'n' ('^' UINT)? | 'binom' '(' poly ',' UINT ')' | '(' poly ')'
// A '/' divisor must be a nonzero constant.
class PolyParser {
  public:
    explicit PolyParser(std::string text) : s_(std::move(text)) {}

    RationalPolynomial parse() {
        RationalPolynomial p = parse_poly();
        skip_ws();
        if (i_ != s_.size()) throw ParseError("unexpected character '" + std::string(1, s_[i_]) + "'", i_);
        return p;
    }

  private:
    void skip_ws() {
        while (i_ < s_.size() && (s_[i_] == ' ' || s_[i_] == '\t')) ++i_;
    }
    bool peek_is(char c) {
        skip_ws();
        return i_ < s_.size() && s_[i_] == c;
    }
    bool eat(char c) {
        if (peek_is(c)) {
            ++i_;
            return true;
        }
        return false;
    }
    bool starts_factor_juxta() {
        skip_ws();
        if (i_ >= s_.size()) return false;
        char c = s_[i_];
        return c == 'n' || c == 'b' || c == '(';
    }

    unsigned parse_uint() {
        skip_ws();
        std::size_t start = i_;
        while (i_ < s_.size() && s_[i_] >= '0' && s_[i_] <= '9') ++i_;
        if (i_ == start) throw ParseError("expected an integer", i_);
        unsigned long v = std::stoul(s_.substr(start, i_ - start));
        return static_cast<unsigned>(v);
    }

    RationalPolynomial parse_poly() {
        skip_ws();
        bool neg = false;
        if (eat('-')) neg = true;
        else eat('+');
        RationalPolynomial acc = parse_term();
        if (neg) acc = -acc;
        while (true) {
            if (eat('+')) acc = acc + parse_term();
            else if (eat('-')) acc = acc - parse_term();
            else break;
        }
        return acc;
    }

    RationalPolynomial parse_term() {
        RationalPolynomial acc = parse_factor();
        while (true) {
            if (eat('*')) {
                acc = acc * parse_factor();
            } else if (peek_is('/')) {
                std::size_t at = i_;
                ++i_;
                RationalPolynomial d = parse_factor();
                if (d.degree() != 0) throw ParseError("divisor must be a nonzero constant", at);
                acc = acc.scaled(Rat(1) / d.coeff(0));
            } else if (starts_factor_juxta()) {
                acc = acc * parse_factor();
            } else {
                break;
            }
        }
        return acc;
    }

    RationalPolynomial parse_factor() {
        skip_ws();
        if (i_ >= s_.size()) throw ParseError("unexpected end of expression", i_);
        char c = s_[i_];
        if (c >= '0' && c <= '9') {
            std::size_t start = i_;
            while (i_ < s_.size() && s_[i_] >= '0' && s_[i_] <= '9') ++i_;
            return RationalPolynomial::constant(Rat(Int(s_.substr(start, i_ - start))));
        }
        if (c == '(') {
            ++i_;
            RationalPolynomial p = parse_poly();
            if (!eat(')')) throw ParseError("expected ')'", i_);
            return p;
        }
        if (c == 'n' || c == 'b') {
            std::size_t start = i_;
            while (i_ < s_.size() && s_[i_] >= 'a' && s_[i_] <= 'z') ++i_;
            std::string ident = s_.substr(start, i_ - start);
            if (ident == "n") {
                unsigned e = 1;
                if (eat('^')) e = parse_uint();
                return RationalPolynomial::monomial(e, Rat(1));
            }
            if (ident == "binom") {
                if (!eat('(')) throw ParseError("expected '(' after binom", i_);
                RationalPolynomial inner = parse_poly();
                if (!eat(',')) throw ParseError("expected ',' in binom", i_);
                unsigned k = parse_uint();
                if (!eat(')')) throw ParseError("expected ')'", i_);
                // binom(q, k) = q(q-1)...(q-k+1) / k!
                RationalPolynomial acc = RationalPolynomial::constant(1);
                for (unsigned t = 0; t < k; ++t) {
                    acc = acc * (inner - RationalPolynomial::constant(Rat(Int(t))));
                    acc = acc.scaled(Rat(1, static_cast<int>(t + 1)));
                }
                return acc;
            }
            throw ParseError("unknown identifier '" + ident + "'", start);
        }
        throw ParseError("unexpected character '" + std::string(1, c) + "'", i_);
    }

    std::string s_;
    std::size_t i_ = 0;
};

}  // namespace detail

inline RationalPolynomial parse_rational_polynomial(const std::string& text) {
    return detail::PolyParser(text).parse();
}

inline IntegralPolynomial parse_polynomial(const std::string& text) {
    return IntegralPolynomial::from_monomial(parse_rational_polynomial(text));
}

}  // namespace weylkit

#endif  // WEYLKIT_POLYNOMIAL_HPP
