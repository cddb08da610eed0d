#ifndef WEYLKIT_WEYL_DYNAMICS_HPP
#define WEYLKIT_WEYL_DYNAMICS_HPP

#include <weylkit/realization.hpp>
#include <weylkit/weyl_algebra.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace weylkit {

// One factor of a product of standard Weyl systems on T^d:
//   T(x_1, ..., x_d) = (x_1 + alpha, x_2 + x_1, ..., x_d + x_{d-1}).
struct WeylFactor {
    unsigned d = 1;
    std::string symbol;                 // rotation symbol alpha_j
    std::optional<Realized> alpha;      // numeric realization, when available

    const Realized& realization() const {
        if (!alpha) throw MissingRealizationError(symbol);
        return *alpha;
    }
};

struct StandardWeylSystem {
    std::vector<WeylFactor> factors;

    std::size_t total_dim() const {
        std::size_t n = 0;
        for (const auto& f : factors) n += f.d;
        return n;
    }
    std::size_t offset(std::size_t j) const {
        std::size_t n = 0;
        for (std::size_t t = 0; t < j; ++t) n += factors[t].d;
        return n;
    }
};

// Lines "factor d=<int> alpha=<symbol>[=<rational>]", one per factor;
// ';' may replace newlines.
inline StandardWeylSystem parse_system_text(const std::string& text) {
    StandardWeylSystem sys;
    std::string line;
    auto flush = [&]() {
        std::size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) { line.clear(); return; }
        std::size_t b = line.find_last_not_of(" \t\r");
        std::string s = line.substr(a, b - a + 1);
        line.clear();
        if (s.empty() || s[0] == '#') return;
        if (s.rfind("factor", 0) != 0)
            throw std::invalid_argument("system line must start with 'factor': " + s);
        WeylFactor f;
        bool have_d = false, have_alpha = false;
        std::size_t i = 6;
        while (i < s.size()) {
            while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
            if (i >= s.size()) break;
            std::size_t eq = s.find('=', i);
            if (eq == std::string::npos) throw std::invalid_argument("bad factor field: " + s);
            std::string key = s.substr(i, eq - i);
            std::size_t end = s.find_first_of(" \t", eq);
            std::string val = s.substr(eq + 1, (end == std::string::npos ? s.size() : end) - eq - 1);
            i = (end == std::string::npos) ? s.size() : end;
            if (key == "d") {
                int d = std::stoi(val);
                if (d < 1) throw std::invalid_argument("factor dimension must be >= 1");
                f.d = static_cast<unsigned>(d);
                have_d = true;
            } else if (key == "alpha") {
                auto eq2 = val.find('=');
                f.symbol = val.substr(0, eq2);
                if (f.symbol.empty()) throw std::invalid_argument("empty alpha symbol");
                if (eq2 != std::string::npos)
                    f.alpha = realize_rational(f.symbol, parse_rat_str(val.substr(eq2 + 1)));
                have_alpha = true;
            } else {
                throw std::invalid_argument("unknown factor field '" + key + "'");
            }
        }
        if (!have_d || !have_alpha)
            throw std::invalid_argument("factor needs d=<int> and alpha=<symbol>: " + s);
        sys.factors.push_back(std::move(f));
    };
    for (char c : text) {
        if (c == '\n' || c == ';') flush();
        else line += c;
    }
    flush();
    if (sys.factors.empty()) throw std::invalid_argument("system has no factors");
    return sys;
}

// Character of the product torus: one integer frequency per coordinate,
// factor blocks in order.
struct Character {
    std::vector<Int> freq;

    bool operator==(const Character& o) const { return freq == o.freq; }
    bool operator<(const Character& o) const { return freq < o.freq; }
    bool is_zero() const {
        for (const auto& v : freq)
            if (v != 0) return false;
        return true;
    }
};

struct Pushforward {
    std::vector<Int> phase;  // per factor: integer multiplier of alpha_j
    Character freq;
};

// psi_v composed with T^m:  psi_v(T^m x) = e(phase * alpha) * psi_{v'}(x) with
// v'_i = sum_{u >= i} v_u * binom(m, u-i) and phase = sum_u v_u * binom(m, u)
// per factor (indices 1-based within the factor block).
inline Pushforward pushforward(const StandardWeylSystem& sys, const Character& chi, const Int& m) {
    if (chi.freq.size() != sys.total_dim())
        throw std::invalid_argument("character width mismatch");
    Pushforward out;
    out.freq.freq.assign(chi.freq.size(), Int(0));
    for (std::size_t j = 0; j < sys.factors.size(); ++j) {
        const std::size_t off = sys.offset(j);
        const unsigned d = sys.factors[j].d;
        Int phase = 0;
        for (unsigned u = 1; u <= d; ++u) {
            const Int& v = chi.freq[off + u - 1];
            if (v == 0) continue;
            phase += v * binomial(m, u);
            for (unsigned i = 1; i <= u; ++i)
                out.freq.freq[off + i - 1] += v * binomial(m, u - i);
        }
        out.phase.push_back(phase);
    }
    return out;
}

// Exact value of the correlation integral
//   Integral psi_{v^0}(x) * prod_k psi_{v^k}(T^{p_k(n)} x) dmu(x)
// at a single n: zero unless the pushed frequencies cancel, else a unimodular
// phase e(sum_j phase_j * alpha_j).
struct ExactCorrelation {
    bool zero = true;
    std::vector<Int> phase;  // per factor, meaningful always (sum of pushforward phases)
};

inline ExactCorrelation correlate_exact(const StandardWeylSystem& sys,
                                        const std::vector<Character>& chars,
                                        const PolyFamily& fam, const Int& n) {
    if (chars.size() != fam.r() + 1)
        throw std::invalid_argument("need r+1 characters (v^0 first)");
    std::vector<Int> total(sys.total_dim(), Int(0));
    std::vector<Int> phase(sys.factors.size(), Int(0));
    for (std::size_t c = 0; c < chars[0].freq.size(); ++c) total[c] = chars[0].freq[c];
    for (std::size_t k = 1; k < chars.size(); ++k) {
        Pushforward pf = pushforward(sys, chars[k], fam.polys[k - 1].eval(n));
        for (std::size_t c = 0; c < total.size(); ++c) total[c] += pf.freq.freq[c];
        for (std::size_t j = 0; j < phase.size(); ++j) phase[j] += pf.phase[j];
    }
    ExactCorrelation out;
    out.phase = std::move(phase);
    out.zero = false;
    for (const auto& v : total)
        if (v != 0) out.zero = true;
    return out;
}

enum class CorrelationKind { Zero, Phase };

// Closed form of n -> correlation value on a single factor T^d:
//   Phase(q): value e(q(n) * alpha) for every n;
//   Zero: value 0 except on the finite exceptional set (common integer roots
//   of the nonvanishing pushed-frequency polynomials), where it is a phase.
struct ClosedFormCorrelation {
    CorrelationKind kind = CorrelationKind::Zero;
    IntegralPolynomial q;           // phase polynomial (kind == Phase)
    std::vector<Int> exceptional;   // sorted (kind == Zero)
    bool subspace_conditions = false;  // stacked-vector membership test outcome
};

// Sorted integer roots of a nonzero integer-valued polynomial.
inline std::vector<Int> integer_roots(const IntegralPolynomial& p) {
    if (p.is_zero()) throw std::invalid_argument("integer_roots of the zero polynomial");
    RationalPolynomial m = p.to_monomial();
    Int l = 1;
    for (const auto& c : m.coeffs()) l = boost::multiprecision::lcm(l, rat_den(c));
    std::vector<Int> a;
    for (const auto& c : m.coeffs()) a.push_back(rat_num(c * Rat(l)));
    std::size_t t = 0;
    while (a[t] == 0) ++t;
    std::vector<Int> roots;
    if (t > 0) roots.push_back(0);
    if (t + 1 == a.size()) return roots;  // c * n^t
    Int trail = boost::multiprecision::abs(a[t]);
    std::vector<Int> cands;
    for (Int i = 1; i * i <= trail; ++i) {
        if (trail % i != 0) continue;
        cands.push_back(i);
        cands.push_back(trail / i);
    }
    for (const Int& c : cands) {
        if (p.eval(c) == 0) roots.push_back(c);
        if (p.eval(-c) == 0) roots.push_back(-c);
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

// Caches the Lambda_{d-1} span and binomial transforms for one (family, d).
class ClosedFormOracle {
  public:
    ClosedFormOracle(const PolyFamily& fam, unsigned d) : fam_(fam), d_(d) {
        if (d < 1) throw std::invalid_argument("factor dimension must be >= 1");
        if (!fam.essentially_distinct)
            throw std::invalid_argument("family must be essentially distinct");
        tf_.resize(fam.r());
        for (std::size_t i = 0; i < fam.r(); ++i)
            for (unsigned b = 1; b <= d; ++b)
                tf_[i].push_back(fam.polys[i].binomial_transform(b));
        if (d >= 2) {
            Subspace span = r_span(LambdaMatrix(fam, d - 1));
            for (std::size_t i = 0; i < span.dim(); ++i)
                span_rows_.push_back(span.basis().row(i));
        }
    }

    const PolyFamily& family() const { return fam_; }
    unsigned d() const { return d_; }

    // chars: r+1 frequency blocks of length d, v^0 first.
    const ClosedFormCorrelation& get(const std::vector<std::vector<Int>>& chars) {
        std::vector<Int> key;
        for (const auto& c : chars) key.insert(key.end(), c.begin(), c.end());
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        return memo_.emplace(std::move(key), compute(chars)).first->second;
    }

  private:
    ClosedFormCorrelation compute(const std::vector<std::vector<Int>>& chars) const {
        const std::size_t r = fam_.r();
        if (chars.size() != r + 1)
            throw std::invalid_argument("need r+1 characters (v^0 first)");
        for (const auto& c : chars)
            if (c.size() != d_) throw std::invalid_argument("character width mismatch");

        ClosedFormCorrelation out;
        for (unsigned b = 1; b <= d_; ++b)
            for (std::size_t i = 0; i < r; ++i)
                if (chars[i + 1][b - 1] != 0)
                    out.q = out.q + tf_[i][b - 1].scaled(chars[i + 1][b - 1]);

        // (a) frequencies cancel coordinatewise; (b) the stacked tail
        // (blocks 2..d over v^1..v^r) annihilates R-span(Lambda_{d-1}).
        bool cond_a = true;
        for (unsigned c = 0; c < d_; ++c) {
            Int s = 0;
            for (const auto& ch : chars) s += ch[c];
            if (s != 0) cond_a = false;
        }
        bool cond_b = true;
        if (d_ >= 2) {
            std::vector<Rat> w(r * (d_ - 1));
            for (unsigned b = 2; b <= d_; ++b)
                for (std::size_t i = 0; i < r; ++i)
                    w[(b - 2) * r + i] = Rat(chars[i + 1][b - 1]);
            for (const auto& row : span_rows_) {
                Rat dot = 0;
                for (std::size_t c = 0; c < w.size(); ++c) dot += w[c] * row[c];
                if (dot != 0) { cond_b = false; break; }
            }
        }
        out.subspace_conditions = cond_a && cond_b;
        if (out.subspace_conditions) {
            out.kind = CorrelationKind::Phase;
            return out;
        }

        // Pushed-frequency polynomial of coordinate c (1-based):
        //   F_c(n) = sum_k v^k_c + sum_{j>=1} sum_i v^i_{c+j} p_i^[j](n).
        std::vector<IntegralPolynomial> F(d_);
        bool all_zero = true;
        for (unsigned c = 1; c <= d_; ++c) {
            Int s = 0;
            for (const auto& ch : chars) s += ch[c - 1];
            IntegralPolynomial f = IntegralPolynomial::constant(s);
            for (unsigned j = 1; c + j <= d_; ++j)
                for (std::size_t i = 0; i < r; ++i)
                    if (chars[i + 1][c + j - 1] != 0)
                        f = f + tf_[i][j - 1].scaled(chars[i + 1][c + j - 1]);
            if (!f.is_zero()) all_zero = false;
            F[c - 1] = std::move(f);
        }
        if (all_zero) {
            // Unreachable for zero-constant-term families: there the membership
            // conditions are equivalent to the identical vanishing of all F_c.
            out.kind = CorrelationKind::Phase;
            return out;
        }
        out.kind = CorrelationKind::Zero;
        bool first = true;
        std::vector<Int> common;
        for (const auto& f : F) {
            if (f.is_zero()) continue;
            if (first) {
                common = integer_roots(f);
                first = false;
            } else {
                std::vector<Int> keep;
                for (const auto& n : common)
                    if (f.eval(n) == 0) keep.push_back(n);
                common = std::move(keep);
            }
        }
        out.exceptional = std::move(common);
        return out;
    }

    PolyFamily fam_;
    unsigned d_;
    std::vector<std::vector<IntegralPolynomial>> tf_;  // [i][b-1] = p_i^[b]
    std::vector<std::vector<Rat>> span_rows_;
    std::map<std::vector<Int>, ClosedFormCorrelation> memo_;
};

inline ClosedFormCorrelation closed_form_correlation(const PolyFamily& fam, unsigned d,
                                                     const std::vector<std::vector<Int>>& chars) {
    return ClosedFormOracle(fam, d).get(chars);
}

// Finite sum of characters with exact Gaussian-rational coefficients; terms
// with equal frequency vectors are merged on construction.
struct CharacterSum {
    std::vector<std::pair<GaussianRat, Character>> terms;

    static CharacterSum of(std::vector<std::pair<GaussianRat, Character>> raw) {
        std::map<Character, GaussianRat> merged;
        for (auto& [c, chi] : raw) {
            auto [it, fresh] = merged.emplace(chi, c);
            if (!fresh) it->second = it->second + c;
        }
        CharacterSum out;
        for (auto& [chi, c] : merged)
            if (!c.is_zero()) out.terms.emplace_back(c, chi);
        return out;
    }

    Rat norm2() const {
        Rat s = 0;
        for (const auto& [c, chi] : terms) s += c.norm2();
        return s;
    }
};

struct ExpansionTerm {
    GaussianRat c;
    std::vector<IntegralPolynomial> q;  // one phase polynomial per factor
};

// Finite expansion of n -> Integral f_0 * prod_k f_k(T^{p_k(n)} .) dmu:
// one term per character tuple whose per-factor closed forms are all Phase;
// tuples with a Zero factor are dropped and their exceptional sets recorded.
struct CorrelationExpansion {
    std::vector<ExpansionTerm> terms;
    std::vector<Int> exceptional;  // sorted union over dropped tuples
    Rat coeff_l2;                  // sum of |c_l|^2, exact
    std::vector<Rat> input_norm2;  // ||f_k||_2^2, exact

    bool l2_bound_holds() const {
        Rat rhs = 1;
        for (const auto& x : input_norm2) rhs *= x;
        return coeff_l2 <= rhs;
    }
};

inline CorrelationExpansion expand_correlation(const StandardWeylSystem& sys,
                                               const std::vector<CharacterSum>& fs,
                                               const PolyFamily& fam) {
    if (fs.size() != fam.r() + 1)
        throw std::invalid_argument("need r+1 character sums (f_0 first)");
    const std::size_t s = sys.factors.size();
    std::vector<ClosedFormOracle> oracle;
    oracle.reserve(s);
    for (const auto& f : sys.factors) oracle.emplace_back(fam, f.d);

    CorrelationExpansion out;
    for (const auto& f : fs) out.input_norm2.push_back(f.norm2());
    out.coeff_l2 = 0;

    std::vector<std::size_t> idx(fs.size(), 0);
    for (const auto& f : fs)
        if (f.terms.empty()) return out;
    std::vector<Int> exceptional;
    while (true) {
        GaussianRat c = fs[0].terms[idx[0]].first;
        for (std::size_t k = 1; k < fs.size(); ++k) c = c * fs[k].terms[idx[k]].first;
        bool dropped = false;
        std::vector<IntegralPolynomial> qs;
        for (std::size_t j = 0; j < s && !dropped; ++j) {
            const std::size_t off = sys.offset(j);
            const unsigned d = sys.factors[j].d;
            std::vector<std::vector<Int>> blocks(fs.size());
            for (std::size_t k = 0; k < fs.size(); ++k) {
                const Character& chi = fs[k].terms[idx[k]].second;
                blocks[k].assign(chi.freq.begin() + static_cast<long>(off),
                                 chi.freq.begin() + static_cast<long>(off + d));
            }
            const ClosedFormCorrelation& cf = oracle[j].get(blocks);
            if (cf.kind == CorrelationKind::Zero) {
                dropped = true;
                exceptional.insert(exceptional.end(), cf.exceptional.begin(),
                                   cf.exceptional.end());
            } else {
                qs.push_back(cf.q);
            }
        }
        if (!dropped) {
            out.coeff_l2 += c.norm2();
            out.terms.push_back({c, std::move(qs)});
        }
        std::size_t k = 0;
        while (k < fs.size() && ++idx[k] == fs[k].terms.size()) idx[k++] = 0;
        if (k == fs.size()) break;
    }
    std::sort(exceptional.begin(), exceptional.end());
    exceptional.erase(std::unique(exceptional.begin(), exceptional.end()), exceptional.end());
    out.exceptional = std::move(exceptional);
    return out;
}

// Symbolic value at one n as a map phase-vector -> coefficient, phases being
// the per-factor integer multipliers of the rotation symbols.  Two values are
// equal as torus functions of the symbols iff the maps are equal.
using SymbolicValue = std::map<std::vector<Int>, GaussianRat>;

inline void symbolic_add(SymbolicValue& acc, std::vector<Int> phase, const GaussianRat& c) {
    auto [it, fresh] = acc.emplace(std::move(phase), c);
    if (!fresh) {
        it->second = it->second + c;
        if (it->second.is_zero()) acc.erase(it);
    }
}

inline SymbolicValue expansion_value(const CorrelationExpansion& e, const Int& n) {
    SymbolicValue acc;
    for (const auto& t : e.terms) {
        std::vector<Int> phase;
        for (const auto& q : t.q) phase.push_back(q.eval(n));
        symbolic_add(acc, std::move(phase), t.c);
    }
    return acc;
}

// Tuple-summed exact oracle for the same integral, via pushforwards.
inline SymbolicValue correlate_sum_exact(const StandardWeylSystem& sys,
                                         const std::vector<CharacterSum>& fs,
                                         const PolyFamily& fam, const Int& n) {
    SymbolicValue acc;
    std::vector<std::size_t> idx(fs.size(), 0);
    for (const auto& f : fs)
        if (f.terms.empty()) return acc;
    while (true) {
        GaussianRat c = fs[0].terms[idx[0]].first;
        std::vector<Character> chars{fs[0].terms[idx[0]].second};
        for (std::size_t k = 1; k < fs.size(); ++k) {
            c = c * fs[k].terms[idx[k]].first;
            chars.push_back(fs[k].terms[idx[k]].second);
        }
        ExactCorrelation ec = correlate_exact(sys, chars, fam, n);
        if (!ec.zero) symbolic_add(acc, std::move(ec.phase), c);
        std::size_t k = 0;
        while (k < fs.size() && ++idx[k] == fs[k].terms.size()) idx[k++] = 0;
        if (k == fs.size()) break;
    }
    return acc;
}

// Orbit of the standard d-dimensional factor: exact closed formula
//   T^n(x)_i = x_i + sum_{j=1}^{i-1} binom(n,j) x_{i-j} + binom(n,i) alpha,
// all coordinates reduced mod 1 as exact rationals.
inline std::vector<Rat> orbit_point(const WeylFactor& f, const std::vector<Rat>& x0, const Int& n) {
    if (x0.size() != f.d) throw std::invalid_argument("point width mismatch");
    const Rat& a = f.realization().value;
    std::vector<Rat> y(f.d);
    for (unsigned i = 1; i <= f.d; ++i) {
        Rat acc = x0[i - 1];
        for (unsigned j = 1; j < i; ++j) acc += Rat(binomial(n, j)) * x0[i - j - 1];
        acc += Rat(binomial(n, i)) * a;
        y[i - 1] = rat_frac(acc);
    }
    return y;
}

inline std::vector<Rat> orbit_step(const WeylFactor& f, const std::vector<Rat>& x) {
    if (x.size() != f.d) throw std::invalid_argument("point width mismatch");
    std::vector<Rat> y(f.d);
    y[0] = rat_frac(x[0] + f.realization().value);
    for (unsigned i = 1; i < f.d; ++i) y[i] = rat_frac(x[i] + x[i - 1]);
    return y;
}

// Sequence specification for ergodic averaging: a product of character phases
// e(q(n) * alpha) and closed-form correlation factors.  Fractional parts are
// computed by exact integer multiplication against the rational realization
// before the single reduction to double.
struct PhaseFactor {
    IntegralPolynomial q;
    Realized alpha;
};
struct CorrFactor {
    ClosedFormCorrelation cf;
    Realized beta;
};
struct SequenceSpec {
    std::vector<PhaseFactor> phases;
    std::vector<CorrFactor> corrs;
};

inline std::complex<double> sequence_value(const SequenceSpec& spec, const Int& n) {
    Rat frac_sum = 0;
    for (const auto& p : spec.phases) frac_sum += frac_mult(p.q.eval(n), p.alpha.value);
    for (const auto& c : spec.corrs) {
        if (c.cf.kind == CorrelationKind::Zero) return {0.0, 0.0};
        frac_sum += frac_mult(c.cf.q.eval(n), c.beta.value);
    }
    double theta = 2.0 * 3.14159265358979323846 * rat_double(rat_frac(frac_sum));
    return {std::cos(theta), std::sin(theta)};
}

// "(v_1,...,v_D)" with optional rational coefficient prefix "a/b*".
inline std::pair<GaussianRat, Character> parse_character_term(const std::string& text) {
    std::size_t open = text.find('(');
    if (open == std::string::npos || text.back() != ')')
        throw std::invalid_argument("character term must end in (v_1,...,v_D): " + text);
    GaussianRat c{Rat(1), Rat(0)};
    if (open > 0) {
        std::string pre = text.substr(0, open);
        if (pre.back() != '*') throw std::invalid_argument("coefficient must end in '*': " + text);
        c.re = parse_rat_str(pre.substr(0, pre.size() - 1));
    }
    Character chi;
    std::string body = text.substr(open + 1, text.size() - open - 2);
    std::size_t pos = 0;
    while (pos <= body.size()) {
        std::size_t comma = body.find(',', pos);
        std::string piece = body.substr(pos, comma == std::string::npos ? std::string::npos
                                                                        : comma - pos);
        chi.freq.push_back(parse_int_str(piece));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return {c, chi};
}

// One character sum: '+'-separated terms.  Top-level parser for r+1 functions:
// ';'-separated sums, v^0 (the unshifted function) first.
inline CharacterSum parse_character_sum(const std::string& text) {
    std::vector<std::pair<GaussianRat, Character>> raw;
    std::size_t pos = 0, depth = 0, start = 0;
    auto piece = [&](std::size_t a, std::size_t b) {
        while (a < b && (text[a] == ' ' || text[a] == '\t')) ++a;
        while (b > a && (text[b - 1] == ' ' || text[b - 1] == '\t')) --b;
        if (a == b) throw std::invalid_argument("empty character term");
        raw.push_back(parse_character_term(text.substr(a, b - a)));
    };
    for (; pos < text.size(); ++pos) {
        if (text[pos] == '(') ++depth;
        else if (text[pos] == ')') --depth;
        else if (text[pos] == '+' && depth == 0) { piece(start, pos); start = pos + 1; }
    }
    piece(start, text.size());
    return CharacterSum::of(std::move(raw));
}

inline std::vector<CharacterSum> parse_character_sums(const std::string& text) {
    std::vector<CharacterSum> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t semi = text.find(';', pos);
        out.push_back(parse_character_sum(
            text.substr(pos, semi == std::string::npos ? std::string::npos : semi - pos)));
        if (semi == std::string::npos) break;
        pos = semi + 1;
    }
    return out;
}

struct AverageReport {
    Int N;
    std::complex<double> mean;
    std::vector<std::pair<Int, std::complex<double>>> checkpoints;  // running partial means
};

// Cesaro mean (1/N) sum_{n=1}^N seq(n), strictly sequential summation.
inline AverageReport ergodic_average(const SequenceSpec& spec, const Int& N) {
    if (N < 1) throw std::invalid_argument("N must be >= 1");
    AverageReport out;
    out.N = N;
    std::complex<double> sum{0.0, 0.0};
    Int step = N / 10;
    if (step < 1) step = 1;
    for (Int n = 1; n <= N; ++n) {
        sum += sequence_value(spec, n);
        if (n % step == 0 || n == N) {
            std::complex<double> mean = sum / n.convert_to<double>();
            if (out.checkpoints.empty() || out.checkpoints.back().first != n)
                out.checkpoints.emplace_back(n, mean);
        }
    }
    out.mean = out.checkpoints.back().second;
    return out;
}

}  // namespace weylkit

#endif  // WEYLKIT_WEYL_DYNAMICS_HPP
