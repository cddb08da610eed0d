#ifndef WEYLKIT_REALIZATION_HPP
#define WEYLKIT_REALIZATION_HPP

#include <weylkit/rational.hpp>

#include <stdexcept>
#include <string>
#include <utility>

namespace weylkit {

struct MissingRealizationError : std::runtime_error {
    std::string symbol;
    explicit MissingRealizationError(std::string sym)
        : std::runtime_error("rotation symbol '" + sym + "' has no numeric realization"),
          symbol(std::move(sym)) {}
};

// Exact rational stand-in for a rotation number: either a continued-fraction
// convergent of a named constant (denominator >= 2^bits) or an explicit
// rational.  source records how it was built ("sqrt2", "golden:40", "22/7");
// cf_depth counts continued-fraction coefficients used (-1 for explicit
// rationals).
struct Realized {
    std::string symbol;
    std::string source;
    Rat value;
    unsigned bits = 0;
    int cf_depth = -1;

    bool same_value(const Realized& o) const { return value == o.value; }
};

namespace detail {

// Continued-fraction coefficient a_k of the named constant.
inline Int cf_coefficient(const std::string& name, unsigned k) {
    if (name == "sqrt2") return k == 0 ? 1 : 2;
    if (name == "golden") return 1;
    if (name == "e") {
        if (k == 0) return 2;
        if (k % 3 == 2) return Int(2 * ((k + 1) / 3));
        return 1;
    }
    throw std::invalid_argument("unknown named constant '" + name + "'");
}

inline Realized realize_cf(const std::string& name, unsigned bits, int fixed_depth) {
    Int h1 = 1, h2 = 0, k1 = 0, k2 = 1;
    Int limit = fixed_depth >= 0 ? Int(0) : (Int(1) << bits);
    int depth = 0;
    while (true) {
        Int a = cf_coefficient(name, static_cast<unsigned>(depth));
        Int h = a * h1 + h2;
        Int k = a * k1 + k2;
        h2 = h1; h1 = h;
        k2 = k1; k1 = k;
        ++depth;
        if (fixed_depth >= 0 ? depth >= fixed_depth : k1 >= limit)
            return Realized{name, name, Rat(h1, k1), bits, depth};
    }
}

}  // namespace detail

inline Realized realize_named(const std::string& name, unsigned bits) {
    return detail::realize_cf(name, bits, -1);
}

inline Realized realize_named_depth(const std::string& name, int depth) {
    if (depth < 1) throw std::invalid_argument("convergent depth must be >= 1");
    return detail::realize_cf(name, 0, depth);
}

inline Realized realize_rational(const std::string& symbol, const Rat& v) {
    return Realized{symbol, rat_str(v), v, 0, -1};
}

inline bool is_named_constant(const std::string& name) {
    return name == "sqrt2" || name == "golden" || name == "e";
}

// Realization value syntax: "<named>", "<named>:<depth>", or "a/b" / "a".
inline Realized parse_realization(const std::string& symbol, const std::string& spec,
                                  unsigned default_bits) {
    auto colon = spec.find(':');
    std::string head = spec.substr(0, colon);
    Realized r;
    if (is_named_constant(head)) {
        if (colon == std::string::npos) {
            r = realize_named(head, default_bits);
        } else {
            r = realize_named_depth(head, std::stoi(spec.substr(colon + 1)));
        }
        r.source = spec;
    } else {
        if (colon != std::string::npos)
            throw std::invalid_argument("bad realization spec '" + spec + "'");
        r = realize_rational(symbol, parse_rat_str(spec));
    }
    r.symbol = symbol;
    return r;
}

inline Rat torus_dist(const Int& k, const Realized& r) { return torus_dist(k, r.value); }

}  // namespace weylkit

#endif  // WEYLKIT_REALIZATION_HPP
