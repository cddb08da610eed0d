#ifndef WEYLKIT_RECURRENCE_HPP
#define WEYLKIT_RECURRENCE_HPP

#include <weylkit/weyl_algebra.hpp>
#include <weylkit/weyl_dynamics.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace weylkit {

// Candidate recurrence sets: every n in [1, horizon] (FullRange), a finite
// list, or a threshold set {n : frac(q(n) * alpha) in [lo, hi]}.
struct FullRange {};

struct ExplicitList {
    std::vector<Int> values;
};

struct ThresholdSet {
    IntegralPolynomial q;
    Realized alpha;
    Rat lo, hi;  // closed fractional-part interval, 0 <= lo <= hi < 1
};

struct RecurrenceSetSpec {
    std::variant<FullRange, ExplicitList, ThresholdSet> variant;
    Int horizon = 1;

    RecurrenceSetSpec() = default;
    RecurrenceSetSpec(std::variant<FullRange, ExplicitList, ThresholdSet> v, Int N)
        : variant(std::move(v)), horizon(std::move(N)) {
        if (horizon < 1) throw std::invalid_argument("set horizon must be >= 1");
        if (const auto* t = std::get_if<ThresholdSet>(&variant)) {
            if (t->lo < 0 || t->hi < t->lo || t->hi >= 1)
                throw std::invalid_argument("threshold interval must satisfy 0 <= lo <= hi < 1");
        }
    }

    std::string str() const {
        if (std::holds_alternative<FullRange>(variant))
            return "full[1.." + int_str(horizon) + "]";
        if (const auto* l = std::get_if<ExplicitList>(&variant)) {
            std::string s = "list{";
            for (std::size_t i = 0; i < l->values.size(); ++i) {
                if (i) s += ',';
                s += int_str(l->values[i]);
            }
            return s + "}";
        }
        const auto& t = std::get<ThresholdSet>(variant);
        return "threshold{frac((" + t.q.str() + ")*" + t.alpha.symbol + ") in [" +
               rat_str(t.lo) + "," + rat_str(t.hi) + "], n<=" + int_str(horizon) + "}";
    }
};

inline bool threshold_member(const ThresholdSet& t, const Int& n) {
    Rat f = frac_mult(t.q.eval(n), t.alpha.value);
    return t.lo <= f && f <= t.hi;
}

inline std::vector<Int> generate_set(const RecurrenceSetSpec& spec) {
    std::vector<Int> out;
    if (std::holds_alternative<FullRange>(spec.variant)) {
        for (Int n = 1; n <= spec.horizon; ++n) out.push_back(n);
    } else if (const auto* l = std::get_if<ExplicitList>(&spec.variant)) {
        for (const Int& n : l->values)
            if (n >= 1 && n <= spec.horizon) out.push_back(n);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
    } else {
        const auto& t = std::get<ThresholdSet>(spec.variant);
        for (Int n = 1; n <= spec.horizon; ++n)
            if (threshold_member(t, n)) out.push_back(n);
    }
    return out;
}

enum class ProbeVerdict { WitnessFound, NoWitnessUpToHorizon };

inline const char* verdict_name(ProbeVerdict v) {
    return v == ProbeVerdict::WitnessFound ? "WitnessFound" : "NoWitnessUpToHorizon";
}

struct ProbeWitness {
    Int n;
    std::vector<Rat> residuals;       // distances to the nearest integer
    std::optional<std::vector<Rat>> point;  // topological base point, when not 0
};

struct ProbeOptions {
    std::size_t max_witnesses = 8;
    unsigned shards = 1;
    Int seed = 0;
};

struct ProbeReport {
    std::string probe;  // "kronecker" | "topological"
    ProbeVerdict verdict = ProbeVerdict::NoWitnessUpToHorizon;
    bool analytic = false;  // no-witness holds at every horizon, not just the scanned one
    Rat epsilon;
    Int horizon;  // effective: min(set horizon, probe horizon)
    std::vector<ProbeWitness> witnesses;      // increasing n, capped
    std::optional<ProbeWitness> near_miss;    // best max-residual candidate when no witness
    Rat near_miss_max;                        // meaningful when near_miss is set
    RecurrenceSetSpec set;
    std::vector<IntegralPolynomial> basis;    // kronecker
    std::vector<Realized> betas;              // kronecker
    std::optional<StandardWeylSystem> system; // topological
    std::optional<PolyFamily> family;         // topological
    std::vector<std::pair<std::string, std::string>> search_params;
    std::string notes;
};

namespace detail {

// min distance to the nearest integer over the closed interval [lo, hi]:
// t -> min(t, 1-t) is concave, so the minimum sits at an endpoint.
inline Rat interval_min_dist(const Rat& lo, const Rat& hi) {
    Rat a = std::min(lo, Rat(Rat(1) - lo));
    Rat b = std::min(hi, Rat(Rat(1) - hi));
    return std::min(a, b);
}

struct ShardScan {
    std::vector<ProbeWitness> witnesses;  // first `cap` of the shard, increasing n
    std::optional<ProbeWitness> near_miss;
    Rat near_miss_max;
};

// Scan candidates[lo, hi) with a per-n residual functional; a witness has all
// residuals < eps.  Near-miss tracking covers the whole shard when the shard
// yields no witness (scans stop early only once the cap is full).
template <typename ResidualFn>
ShardScan scan_range(const std::vector<Int>& candidates, std::size_t lo, std::size_t hi,
                     const Rat& eps, std::size_t cap, ResidualFn&& residuals_of) {
    ShardScan out;
    for (std::size_t i = lo; i < hi; ++i) {
        const Int& n = candidates[i];
        std::optional<std::vector<Rat>> res = residuals_of(n);
        if (!res) continue;  // candidate skipped entirely (no residual data)
        Rat worst = 0;
        for (const auto& r : *res) worst = std::max(worst, r);
        if (worst < eps) {
            out.witnesses.push_back({n, std::move(*res), std::nullopt});
            if (out.witnesses.size() >= cap) break;
        } else if (out.witnesses.empty()) {
            if (!out.near_miss || worst < out.near_miss_max) {
                out.near_miss = ProbeWitness{n, std::move(*res), std::nullopt};
                out.near_miss_max = worst;
            }
        }
    }
    return out;
}

template <typename ResidualFn>
void scan_sharded(ProbeReport& rep, const std::vector<Int>& candidates, const Rat& eps,
                  const ProbeOptions& opt, ResidualFn&& residuals_of) {
    const std::size_t shards = std::max(1u, opt.shards);
    std::vector<ShardScan> parts;
    for (std::size_t s = 0; s < shards; ++s) {
        std::size_t lo = candidates.size() * s / shards;
        std::size_t hi = candidates.size() * (s + 1) / shards;
        parts.push_back(scan_range(candidates, lo, hi, eps, opt.max_witnesses, residuals_of));
    }
    // Merge: shard witness lists are disjoint prefixes in increasing n, so the
    // concatenation truncated to the cap is the global minimal prefix.
    for (auto& p : parts)
        for (auto& w : p.witnesses)
            if (rep.witnesses.size() < opt.max_witnesses) rep.witnesses.push_back(std::move(w));
    if (!rep.witnesses.empty()) {
        rep.verdict = ProbeVerdict::WitnessFound;
        return;
    }
    rep.verdict = ProbeVerdict::NoWitnessUpToHorizon;
    for (auto& p : parts) {
        if (!p.near_miss) continue;
        if (!rep.near_miss || p.near_miss_max < rep.near_miss_max ||
            (p.near_miss_max == rep.near_miss_max && p.near_miss->n < rep.near_miss->n)) {
            rep.near_miss = std::move(p.near_miss);
            rep.near_miss_max = p.near_miss_max;
        }
    }
}

inline Int effective_horizon(const RecurrenceSetSpec& spec, const Int& horizon) {
    if (horizon < 1) throw std::invalid_argument("probe horizon must be >= 1");
    return std::min(spec.horizon, horizon);
}

}  // namespace detail

// Kronecker-system recurrence criterion: find n in R with
// ||q_i(n) * beta_j|| < eps for every basis polynomial q_i and every component
// beta_j.  Residuals are listed basis-major.  When R is a threshold set whose
// defining polynomial is one of the q_i with the same rotation value, and the
// interval keeps the fractional part at distance >= eps from the integers, the
// no-witness verdict holds at every horizon and is reported as analytic.
inline ProbeReport probe_kronecker_basis(const RecurrenceSetSpec& spec,
                                         const std::vector<IntegralPolynomial>& basis,
                                         const std::vector<Realized>& betas, const Rat& eps,
                                         const Int& horizon, const ProbeOptions& opt = {}) {
    if (!(eps > 0 && eps < Rat(1, 2)))
        throw std::invalid_argument("kronecker probe needs eps in (0, 1/2)");
    if (basis.empty()) throw std::invalid_argument("kronecker probe needs a nonempty basis");
    if (betas.empty()) throw std::invalid_argument("kronecker probe needs at least one beta");

    ProbeReport rep;
    rep.probe = "kronecker";
    rep.epsilon = eps;
    rep.horizon = detail::effective_horizon(spec, horizon);
    rep.set = spec;
    rep.set.horizon = rep.horizon;
    rep.basis = basis;
    rep.betas = betas;
    rep.search_params.emplace_back("max_witnesses", std::to_string(opt.max_witnesses));
    rep.search_params.emplace_back("shards", std::to_string(std::max(1u, opt.shards)));
    rep.search_params.emplace_back("residual_order", "basis-major");

    if (const auto* t = std::get_if<ThresholdSet>(&spec.variant)) {
        bool poly_in_basis = false;
        for (const auto& q : basis) poly_in_basis = poly_in_basis || q == t->q;
        bool beta_matches = false;
        for (const auto& b : betas) beta_matches = beta_matches || b.same_value(t->alpha);
        Rat bound = detail::interval_min_dist(t->lo, t->hi);
        if (poly_in_basis && beta_matches && bound >= eps) {
            rep.verdict = ProbeVerdict::NoWitnessUpToHorizon;
            rep.analytic = true;
            rep.search_params.emplace_back("scanned", "0");
            rep.search_params.emplace_back("analytic_bound", rat_str(bound));
            rep.notes = "every n in the set has ||(" + t->q.str() + ")*" + t->alpha.symbol +
                        "|| >= " + rat_str(bound) + " >= eps, at every horizon";
            return rep;
        }
    }

    std::vector<Int> candidates = generate_set(rep.set);
    rep.search_params.emplace_back("scanned", std::to_string(candidates.size()));
    detail::scan_sharded(rep, candidates, eps, opt, [&](const Int& n) {
        std::vector<Rat> res;
        for (const auto& q : basis) {
            Int v = q.eval(n);
            for (const auto& b : betas) res.push_back(torus_dist(v, b.value));
        }
        return std::optional<std::vector<Rat>>(std::move(res));
    });
    return rep;
}

inline ProbeReport probe_kronecker(const RecurrenceSetSpec& spec, const WeylSpace& w,
                                   const std::vector<Realized>& betas, const Rat& eps,
                                   const Int& horizon, const ProbeOptions& opt = {}) {
    return probe_kronecker_basis(spec, w.integral_basis, betas, eps, horizon, opt);
}

namespace detail {

inline unsigned grid_prime(std::size_t index) {
    static const unsigned primes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31,
                                      37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79,
                                      83, 89, 97, 101, 103, 107, 109, 113, 127, 131};
    if (index >= sizeof(primes) / sizeof(primes[0]))
        throw std::invalid_argument("grid search supports at most 32 torus coordinates");
    return primes[index];
}

// Convergent p/q of sqrt(k), first with q >= 2^bits, by the periodic
// continued-fraction recursion for quadratic surds.
inline Rat sqrt_convergent(unsigned k, unsigned bits) {
    Int a0 = 0;
    while ((a0 + 1) * (a0 + 1) <= k) ++a0;
    if (a0 * a0 == k) throw std::invalid_argument("square argument for sqrt grid generator");
    Int P = 0, Q = 1, a = a0;
    Int h1 = a, h2 = 1, k1 = 1, k2 = 0;
    Int limit = Int(1) << bits;
    while (k1 < limit) {
        P = a * Q - P;
        Q = (Int(k) - P * P) / Q;
        a = (a0 + P) / Q;
        Int h = a * h1 + h2, kk = a * k1 + k2;
        h2 = h1; h1 = h;
        k2 = k1; k1 = kk;
    }
    return Rat(h1, k1);
}

// Deterministic low-discrepancy base points inside the eps-ball at 0:
// coordinate c of point t is (2*frac((t+seed)*gamma_c) - 1) * eps * 1023/1024,
// gamma_c the 64-bit convergent of sqrt of the c-th prime.
class KroneckerGrid {
  public:
    KroneckerGrid(std::size_t dims, Rat eps, Int seed, std::size_t count = 1000)
        : eps_scale_(std::move(eps) * Rat(1023, 1024)), seed_(std::move(seed)), count_(count) {
        for (std::size_t c = 0; c < dims; ++c)
            gamma_.push_back(sqrt_convergent(grid_prime(c), 64));
    }

    std::size_t size() const { return count_; }

    std::vector<Rat> point(std::size_t t) const {
        std::vector<Rat> x;
        x.reserve(gamma_.size());
        Int mult = seed_ + Int(t + 1);
        for (const auto& g : gamma_) {
            Rat u = frac_mult(mult, g);
            x.push_back((Rat(2) * u - 1) * eps_scale_);
        }
        return x;
    }

  private:
    Rat eps_scale_;
    Int seed_;
    std::size_t count_;
    std::vector<Rat> gamma_;
};

}  // namespace detail

// Topological recurrence on a product of standard factors: find n in R and a
// base point x in the eps-ball U at 0 with T^{p_k(n)} x in U for every k.
// x = 0 is tried first (its orbit coordinates are C(m,i) * alpha_j); on
// failure a deterministic grid of base points is scanned.  Residuals are
// listed polynomial-major in system coordinate order; the near-miss is the
// best x = 0 candidate.
inline ProbeReport probe_topological(const RecurrenceSetSpec& spec, const StandardWeylSystem& sys,
                                     const PolyFamily& fam, const Rat& eps, const Int& horizon,
                                     const ProbeOptions& opt = {}) {
    if (!(eps > 0)) throw std::invalid_argument("topological probe needs eps > 0");
    for (const auto& f : sys.factors) f.realization();  // fail fast when missing

    ProbeReport rep;
    rep.probe = "topological";
    rep.epsilon = eps;
    rep.horizon = detail::effective_horizon(spec, horizon);
    rep.set = spec;
    rep.set.horizon = rep.horizon;
    rep.system = sys;
    rep.family = fam;
    rep.search_params.emplace_back("max_witnesses", std::to_string(opt.max_witnesses));
    rep.search_params.emplace_back("shards", std::to_string(std::max(1u, opt.shards)));
    rep.search_params.emplace_back("residual_order", "poly-major");
    rep.search_params.emplace_back("candidate_order", "origin,grid");
    rep.search_params.emplace_back("grid_points", "1000");
    rep.search_params.emplace_back("grid_scale", "eps*1023/1024");
    rep.search_params.emplace_back("seed", int_str(opt.seed));
    rep.search_params.emplace_back("near_miss_source", "origin");

    const std::size_t dims = sys.total_dim();
    std::optional<detail::KroneckerGrid> grid;  // built on first x = 0 failure
    const std::vector<Rat> zero(dims, Rat(0));

    auto orbit_residuals = [&](const std::vector<Rat>& x, const Int& n) {
        std::vector<Rat> res;
        for (const auto& p : fam.polys) {
            Int m = p.eval(n);
            for (std::size_t j = 0; j < sys.factors.size(); ++j) {
                const std::size_t off = sys.offset(j);
                std::vector<Rat> x0(x.begin() + static_cast<long>(off),
                                    x.begin() + static_cast<long>(off + sys.factors[j].d));
                for (const Rat& y : orbit_point(sys.factors[j], x0, m))
                    res.push_back(torus_dist_of_frac(y));
            }
        }
        return res;
    };
    auto all_below = [&](const std::vector<Rat>& res) {
        for (const auto& r : res)
            if (!(r < eps)) return false;
        return true;
    };

    std::vector<Int> candidates = generate_set(rep.set);
    rep.search_params.emplace_back("scanned", std::to_string(candidates.size()));

    std::map<Int, std::vector<Rat>> grid_points;  // n -> base point, for grid witnesses
    detail::scan_sharded(rep, candidates, eps, opt, [&](const Int& n) {
        std::vector<Rat> res = orbit_residuals(zero, n);
        if (all_below(res)) return std::optional<std::vector<Rat>>(std::move(res));
        // Near-miss bookkeeping sees the x = 0 residuals unless a grid point
        // turns this n into a witness.
        if (!grid) grid.emplace(dims, eps, opt.seed);
        for (std::size_t t = 0; t < grid->size(); ++t) {
            std::vector<Rat> x = grid->point(t);
            std::vector<Rat> gres = orbit_residuals(x, n);
            if (all_below(gres)) {
                grid_points.emplace(n, std::move(x));
                return std::optional<std::vector<Rat>>(std::move(gres));
            }
        }
        return std::optional<std::vector<Rat>>(std::move(res));
    });
    for (auto& w : rep.witnesses) {
        auto it = grid_points.find(w.n);
        if (it != grid_points.end()) w.point = std::move(it->second);
    }
    return rep;
}

struct CrossCheckReport {
    ProbeReport kronecker;
    ProbeReport topological;
    std::vector<Int> overlap;  // intersection of the capped witness lists
    // Per Kronecker witness n: max orbit residual at x = 0, and its ratio to
    // eps (the empirically observed constant of the two criteria).
    std::vector<std::pair<Int, Rat>> observed_factors;
    std::string notes;
};

// Runs both probes on the same set and reports agreement data.  Never asserts
// a failure of the underlying equivalence: a Kronecker witness missing from
// the topological list is flagged for review together with its residuals.
inline CrossCheckReport cross_check(const RecurrenceSetSpec& spec, const PolyFamily& fam,
                                    const StandardWeylSystem& sys, const Rat& eps,
                                    const Int& horizon, const ProbeOptions& opt_in = {}) {
    ProbeOptions opt = opt_in;
    opt.max_witnesses = std::max<std::size_t>(opt.max_witnesses, 32);

    WeylSpace w = weyl_space(fam, weyl_complexity(fam));
    std::vector<Realized> betas;
    for (const auto& f : sys.factors) betas.push_back(f.realization());

    CrossCheckReport out;
    out.kronecker = probe_kronecker(spec, w, betas, eps, horizon, opt);
    out.topological = probe_topological(spec, sys, fam, eps, horizon, opt);

    std::vector<Int> kw, tw;
    for (const auto& x : out.kronecker.witnesses) kw.push_back(x.n);
    for (const auto& x : out.topological.witnesses) tw.push_back(x.n);
    std::set_intersection(kw.begin(), kw.end(), tw.begin(), tw.end(),
                          std::back_inserter(out.overlap));

    const std::vector<Rat> zero(sys.total_dim(), Rat(0));
    Rat worst_factor = 0;
    for (const auto& x : out.kronecker.witnesses) {
        Rat worst = 0;
        for (const auto& p : fam.polys) {
            Int m = p.eval(x.n);
            for (std::size_t j = 0; j < sys.factors.size(); ++j) {
                std::vector<Rat> x0(sys.factors[j].d, Rat(0));
                for (const Rat& y : orbit_point(sys.factors[j], x0, m))
                    worst = std::max(worst, torus_dist_of_frac(y));
            }
        }
        Rat factor = worst / eps;
        out.observed_factors.emplace_back(x.n, factor);
        worst_factor = std::max(worst_factor, factor);
    }
    if (out.kronecker.verdict == ProbeVerdict::WitnessFound &&
        out.topological.verdict == ProbeVerdict::WitnessFound) {
        out.notes = "both probes found witnesses; " +
                    std::to_string(out.overlap.size()) + " shared n among the capped lists; " +
                    "largest observed origin-residual/eps factor " +
                    std::to_string(rat_double(worst_factor));
    } else if (out.kronecker.verdict == ProbeVerdict::WitnessFound) {
        out.notes = "kronecker witnesses found but no topological witness up to the horizon; "
                    "flagged for review (expected: topological witnesses at a constant "
                    "multiple of eps), residual data attached";
    } else {
        out.notes = "no kronecker witness up to the horizon";
    }
    return out;
}

// --- text forms ---------------------------------------------------------

// "full" | "list:5,7" | "threshold:<poly>@<symbol>:<lo>:<hi>"
template <typename RealizeFn>
RecurrenceSetSpec parse_set_spec(const std::string& text, const Int& horizon,
                                 RealizeFn&& realize) {
    if (text == "full") return {FullRange{}, horizon};
    if (text.rfind("list:", 0) == 0) {
        ExplicitList l;
        std::string body = text.substr(5);
        std::size_t pos = 0;
        while (pos <= body.size()) {
            std::size_t comma = body.find(',', pos);
            l.values.push_back(parse_int_str(
                body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos)));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        return {std::move(l), horizon};
    }
    if (text.rfind("threshold:", 0) == 0) {
        std::string body = text.substr(10);
        std::size_t at = body.find('@');
        if (at == std::string::npos)
            throw std::invalid_argument("threshold spec needs <poly>@<symbol>:<lo>:<hi>");
        std::size_t c1 = body.find(':', at + 1);
        std::size_t c2 = (c1 == std::string::npos) ? std::string::npos : body.find(':', c1 + 1);
        if (c2 == std::string::npos)
            throw std::invalid_argument("threshold spec needs <poly>@<symbol>:<lo>:<hi>");
        ThresholdSet t;
        t.q = parse_polynomial(body.substr(0, at));
        t.alpha = realize(body.substr(at + 1, c1 - at - 1));
        t.lo = parse_rat_str(body.substr(c1 + 1, c2 - c1 - 1));
        t.hi = parse_rat_str(body.substr(c2 + 1));
        return {std::move(t), horizon};
    }
    throw std::invalid_argument("set spec must be full | list:... | threshold:...");
}

inline std::string set_spec_text(const RecurrenceSetSpec& spec) {
    if (std::holds_alternative<FullRange>(spec.variant)) return "full";
    if (const auto* l = std::get_if<ExplicitList>(&spec.variant)) {
        std::string s = "list:";
        for (std::size_t i = 0; i < l->values.size(); ++i) {
            if (i) s += ',';
            s += int_str(l->values[i]);
        }
        return s;
    }
    const auto& t = std::get<ThresholdSet>(spec.variant);
    return "threshold:" + t.q.str() + "@" + t.alpha.symbol + ":" + rat_str(t.lo) + ":" +
           rat_str(t.hi);
}

}  // namespace weylkit

#endif  // WEYLKIT_RECURRENCE_HPP
