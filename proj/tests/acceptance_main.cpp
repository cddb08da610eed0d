// Acceptance gate: one pass/fail line per criterion, exit 0 iff all pass.
#include <weylkit/json_io.hpp>
#include <weylkit/recurrence.hpp>
#include <weylkit/weyl_algebra.hpp>
#include <weylkit/weyl_dynamics.hpp>

#include "support.hpp"

#include <algorithm>
#include <complex>
#include <iostream>
#include <map>
#include <string>
#include <vector>

using namespace weylkit;

namespace {

int g_failed_checks = 0;

void expect(bool ok, const std::string& what) {
    if (!ok) {
        ++g_failed_checks;
        std::cout << "         failed: " << what << "\n";
    }
}

Subspace monomial_span(std::initializer_list<const char*> texts) {
    std::vector<RationalPolynomial> ps;
    int deg = 1;
    for (const char* t : texts) {
        ps.push_back(parse_rational_polynomial(t));
        deg = std::max(deg, ps.back().degree());
    }
    std::vector<std::vector<Rat>> rows;
    for (const auto& p : ps)
        rows.push_back(poly_coord_vector(p, static_cast<std::size_t>(deg) + 1));
    return Subspace::span_of_rows(static_cast<std::size_t>(deg) + 1, rows);
}

bool space_is(const WeylSpace& w, std::initializer_list<const char*> texts) {
    Subspace want = monomial_span(texts);
    std::size_t width = std::max(w.rational_basis.ambient(), want.ambient());
    return w.rational_basis.padded(width) == want.padded(width);
}

struct SpaceCache {
    std::map<unsigned, WeylSpace> by_k;
    const PolyFamily* fam = nullptr;
    const WeylSpace& at(unsigned k) {
        auto it = by_k.find(k);
        if (it == by_k.end()) it = by_k.emplace(k, weyl_space(*fam, k)).first;
        return it->second;
    }
};

// --- criterion bodies ------------------------------------------------------

void criterion_complexity() {
    expect(weyl_complexity(parse_family("n, 2n, n^2")) == 3, "W({n,2n,n^2}) = 3");
    expect(weyl_complexity(parse_family("n, 2n, 3n")) == 3, "W({n,2n,3n}) = 3");
    expect(weyl_complexity(parse_family("n, 2n, 3n^3")) == 2, "W({n,2n,3n^3}) = 2");
    expect(weyl_complexity(parse_family("n, 2n^2, 3n^3")) == 1, "W({n,2n^2,3n^3}) = 1");
    expect(weyl_complexity(parse_family("n, 2n, 3n^2")) == 3, "W({n,2n,3n^2}) = 3");
    const char* linear[] = {"n", "n, 2n", "n, 2n, 3n", "n, 2n, 3n, 4n"};
    for (unsigned r = 1; r <= 4; ++r)
        expect(weyl_complexity(parse_family(linear[r - 1])) == r, "linear family W = r");
}

void criterion_golden_bases() {
    PolyFamily mixed = parse_family("n, 2n, n^2");
    expect(space_is(weyl_polynomials(mixed), {"n", "n^2", "n^3 - n^4/2"}),
           "WP({n,2n,n^2}) basis");
    expect(space_is(weyl_space(mixed, 1), {"n", "n^2"}), "WP_1({n,2n,n^2})");
    expect(space_is(weyl_space(mixed, 2), {"n", "n^2"}), "WP_2({n,2n,n^2})");
    expect(space_is(weyl_polynomials(parse_family("n, 2n, 3n")), {"n", "n^2", "n^3"}),
           "WP({n,2n,3n})");
    expect(space_is(weyl_polynomials(parse_family("n, 2n, 3n^2")), {"n", "n^2", "n^3 - 3*n^4/2"}),
           "WP({n,2n,3n^2})");
    expect(space_is(weyl_polynomials(parse_family("n")), {"n"}), "linear r=1 full space");
    expect(space_is(weyl_polynomials(parse_family("n, 2n")), {"n", "n^2"}),
           "linear r=2 full space");
    expect(space_is(weyl_polynomials(parse_family("n, 2n, 3n, 4n")), {"n", "n^2", "n^3", "n^4"}),
           "linear r=4 full space");
}

void criterion_compare() {
    SchemeComparison c = scheme_compare(parse_family("n, 2n"), parse_family("n^2"));
    expect(c.verdict == CompareVerdict::PrecImpliesQrec, "{n,2n} vs {n^2} verdict");
    expect(c.cert_p_not_q.has_value() && *c.cert_p_not_q == parse_rational_polynomial("n"),
           "{n,2n} vs {n^2} certificate n");

    SchemeComparison eq = scheme_compare(parse_family("n, 2n, 3n"), parse_family("n, 2n, 3n^3"));
    expect(eq.verdict == CompareVerdict::Equivalent, "{n,2n,3n} vs {n,2n,3n^3} equivalent");

    SchemeComparison gp = scheme_compare(parse_family("n, 2n, 3n"), parse_family("n, 2n, 3n^2"));
    expect(gp.verdict == CompareVerdict::GeneralPosition, "{n,2n,3n} vs {n,2n,3n^2} verdict");
    expect(gp.cert_p_not_q.has_value() && *gp.cert_p_not_q == parse_rational_polynomial("n^3"),
           "general-position certificate n^3");
    expect(gp.cert_q_not_p.has_value() &&
               *gp.cert_q_not_p == parse_rational_polynomial("n^3 - 3*n^4/2"),
           "general-position certificate n^3 - 3*n^4/2");
}

void criterion_space_laws() {
    testkit::Rng rng(0xacce5504ull);
    const IntegralPolynomial q2n = parse_polynomial("2n");
    const IntegralPolynomial qn2 = parse_polynomial("n^2");

    for (int t = 0; t < 200; ++t) {
        PolyFamily fam = testkit::random_family(rng, 3, 4);
        unsigned W = weyl_complexity(fam);
        SpaceCache cache;
        cache.fam = &fam;
        std::string tag = " [" + fam.str() + "]";

        for (unsigned k = 1; k <= W + 1; ++k)
            expect(testkit::space_includes(cache.at(k), cache.at(k - 1)),
                   "WP_k monotone" + tag);
        expect(!testkit::same_space(cache.at(W - 1), cache.at(W)), "strict jump at W" + tag);
        expect(testkit::same_space(cache.at(W), cache.at(W + 1)), "stabilized at W" + tag);
        expect(cache.at(W).dim() == fam.r(), "dim WP = r" + tag);

        for (unsigned d : {1u, W})
            for (const auto& p : fam.polys)
                expect(contains_poly(cache.at(d), p), "P inside WP_d" + tag);

        for (int attempt = 0; attempt < 20; ++attempt) {
            std::vector<IntegralPolynomial> bigger = fam.polys;
            bigger.push_back(testkit::random_poly(rng, 4));
            if (!essentially_distinct(bigger)) continue;
            PolyFamily sup(std::move(bigger));
            for (unsigned d : {1u, 2u})
                expect(testkit::space_includes(weyl_space(sup, d), cache.at(d)),
                       "inclusion monotonicity" + tag);
            break;
        }

        for (const IntegralPolynomial& q : {q2n, qn2}) {
            std::vector<IntegralPolynomial> comp;
            for (const auto& p : fam.polys) comp.push_back(p.compose(q));
            PolyFamily fam_q(std::move(comp));
            RationalPolynomial qm = q.to_monomial();
            for (unsigned d : {1u, 2u}) {
                WeylSpace lhs = weyl_space(fam_q, d);
                std::vector<RationalPolynomial> composed;
                std::size_t width = static_cast<std::size_t>(lhs.ambient_degree) + 1;
                for (const auto& row : cache.at(d).rational_rows) {
                    composed.push_back(row.compose(qm));
                    width =
                        std::max(width, static_cast<std::size_t>(composed.back().degree()) + 1);
                }
                std::vector<std::vector<Rat>> rows;
                for (const auto& rc : composed) rows.push_back(poly_coord_vector(rc, width));
                expect(lhs.rational_basis.padded(width) == Subspace::span_of_rows(width, rows),
                       "composition identity" + tag);
            }
        }

        {
            std::vector<IntegralPolynomial> diff;
            const IntegralPolynomial& last = fam.polys.back();
            for (std::size_t i = 0; i + 1 < fam.r(); ++i) diff.push_back(fam.polys[i] - last);
            diff.push_back(-last);
            PolyFamily fam_d(std::move(diff));
            expect(weyl_complexity(fam_d) == W, "difference family same complexity" + tag);
            for (unsigned d : {1u, 2u, W})
                expect(testkit::same_space(cache.at(d), weyl_space(fam_d, d)),
                       "difference identity" + tag);
        }
    }

    // Scaling identity along n -> m n + i.
    testkit::Rng rng2(0xacce5505ull);
    for (int t = 0; t < 200; ++t) {
        PolyFamily fam = testkit::random_monomial_family(rng2, 3, 3);
        long long m = rng2.in_range(0, 1) ? 2 : 3;
        long long i = rng2.in_range(0, 1);
        std::string tag = " [" + fam.str() + "]";

        RationalPolynomial sub(std::vector<Rat>{Rat(i), Rat(m)});
        auto transform = [&](const RationalPolynomial& h) {
            RationalPolynomial shifted =
                h.compose(sub) - RationalPolynomial::constant(h.eval(Rat(i)));
            return shifted.scaled(Rat(1, static_cast<int>(m)));
        };

        std::vector<IntegralPolynomial> scaled;
        for (const auto& p : fam.polys)
            scaled.push_back(IntegralPolynomial::from_monomial(transform(p.to_monomial())));
        PolyFamily fam_s(std::move(scaled));

        std::vector<RationalPolynomial> pool;
        pool.push_back(fam.polys[0].to_monomial());
        pool.push_back(testkit::random_poly(rng2, 3).to_monomial());
        for (unsigned d : {1u, 2u}) {
            WeylSpace wp = weyl_space(fam, d);
            WeylSpace ws = weyl_space(fam_s, d);
            std::vector<RationalPolynomial> hs = pool;
            if (!wp.rational_rows.empty()) hs.push_back(wp.rational_rows.back());
            for (const auto& h : hs)
                expect(contains_rational(wp, h) == contains_rational(ws, transform(h)),
                       "scaling identity" + tag);
        }
    }
}

void criterion_dual_oracle() {
    testkit::Rng rng(0xacce5506ull);
    for (int t = 0; t < 500; ++t) {
        unsigned d = static_cast<unsigned>(rng.in_range(1, 3));
        PolyFamily fam = testkit::random_family(rng, 2, 3);
        const std::size_t r = fam.r();
        StandardWeylSystem sys;
        sys.factors.push_back(WeylFactor{d, "a", std::nullopt});
        std::string tag = " [" + fam.str() + " d=" + std::to_string(d) + "]";

        std::vector<std::vector<Int>> cs(r + 1, std::vector<Int>(d, Int(0)));
        if (t % 2 == 0) {
            for (auto& block : cs)
                for (auto& v : block) v = Int(rng.in_range(-3, 3));
        } else {
            if (d >= 2) {
                Subspace ann = r_span(LambdaMatrix(fam, d - 1)).orthocomplement();
                std::vector<Rat> w(r * (d - 1), Rat(0));
                for (std::size_t i = 0; i < ann.dim(); ++i) {
                    std::vector<Rat> row = ann.basis().row(i);
                    Int l = 1;
                    for (const auto& x : row) l = boost::multiprecision::lcm(l, rat_den(x));
                    Rat c(rng.in_range(-2, 2));
                    for (std::size_t j = 0; j < w.size(); ++j) w[j] += c * Rat(l) * row[j];
                }
                for (unsigned b = 2; b <= d; ++b)
                    for (std::size_t i = 0; i < r; ++i)
                        cs[i + 1][b - 1] = rat_num(w[(b - 2) * r + i]);
            }
            for (std::size_t i = 0; i < r; ++i) cs[i + 1][0] = Int(rng.in_range(-3, 3));
            for (unsigned c = 0; c < d; ++c) {
                Int s = 0;
                for (std::size_t i = 0; i < r; ++i) s += cs[i + 1][c];
                cs[0][c] = -s;
            }
        }

        ClosedFormCorrelation cf = closed_form_correlation(fam, d, cs);
        if (t % 2 == 1) expect(cf.kind == CorrelationKind::Phase, "injected phase tuple" + tag);

        std::vector<Character> chars;
        for (const auto& block : cs) {
            Character c;
            c.freq = block;
            chars.push_back(std::move(c));
        }
        for (long long n = 1; n <= 200; ++n) {
            ExactCorrelation ec = correlate_exact(sys, chars, fam, Int(n));
            bool ok;
            if (cf.kind == CorrelationKind::Phase)
                ok = !ec.zero && ec.phase[0] == cf.q.eval(Int(n));
            else
                ok = ec.zero !=
                     std::binary_search(cf.exceptional.begin(), cf.exceptional.end(), Int(n));
            if (!ok) {
                expect(false, "oracle mismatch at n=" + std::to_string(n) + tag);
                break;
            }
        }
        if (cf.kind == CorrelationKind::Phase)
            expect(contains_poly(weyl_space(fam, d), cf.q), "phase polynomial in WP_d" + tag);
    }
}

void criterion_expansion() {
    testkit::Rng rng(0xacce5507ull);
    for (int t = 0; t < 100; ++t) {
        std::size_t s = static_cast<std::size_t>(rng.in_range(1, 2));
        StandardWeylSystem sys;
        for (std::size_t j = 0; j < s; ++j)
            sys.factors.push_back(
                WeylFactor{static_cast<unsigned>(rng.in_range(1, 2)), "a", std::nullopt});
        PolyFamily fam = testkit::random_family(rng, 2, 2);
        const std::size_t D = sys.total_dim();
        std::string tag = " [" + fam.str() + "]";

        std::vector<CharacterSum> fs;
        for (std::size_t k = 0; k <= fam.r(); ++k) {
            std::vector<std::pair<GaussianRat, Character>> raw;
            std::size_t terms = static_cast<std::size_t>(rng.in_range(1, 3));
            for (std::size_t u = 0; u < terms; ++u) {
                GaussianRat c{Rat(rng.in_range(-2, 2), rng.in_range(1, 3)),
                              Rat(rng.in_range(-2, 2), rng.in_range(1, 3))};
                if (c.is_zero()) c.re = 1;
                Character ch;
                for (std::size_t x = 0; x < D; ++x) ch.freq.emplace_back(rng.in_range(-2, 2));
                raw.emplace_back(c, std::move(ch));
            }
            fs.push_back(CharacterSum::of(std::move(raw)));
        }

        CorrelationExpansion e = expand_correlation(sys, fs, fam);
        expect(e.l2_bound_holds(), "l2 bound" + tag);
        for (long long n = 1; n <= 100; ++n) {
            if (std::binary_search(e.exceptional.begin(), e.exceptional.end(), Int(n))) continue;
            if (!(expansion_value(e, Int(n)) == correlate_sum_exact(sys, fs, fam, Int(n)))) {
                expect(false, "expansion mismatch at n=" + std::to_string(n) + tag);
                break;
            }
        }
    }
}

void criterion_orthogonality() {
    Realized r2 = realize_named("sqrt2", 256);
    struct Pair {
        const char* fam;
        unsigned d;
        const char* h;
        const char* q;
    };
    // h outside WP_d(fam), q inside, h+q nonconstant.
    const Pair pairs[] = {
        {"n", 1, "n^2", "0"},
        {"n, 2n", 2, "n^3", "n - n^2"},
        {"n, 2n", 2, "n^3", "-2n"},
        {"n, 2n", 2, "n^4", "n - n^2"},
        {"n, 2n", 2, "n^4", "2n"},
        {"n, 2n", 2, "n^4", "n^2 - 3n"},
    };
    for (const Pair& p : pairs) {
        WeylSpace wp = weyl_space(parse_family(p.fam), p.d);
        RationalPolynomial h = parse_rational_polynomial(p.h);
        RationalPolynomial q = parse_rational_polynomial(p.q);
        std::string tag = std::string(" [h=") + p.h + " q=" + p.q + "]";
        expect(!contains_rational(wp, h), "h outside the Weyl space" + tag);
        expect(contains_rational(wp, q), "q inside the Weyl space" + tag);

        SequenceSpec spec;
        spec.phases.push_back({IntegralPolynomial::from_monomial(h + q), r2});
        AverageReport rep = ergodic_average(spec, Int(100000));
        double a4 = std::abs(rep.checkpoints[0].second);
        double a5 = std::abs(rep.mean);
        expect(rep.checkpoints[0].first == 10000, "checkpoint at N/10" + tag);
        expect(a5 < 0.05, "mean below 0.05 at N=1e5" + tag);
        expect(a4 / a5 >= 2.0, "decay by 2x from 1e4 to 1e5" + tag);
    }

    // Membership witness: h = -q gives the constant sequence 1.
    SequenceSpec members;
    members.phases.push_back({parse_polynomial("n^2 - n"), r2});
    members.phases.push_back({parse_polynomial("n - n^2"), r2});
    AverageReport rep = ergodic_average(members, Int(1000));
    expect(rep.mean.real() == 1.0 && rep.mean.imag() == 0.0,
           "membership pair averages to exactly 1");
}

void criterion_probes() {
    Realized r2 = realize_named("sqrt2", 256);
    ThresholdSet t;
    t.q = parse_polynomial("n^3");
    t.alpha = r2;
    t.lo = Rat(1, 4);
    t.hi = Rat(3, 4);
    RecurrenceSetSpec thresh{t, 10000};

    for (const Rat& eps : {Rat(1, 4), Rat(1, 5)}) {
        for (const auto& basis :
             {std::vector<IntegralPolynomial>{parse_polynomial("n"), parse_polynomial("n^2"),
                                              parse_polynomial("n^3")},
              std::vector<IntegralPolynomial>{parse_polynomial("n^3")}}) {
            ProbeReport rep = probe_kronecker_basis(thresh, basis, {r2}, eps, 10000);
            expect(rep.verdict == ProbeVerdict::NoWitnessUpToHorizon,
                   "threshold set yields no witness at eps=" + rat_str(eps));
            expect(rep.analytic, "no-witness verdict is analytic at eps=" + rat_str(eps));
        }
    }

    PolyFamily fam = parse_family("n, 2n");
    WeylSpace ws = weyl_space(fam, weyl_complexity(fam));
    RecurrenceSetSpec full{FullRange{}, 1000};
    ProbeReport found = probe_kronecker(full, ws, {r2}, Rat(1, 4), 1000);
    expect(found.verdict == ProbeVerdict::WitnessFound, "full range yields a witness");
    expect(!found.witnesses.empty() && found.witnesses.front().n == 14,
           "first witness at n = 14");

    StandardWeylSystem sys;
    WeylFactor f;
    f.d = 1;
    f.symbol = r2.symbol;
    f.alpha = r2;
    sys.factors.push_back(f);
    CrossCheckReport cross = cross_check(full, parse_family("n"), sys, Rat(1, 4), 1000);
    expect(cross.kronecker.verdict == ProbeVerdict::WitnessFound, "cross-check kronecker side");
    expect(cross.topological.verdict == ProbeVerdict::WitnessFound,
           "cross-check topological side");
    expect(!cross.overlap.empty(), "co-occurring witnesses reported");
}

bool run(int number, const char* label, void (*body)()) {
    int before = g_failed_checks;
    try {
        body();
    } catch (const std::exception& e) {
        expect(false, std::string("unexpected exception: ") + e.what());
    }
    bool ok = g_failed_checks == before;
    std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << number << " — " << label
              << "\n";
    return ok;
}

}  // namespace

int main() {
    bool all = true;
    all &= run(1, "golden Weyl complexity values", criterion_complexity);
    all &= run(2, "golden Weyl polynomial bases", criterion_golden_bases);
    all &= run(3, "scheme comparison verdicts and certificates", criterion_compare);
    all &= run(4, "Weyl space laws on 200 random families", criterion_space_laws);
    all &= run(5, "closed form vs exact correlation on 500 instances", criterion_dual_oracle);
    all &= run(6, "expansion exactness and l2 bound on 100 inputs", criterion_expansion);
    all &= run(7, "orthogonality decay and exact membership averages", criterion_orthogonality);
    all &= run(8, "recurrence probes: analytic, searched, cross-checked", criterion_probes);
    if (!all)
        std::cout << g_failed_checks << " failed check(s)\n";
    return all ? 0 : 1;
}
