// Command-line front end: parses polynomial families, torus systems, and
// probe/sequence specs, dispatches to the library, and prints text or JSON
// reports.  Exit codes: 0 success, 2 parse/config error, 3 complexity did not
// stabilize, 4 missing numeric realization.
#include <weylkit/json_io.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace wk = weylkit;

namespace {

struct Options {
    std::string format = "text";
    unsigned precision = 256;
    unsigned k_max = 0;  // 0 -> 2(rD+1) default inside the library
    std::string epsilon = "1/10";
    long long horizon = 10000;
    long long big_n = 100000;
    long long seed = 0;
    unsigned shards = 1;
    unsigned max_witnesses = 8;
    std::vector<std::string> realize;  // symbol=spec
};

// "1/4", "0.25", or "3" as an exact rational.
wk::Rat parse_rat_flexible(const std::string& s) {
    auto dot = s.find('.');
    if (dot == std::string::npos) return wk::parse_rat_str(s);
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    wk::Int den = 1;
    for (std::size_t i = dot + 1; i < s.size(); ++i) den *= 10;
    return wk::Rat(wk::parse_int_str(digits.empty() ? "0" : digits), den);
}

// Numeric realizations for rotation symbols: --realize entries first, then
// the named constants realize themselves at the configured precision.
class Realizer {
  public:
    Realizer(const std::vector<std::string>& args, unsigned precision) : precision_(precision) {
        for (const auto& a : args) {
            auto eq = a.find('=');
            if (eq == std::string::npos || eq == 0)
                throw std::invalid_argument("--realize needs <symbol>=<spec>: " + a);
            specs_[a.substr(0, eq)] = a.substr(eq + 1);
        }
    }

    wk::Realized operator()(const std::string& symbol) const {
        auto hit = cache_.find(symbol);
        if (hit != cache_.end()) return hit->second;
        wk::Realized r;
        auto s = specs_.find(symbol);
        if (s != specs_.end())
            r = wk::parse_realization(symbol, s->second, precision_);
        else if (wk::is_named_constant(symbol))
            r = wk::parse_realization(symbol, symbol, precision_);
        else
            throw wk::MissingRealizationError(symbol);
        cache_.emplace(symbol, r);
        return r;
    }

  private:
    unsigned precision_;
    std::map<std::string, std::string> specs_;
    mutable std::map<std::string, wk::Realized> cache_;
};

std::string slurp_arg(const std::string& arg) {
    if (arg.empty() || arg[0] != '@') return arg;
    std::ifstream in(arg.substr(1));
    if (!in) throw std::invalid_argument("cannot read file " + arg.substr(1));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

wk::StandardWeylSystem load_system(const std::string& arg, const Realizer& realize,
                                   bool need_numeric) {
    wk::StandardWeylSystem sys = wk::parse_system_text(slurp_arg(arg));
    for (auto& f : sys.factors) {
        if (f.alpha) continue;
        if (need_numeric) {
            f.alpha = realize(f.symbol);
        } else {
            try {
                f.alpha = realize(f.symbol);
            } catch (const wk::MissingRealizationError&) {
                // exact commands run symbolically
            }
        }
    }
    return sys;
}

std::vector<wk::Character> parse_character_list(const std::string& text) {
    std::vector<wk::Character> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t semi = text.find(';', pos);
        auto [c, chi] = wk::parse_character_term(
            text.substr(pos, semi == std::string::npos ? std::string::npos : semi - pos));
        if (!(c.re == 1 && c.im == 0))
            throw std::invalid_argument("correlate takes bare characters, no coefficients");
        out.push_back(std::move(chi));
        if (semi == std::string::npos) break;
        pos = semi + 1;
    }
    return out;
}

std::string gaussian_str(const wk::GaussianRat& c) {
    if (c.im == 0) return wk::rat_str(c.re);
    if (c.re == 0) return wk::rat_str(c.im) + "i";
    std::string im = wk::rat_str(c.im);
    if (!im.empty() && im[0] == '-') return wk::rat_str(c.re) + " - " + im.substr(1) + "i";
    return wk::rat_str(c.re) + " + " + im + "i";
}

std::string phase_str(const std::vector<wk::Int>& mult, const wk::StandardWeylSystem& sys) {
    std::string body;
    for (std::size_t j = 0; j < mult.size(); ++j) {
        if (mult[j] == 0) continue;
        std::string term = wk::int_str(mult[j]) + "*" + sys.factors[j].symbol;
        if (body.empty()) {
            body = term;
        } else if (term[0] == '-') {
            body += " - " + term.substr(1);
        } else {
            body += " + " + term;
        }
    }
    if (body.empty()) return "1";
    return "e(" + body + ")";
}

void emit(const Options& opt, const wk::Json& j, const std::string& text) {
    if (opt.format == "json")
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text;
}

// --- subcommand bodies ----------------------------------------------------

int cmd_complexity(const Options& opt, const std::string& family) {
    wk::PolyFamily fam = wk::parse_family(family);
    std::vector<std::pair<unsigned, std::size_t>> trace;
    unsigned w = wk::weyl_complexity(fam, opt.k_max, &trace);
    wk::Json j;
    j["schema"] = wk::kSchema;
    j["command"] = "complexity";
    j["family"] = fam.str();
    j["W"] = w;
    wk::Json tr = wk::Json::array();
    for (const auto& [k, d] : trace) tr.push_back(wk::Json{{"k", k}, {"dim", d}});
    j["trace"] = std::move(tr);
    std::ostringstream out;
    out << "family " << fam.str() << "\n";
    out << "W = " << w << "\n";
    out << "dim R-span(Lambda_k):";
    for (const auto& [k, d] : trace) out << " k=" << k << ":" << d;
    out << "\n";
    emit(opt, j, out.str());
    return 0;
}

int cmd_weyl_basis(const Options& opt, const std::string& family, int k_arg) {
    wk::PolyFamily fam = wk::parse_family(family);
    unsigned k = k_arg >= 0 ? static_cast<unsigned>(k_arg) : wk::weyl_complexity(fam, opt.k_max);
    wk::WeylSpace w = wk::weyl_space(fam, k);
    wk::Json j;
    j["schema"] = wk::kSchema;
    j["command"] = "weyl-basis";
    j["family"] = fam.str();
    j["k"] = k;
    j["dim"] = w.dim();
    wk::Json rb = wk::Json::array(), ib = wk::Json::array();
    for (const auto& p : w.rational_rows) rb.push_back(p.str());
    for (const auto& p : w.integral_basis) ib.push_back(p.str());
    j["rational_basis"] = std::move(rb);
    j["integral_basis"] = std::move(ib);
    std::ostringstream out;
    out << "family " << fam.str() << ", k = " << k << ", dim = " << w.dim() << "\n";
    out << "WP_" << k << " = " << w.canonical_text() << "\n";
    out << "integral basis {";
    for (std::size_t i = 0; i < w.integral_basis.size(); ++i)
        out << (i ? ", " : "") << w.integral_basis[i].str();
    out << "}\n";
    emit(opt, j, out.str());
    return 0;
}

int cmd_compare(const Options& opt, const std::string& p_text, const std::string& q_text) {
    wk::PolyFamily P = wk::parse_family(p_text), Q = wk::parse_family(q_text);
    wk::SchemeComparison cmp = wk::scheme_compare(P, Q, opt.k_max);
    wk::Json j;
    j["schema"] = wk::kSchema;
    j["command"] = "compare";
    j["P"] = P.str();
    j["Q"] = Q.str();
    j["verdict"] = wk::verdict_name(cmp.verdict);
    j["WP_P"] = cmp.wp.canonical_text();
    j["WP_Q"] = cmp.wq.canonical_text();
    j["cert_in_P_not_Q"] = cmp.cert_p_not_q ? wk::Json(cmp.cert_p_not_q->str()) : wk::Json(nullptr);
    j["cert_in_Q_not_P"] = cmp.cert_q_not_p ? wk::Json(cmp.cert_q_not_p->str()) : wk::Json(nullptr);
    std::ostringstream out;
    out << "P = " << P.str() << "  WP(P) = " << cmp.wp.canonical_text() << "\n";
    out << "Q = " << Q.str() << "  WP(Q) = " << cmp.wq.canonical_text() << "\n";
    out << "verdict: " << wk::verdict_name(cmp.verdict) << "\n";
    if (cmp.cert_p_not_q)
        out << "in WP(P), not in WP(Q): " << cmp.cert_p_not_q->str() << "\n";
    if (cmp.cert_q_not_p)
        out << "in WP(Q), not in WP(P): " << cmp.cert_q_not_p->str() << "\n";
    switch (cmp.verdict) {
        case wk::CompareVerdict::Equivalent:
            out << "recurrence schemes are equivalent\n";
            break;
        case wk::CompareVerdict::PrecImpliesQrec:
            out << "every set of P-recurrence is a set of Q-recurrence\n";
            break;
        case wk::CompareVerdict::QrecImpliesPrec:
            out << "every set of Q-recurrence is a set of P-recurrence\n";
            break;
        default:
            out << "schemes in general position: neither implication holds\n";
    }
    emit(opt, j, out.str());
    return 0;
}

int cmd_membership(const Options& opt, const std::string& q_text, const std::string& family,
                   int k_arg) {
    wk::PolyFamily fam = wk::parse_family(family);
    wk::RationalPolynomial q = wk::parse_rational_polynomial(q_text);
    unsigned k = k_arg >= 0 ? static_cast<unsigned>(k_arg) : wk::weyl_complexity(fam, opt.k_max);
    wk::WeylSpace w = wk::weyl_space(fam, k);
    bool in = wk::contains_rational(w, q);
    wk::Json j;
    j["schema"] = wk::kSchema;
    j["command"] = "membership";
    j["family"] = fam.str();
    j["k"] = k;
    j["q"] = q.str();
    j["contains"] = in;
    j["space"] = w.canonical_text();
    std::ostringstream out;
    out << q.str() << (in ? " in " : " not in ") << "WP_" << k << "(" << fam.str()
        << ") = " << w.canonical_text() << "\n";
    emit(opt, j, out.str());
    return 0;
}

int cmd_correlate(const Options& opt, const Realizer& realize, const std::string& system_arg,
                  const std::string& chars_arg, const std::string& family, long long n_from,
                  long long n_to) {
    wk::StandardWeylSystem sys = load_system(system_arg, realize, false);
    wk::PolyFamily fam = wk::parse_family(family);
    std::vector<wk::Character> chars = parse_character_list(chars_arg);
    if (n_from > n_to) throw std::invalid_argument("need n-from <= n-to");

    // Per-factor closed forms (n-independent).
    std::vector<wk::ClosedFormCorrelation> cfs;
    for (std::size_t jf = 0; jf < sys.factors.size(); ++jf) {
        std::vector<std::vector<wk::Int>> blocks;
        for (const auto& chi : chars) {
            const std::size_t off = sys.offset(jf);
            blocks.emplace_back(chi.freq.begin() + static_cast<long>(off),
                                chi.freq.begin() + static_cast<long>(off + sys.factors[jf].d));
        }
        cfs.push_back(wk::closed_form_correlation(fam, sys.factors[jf].d, blocks));
    }

    wk::Json j;
    j["schema"] = wk::kSchema;
    j["command"] = "correlate";
    j["family"] = fam.str();
    wk::Json jf = wk::Json::array();
    std::ostringstream out;
    out << "family " << fam.str() << "\n";
    for (std::size_t f = 0; f < cfs.size(); ++f) {
        wk::Json cj;
        cj["factor"] = f;
        cj["symbol"] = sys.factors[f].symbol;
        if (cfs[f].kind == wk::CorrelationKind::Phase) {
            cj["kind"] = "Phase";
            cj["q"] = cfs[f].q.str();
            out << "factor " << f << " (" << sys.factors[f].symbol << "): Phase, q(n) = "
                << cfs[f].q.str() << "\n";
        } else {
            cj["kind"] = "Zero";
            wk::Json ex = wk::Json::array();
            for (const auto& n : cfs[f].exceptional) ex.push_back(wk::int_str(n));
            cj["exceptional"] = std::move(ex);
            out << "factor " << f << " (" << sys.factors[f].symbol << "): Zero, exceptional {";
            for (std::size_t i = 0; i < cfs[f].exceptional.size(); ++i)
                out << (i ? "," : "") << wk::int_str(cfs[f].exceptional[i]);
            out << "}\n";
        }
        jf.push_back(std::move(cj));
    }
    j["closed_form"] = std::move(jf);

    wk::Json rows = wk::Json::array();
    out << "  n | exact value        | closed form\n";
    for (long long n = n_from; n <= n_to; ++n) {
        wk::ExactCorrelation ec = wk::correlate_exact(sys, chars, fam, n);
        std::string exact = ec.zero ? "0" : phase_str(ec.phase, sys);
        std::string closed;
        bool zero = false, exceptional = false;
        std::vector<wk::Int> mult(sys.factors.size(), 0);
        for (std::size_t f = 0; f < cfs.size(); ++f) {
            if (cfs[f].kind == wk::CorrelationKind::Zero) {
                bool exc = std::binary_search(cfs[f].exceptional.begin(),
                                              cfs[f].exceptional.end(), wk::Int(n));
                if (exc) exceptional = true;
                else zero = true;
            } else {
                mult[f] = cfs[f].q.eval(n);
            }
        }
        if (zero) closed = "0";
        else if (exceptional) closed = "exceptional";
        else closed = phase_str(mult, sys);
        rows.push_back(wk::Json{{"n", n}, {"exact", exact}, {"closed", closed}});
        out << std::setw(3) << n << " | " << std::setw(18) << std::left << exact << std::right
            << " | " << closed << "\n";
    }
    j["table"] = std::move(rows);
    emit(opt, j, out.str());
    return 0;
}

int cmd_expand(const Options& opt, const Realizer& realize, const std::string& system_arg,
               const std::string& sums_arg, const std::string& family) {
    wk::StandardWeylSystem sys = load_system(system_arg, realize, false);
    wk::PolyFamily fam = wk::parse_family(family);
    std::vector<wk::CharacterSum> fs = wk::parse_character_sums(sums_arg);
    wk::CorrelationExpansion e = wk::expand_correlation(sys, fs, fam);

    wk::Json j;
    j["schema"] = wk::kSchema;
    j["command"] = "expand";
    j["family"] = fam.str();
    j["term_count"] = e.terms.size();
    wk::Json terms = wk::Json::array();
    std::ostringstream out;
    out << "family " << fam.str() << ", " << e.terms.size() << " nonzero terms\n";
    for (const auto& t : e.terms) {
        wk::Json tj;
        tj["c"] = gaussian_str(t.c);
        wk::Json qs = wk::Json::array();
        std::string qtext;
        for (std::size_t f = 0; f < t.q.size(); ++f) {
            qs.push_back(t.q[f].str());
            if (f) qtext += ", ";
            qtext += sys.factors[f].symbol + ": " + t.q[f].str();
        }
        tj["q"] = std::move(qs);
        terms.push_back(std::move(tj));
        out << "  (" << gaussian_str(t.c) << ") * e[" << qtext << "]\n";
    }
    j["terms"] = std::move(terms);
    wk::Json ex = wk::Json::array();
    for (const auto& n : e.exceptional) ex.push_back(wk::int_str(n));
    j["exceptional"] = std::move(ex);
    wk::detail::put_rat(j, "coeff_l2", e.coeff_l2);
    wk::Rat rhs = 1;
    for (const auto& x : e.input_norm2) rhs *= x;
    wk::detail::put_rat(j, "norm2_product", rhs);
    j["l2_bound_holds"] = e.l2_bound_holds();
    out << "exceptional {";
    for (std::size_t i = 0; i < e.exceptional.size(); ++i)
        out << (i ? "," : "") << wk::int_str(e.exceptional[i]);
    out << "}\n";
    out << "sum |c_l|^2 = " << wk::rat_str(e.coeff_l2) << " <= prod ||f_k||_2^2 = "
        << wk::rat_str(rhs) << " : " << (e.l2_bound_holds() ? "holds" : "VIOLATED") << "\n";
    emit(opt, j, out.str());
    return 0;
}

std::string witness_text(const wk::ProbeWitness& w) {
    std::ostringstream out;
    out << "n = " << wk::int_str(w.n) << ", residuals:";
    for (const auto& r : w.residuals) out << " " << wk::rat_double(r);
    if (w.point) {
        out << ", base point (";
        for (std::size_t i = 0; i < w.point->size(); ++i)
            out << (i ? ", " : "") << wk::rat_double((*w.point)[i]);
        out << ")";
    }
    return out.str();
}

std::string probe_text(const wk::ProbeReport& rep) {
    std::ostringstream out;
    out << rep.probe << " probe on " << rep.set.str() << "\n";
    if (!rep.basis.empty()) {
        out << "basis {";
        for (std::size_t i = 0; i < rep.basis.size(); ++i)
            out << (i ? ", " : "") << rep.basis[i].str();
        out << "}, beta (";
        for (std::size_t i = 0; i < rep.betas.size(); ++i)
            out << (i ? ", " : "") << rep.betas[i].symbol;
        out << ")\n";
    }
    if (rep.family) out << "family " << rep.family->str() << "\n";
    out << "epsilon = " << wk::rat_str(rep.epsilon) << ", horizon = " << wk::int_str(rep.horizon)
        << "\n";
    out << "verdict: " << wk::verdict_name(rep.verdict) << (rep.analytic ? " (analytic)" : "")
        << "\n";
    if (!rep.notes.empty()) out << "note: " << rep.notes << "\n";
    for (const auto& w : rep.witnesses) out << "  witness " << witness_text(w) << "\n";
    if (rep.near_miss)
        out << "  near miss " << witness_text(*rep.near_miss) << " (max "
            << wk::rat_double(rep.near_miss_max) << ")\n";
    return out.str();
}

int cmd_probe(const Options& opt, const Realizer& realize, const std::string& probe_kind,
              const std::string& set_arg, const std::string& family, const std::string& basis_arg,
              const std::vector<std::string>& beta_args, const std::string& system_arg,
              const std::string& validate_arg) {
    if (!validate_arg.empty()) {
        std::ifstream in(validate_arg);
        if (!in) throw std::invalid_argument("cannot read file " + validate_arg);
        wk::Json j = wk::Json::parse(in);
        wk::ValidationResult v = wk::validate_probe_report(j);
        std::cout << (v.ok ? "valid: " : "INVALID: ") << v.message << "\n";
        return v.ok ? 0 : 1;
    }

    wk::Rat eps = parse_rat_flexible(opt.epsilon);
    wk::Int horizon(opt.horizon);
    wk::ProbeOptions popt;
    popt.max_witnesses = opt.max_witnesses;
    popt.shards = opt.shards;
    popt.seed = wk::Int(opt.seed);
    auto spec = wk::parse_set_spec(set_arg, horizon,
                                   [&](const std::string& sym) { return realize(sym); });

    if (probe_kind == "kronecker") {
        std::vector<wk::IntegralPolynomial> basis;
        if (!basis_arg.empty()) {
            for (const auto& p : wk::parse_family(basis_arg).polys) basis.push_back(p);
        } else if (!family.empty()) {
            basis = wk::weyl_polynomials(wk::parse_family(family), opt.k_max).integral_basis;
        } else {
            throw std::invalid_argument("kronecker probe needs --family or --basis");
        }
        std::vector<wk::Realized> betas;
        for (const auto& b : beta_args) betas.push_back(realize(b));
        if (betas.empty()) betas.push_back(realize("sqrt2"));
        wk::ProbeReport rep = wk::probe_kronecker_basis(spec, basis, betas, eps, horizon, popt);
        emit(opt, wk::probe_report_json(rep), probe_text(rep));
        return 0;
    }
    if (probe_kind == "topological") {
        if (family.empty() || system_arg.empty())
            throw std::invalid_argument("topological probe needs --family and --system");
        wk::StandardWeylSystem sys = load_system(system_arg, realize, true);
        wk::PolyFamily fam = wk::parse_family(family);
        wk::ProbeReport rep = wk::probe_topological(spec, sys, fam, eps, horizon, popt);
        emit(opt, wk::probe_report_json(rep), probe_text(rep));
        return 0;
    }
    if (probe_kind == "cross") {
        if (family.empty() || system_arg.empty())
            throw std::invalid_argument("cross probe needs --family and --system");
        wk::StandardWeylSystem sys = load_system(system_arg, realize, true);
        wk::PolyFamily fam = wk::parse_family(family);
        wk::CrossCheckReport rep = wk::cross_check(spec, fam, sys, eps, horizon, popt);
        std::ostringstream out;
        out << probe_text(rep.kronecker) << "\n" << probe_text(rep.topological) << "\n";
        out << "overlap of capped witness lists:";
        for (const auto& n : rep.overlap) out << " " << wk::int_str(n);
        out << "\nnote: " << rep.notes << "\n";
        emit(opt, wk::cross_check_json(rep), out.str());
        return 0;
    }
    throw std::invalid_argument("--probe must be kronecker | topological | cross");
}

// Sequence factor: "phase:<poly>@<symbol>" or "corr:<d>:<family>:<chars>@<symbol>".
// Factors are joined by '*'; a '*' splits only where the next factor spec
// begins, so polynomial-internal products ("2*n") pass through.
wk::SequenceSpec parse_sequence(const std::string& text, const Realizer& realize) {
    wk::SequenceSpec seq;
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (std::size_t pos = 0; pos < text.size(); ++pos) {
        if (text[pos] != '*') continue;
        std::size_t next = pos + 1;
        while (next < text.size() && text[next] == ' ') ++next;
        if (text.compare(next, 6, "phase:") == 0 || text.compare(next, 5, "corr:") == 0) {
            parts.push_back(text.substr(start, pos - start));
            start = next;
            pos = next - 1;
        }
    }
    parts.push_back(text.substr(start));
    for (auto& raw : parts) {
        std::string p = raw;
        while (!p.empty() && p.front() == ' ') p.erase(p.begin());
        while (!p.empty() && p.back() == ' ') p.pop_back();
        std::size_t at = p.rfind('@');
        if (at == std::string::npos)
            throw std::invalid_argument("sequence factor needs @<symbol>: " + p);
        std::string sym = p.substr(at + 1);
        if (p.rfind("phase:", 0) == 0) {
            wk::PhaseFactor f;
            f.q = wk::parse_polynomial(p.substr(6, at - 6));
            f.alpha = realize(sym);
            seq.phases.push_back(std::move(f));
        } else if (p.rfind("corr:", 0) == 0) {
            std::string body = p.substr(5, at - 5);
            std::size_t c1 = body.find(':');
            std::size_t c2 = body.find(':', c1 + 1);
            if (c1 == std::string::npos || c2 == std::string::npos)
                throw std::invalid_argument("corr factor needs corr:<d>:<family>:<chars>@<symbol>");
            unsigned d = static_cast<unsigned>(std::stoul(body.substr(0, c1)));
            wk::PolyFamily fam = wk::parse_family(body.substr(c1 + 1, c2 - c1 - 1));
            std::vector<std::vector<wk::Int>> blocks;
            for (const auto& chi : parse_character_list(body.substr(c2 + 1))) {
                if (chi.freq.size() != d)
                    throw std::invalid_argument("corr factor characters must have width d");
                blocks.push_back(chi.freq);
            }
            wk::CorrFactor f;
            f.cf = wk::closed_form_correlation(fam, d, blocks);
            f.beta = realize(sym);
            seq.corrs.push_back(std::move(f));
        } else {
            throw std::invalid_argument("sequence factor must start with phase: or corr:");
        }
    }
    return seq;
}

int cmd_average(const Options& opt, const Realizer& realize, const std::string& seq_arg) {
    wk::SequenceSpec seq = parse_sequence(seq_arg, realize);
    wk::AverageReport rep = wk::ergodic_average(seq, wk::Int(opt.big_n));
    wk::Json j;
    j["schema"] = wk::kSchema;
    j["command"] = "average";
    j["sequence"] = seq_arg;
    j["N"] = wk::int_str(rep.N);
    wk::Json cps = wk::Json::array();
    std::ostringstream out;
    out << "Cesaro averages of " << seq_arg << "\n";
    out << "        n |        re |        im |      |mean|\n";
    for (const auto& [n, m] : rep.checkpoints) {
        cps.push_back(wk::Json{{"n", wk::int_str(n)},
                               {"re", m.real()},
                               {"im", m.imag()},
                               {"abs", std::abs(m)}});
        out << std::setw(9) << wk::int_str(n) << " | " << std::setw(9) << std::setprecision(6)
            << std::fixed << m.real() << " | " << std::setw(9) << m.imag() << " | " << std::setw(11)
            << std::abs(m) << "\n";
        out.unsetf(std::ios::fixed);
    }
    j["checkpoints"] = std::move(cps);
    j["mean"] = wk::Json{{"re", rep.mean.real()}, {"im", rep.mean.imag()},
                         {"abs", std::abs(rep.mean)}};
    out << "mean at N = " << wk::int_str(rep.N) << ": " << rep.mean.real() << " + "
        << rep.mean.imag() << "i, |mean| = " << std::abs(rep.mean) << "\n";
    emit(opt, j, out.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Weyl-system recurrence toolkit"};
    app.require_subcommand(1);
    Options opt;
    app.add_option("--format", opt.format, "output format: text | json")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_option("--precision", opt.precision, "realization precision bits (default 256)");
    app.add_option("--k-max", opt.k_max, "stabilization scan bound (default 2(rD+1))");
    app.add_option("--epsilon", opt.epsilon, "probe radius, rational or decimal (default 1/10)");
    app.add_option("--horizon", opt.horizon, "probe horizon (default 10^4)");
    app.add_option("--N", opt.big_n, "average length (default 10^5)");
    app.add_option("--seed", opt.seed, "grid seed offset (default 0)");
    app.add_option("--shards", opt.shards, "probe shard count (default 1)");
    app.add_option("--max-witnesses", opt.max_witnesses, "witness cap per report (default 8)");
    app.add_option("--realize", opt.realize,
                   "<symbol>=<spec>, spec is sqrt2 | golden | e | name:depth | a/b");

    std::string family, q_text, p_text, system_arg, chars_arg, set_arg = "full";
    std::string basis_arg, probe_kind = "kronecker", validate_arg, seq_arg;
    std::vector<std::string> beta_args;
    int k_arg = -1;
    long long n_from = 1, n_to = 10;

    auto* c_complexity = app.add_subcommand("complexity", "Weyl complexity W(P) with trace");
    c_complexity->add_option("family", family, "comma-separated integral polynomials")->required();

    auto* c_basis = app.add_subcommand("weyl-basis", "basis of WP_k(P) (default k = W(P))");
    c_basis->add_option("family", family)->required();
    c_basis->add_option("--k", k_arg, "explicit k (default: stabilized)");

    auto* c_compare = app.add_subcommand("compare", "recurrence-scheme comparison");
    c_compare->add_option("P", p_text)->required();
    c_compare->add_option("Q", q_text)->required();

    auto* c_member = app.add_subcommand("membership", "is q in WP_k(P)?");
    c_member->add_option("q", q_text)->required();
    c_member->add_option("family", family)->required();
    c_member->add_option("--k", k_arg, "explicit k (default: stabilized)");

    auto* c_corr = app.add_subcommand("correlate", "exact vs closed-form correlation table");
    c_corr->add_option("system", system_arg, "factor lines or @file")->required();
    c_corr->add_option("characters", chars_arg, "';'-separated tuples, v^0 first")->required();
    c_corr->add_option("family", family)->required();
    c_corr->add_option("--n-from", n_from);
    c_corr->add_option("--n-to", n_to);

    auto* c_expand = app.add_subcommand("expand", "finite correlation expansion");
    c_expand->add_option("system", system_arg, "factor lines or @file")->required();
    c_expand->add_option("sums", chars_arg, "';'-separated character sums, f_0 first")->required();
    c_expand->add_option("family", family)->required();

    auto* c_probe = app.add_subcommand("probe", "recurrence-set probes");
    c_probe->add_option("--probe", probe_kind, "kronecker | topological | cross");
    c_probe->add_option("--set", set_arg, "full | list:... | threshold:<poly>@<sym>:<lo>:<hi>");
    c_probe->add_option("--family", family, "polynomial family");
    c_probe->add_option("--basis", basis_arg, "explicit basis polynomials (kronecker)");
    c_probe->add_option("--beta", beta_args, "rotation symbols for the Kronecker target");
    c_probe->add_option("--system", system_arg, "standard product (topological/cross)");
    c_probe->add_option("--validate", validate_arg, "re-run a serialized probe report");

    auto* c_avg = app.add_subcommand("average", "Cesaro average of a sequence spec");
    c_avg->add_option("sequence", seq_arg,
                      "factors joined by '*': phase:<poly>@<sym> | corr:<d>:<family>:<chars>@<sym>")
        ->required();

    try {
        app.parse(argc, argv);
        Realizer realize(opt.realize, opt.precision);
        if (c_complexity->parsed()) return cmd_complexity(opt, family);
        if (c_basis->parsed()) return cmd_weyl_basis(opt, family, k_arg);
        if (c_compare->parsed()) return cmd_compare(opt, p_text, q_text);
        if (c_member->parsed()) return cmd_membership(opt, q_text, family, k_arg);
        if (c_corr->parsed())
            return cmd_correlate(opt, realize, system_arg, chars_arg, family, n_from, n_to);
        if (c_expand->parsed()) return cmd_expand(opt, realize, system_arg, chars_arg, family);
        if (c_probe->parsed())
            return cmd_probe(opt, realize, probe_kind, set_arg, family, basis_arg, beta_args,
                             system_arg, validate_arg);
        if (c_avg->parsed()) return cmd_average(opt, realize, seq_arg);
        return 2;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const wk::NotStabilizedError& e) {
        std::cerr << "error: " << e.what() << "; trace:";
        for (const auto& [k, d] : e.trace) std::cerr << " k=" << k << ":" << d;
        std::cerr << "\n";
        return 3;
    } catch (const wk::MissingRealizationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const wk::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const wk::IntegralityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
