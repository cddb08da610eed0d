#ifndef WEYLKIT_JSON_IO_HPP
#define WEYLKIT_JSON_IO_HPP

#include <weylkit/recurrence.hpp>

#include <json.hpp>

#include <string>
#include <utility>
#include <vector>

namespace weylkit {

using Json = nlohmann::json;

inline constexpr const char* kSchema = "weylkit/1";

namespace detail {

// Named sources are pinned to their convergent depth so a reparse rebuilds the
// identical rational regardless of the precision default in force.
inline std::string resolved_source(const Realized& r) {
    if (is_named_constant(r.source)) return r.source + ":" + std::to_string(r.cf_depth);
    return r.source;
}

inline void put_rat(Json& j, const std::string& key, const Rat& v) {
    j[key] = rat_double(v);
    j[key + "_exact"] = rat_str(v);
}

inline void put_rat_list(Json& j, const std::string& key, const std::vector<Rat>& vs) {
    Json f = Json::array(), e = Json::array();
    for (const auto& v : vs) {
        f.push_back(rat_double(v));
        e.push_back(rat_str(v));
    }
    j[key] = std::move(f);
    j[key + "_exact"] = std::move(e);
}

inline std::vector<Rat> rat_list_from(const Json& j, const std::string& key) {
    std::vector<Rat> out;
    for (const auto& s : j.at(key + "_exact")) out.push_back(parse_rat_str(s.get<std::string>()));
    return out;
}

}  // namespace detail

inline Json realized_json(const Realized& r) {
    Json j;
    j["symbol"] = r.symbol;
    j["source"] = detail::resolved_source(r);
    j["cf_depth"] = r.cf_depth;
    detail::put_rat(j, "value", r.value);
    return j;
}

inline Realized realized_from_json(const Json& j) {
    Realized r = parse_realization(j.at("symbol").get<std::string>(),
                                   j.at("source").get<std::string>(), 0);
    if (rat_str(r.value) != j.at("value_exact").get<std::string>())
        throw std::invalid_argument("realization source does not reproduce the stored value");
    return r;
}

inline Json set_spec_json(const RecurrenceSetSpec& spec) {
    Json j;
    j["horizon"] = int_str(spec.horizon);
    if (std::holds_alternative<FullRange>(spec.variant)) {
        j["kind"] = "full";
    } else if (const auto* l = std::get_if<ExplicitList>(&spec.variant)) {
        j["kind"] = "list";
        Json vals = Json::array();
        for (const auto& v : l->values) vals.push_back(int_str(v));
        j["values"] = std::move(vals);
    } else {
        const auto& t = std::get<ThresholdSet>(spec.variant);
        j["kind"] = "threshold";
        j["q"] = t.q.str();
        j["alpha"] = realized_json(t.alpha);
        detail::put_rat(j, "lo", t.lo);
        detail::put_rat(j, "hi", t.hi);
    }
    return j;
}

inline RecurrenceSetSpec set_spec_from_json(const Json& j) {
    Int horizon = parse_int_str(j.at("horizon").get<std::string>());
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "full") return {FullRange{}, horizon};
    if (kind == "list") {
        ExplicitList l;
        for (const auto& v : j.at("values")) l.values.push_back(parse_int_str(v.get<std::string>()));
        return {std::move(l), horizon};
    }
    if (kind == "threshold") {
        ThresholdSet t;
        t.q = parse_polynomial(j.at("q").get<std::string>());
        t.alpha = realized_from_json(j.at("alpha"));
        t.lo = parse_rat_str(j.at("lo_exact").get<std::string>());
        t.hi = parse_rat_str(j.at("hi_exact").get<std::string>());
        return {std::move(t), horizon};
    }
    throw std::invalid_argument("unknown set kind '" + kind + "'");
}

inline Json witness_json(const ProbeWitness& w) {
    Json j;
    j["n"] = int_str(w.n);
    detail::put_rat_list(j, "residuals", w.residuals);
    if (w.point) detail::put_rat_list(j, "point", *w.point);
    return j;
}

inline Json probe_report_json(const ProbeReport& rep) {
    Json j;
    j["schema"] = kSchema;
    j["command"] = "probe";
    j["probe"] = rep.probe;
    j["verdict"] = verdict_name(rep.verdict);
    j["analytic"] = rep.analytic;
    detail::put_rat(j, "epsilon", rep.epsilon);
    j["horizon"] = int_str(rep.horizon);
    j["set"] = set_spec_json(rep.set);
    if (!rep.basis.empty()) {
        Json basis = Json::array();
        for (const auto& q : rep.basis) basis.push_back(q.str());
        j["basis"] = std::move(basis);
        Json betas = Json::array();
        for (const auto& b : rep.betas) betas.push_back(realized_json(b));
        j["betas"] = std::move(betas);
    }
    if (rep.system) {
        Json factors = Json::array();
        for (const auto& f : rep.system->factors) {
            Json fj;
            fj["d"] = f.d;
            fj["alpha"] = realized_json(f.realization());
            factors.push_back(std::move(fj));
        }
        j["system"] = Json{{"factors", std::move(factors)}};
        Json fam = Json::array();
        for (const auto& p : rep.family->polys) fam.push_back(p.str());
        j["family"] = std::move(fam);
    }
    Json wits = Json::array();
    for (const auto& w : rep.witnesses) wits.push_back(witness_json(w));
    j["witnesses"] = std::move(wits);
    if (rep.near_miss) {
        j["near_miss"] = witness_json(*rep.near_miss);
        detail::put_rat(j["near_miss"], "max_residual", rep.near_miss_max);
    } else {
        j["near_miss"] = nullptr;
    }
    Json sp;
    for (const auto& [k, v] : rep.search_params) sp[k] = v;
    j["search_params"] = std::move(sp);
    j["notes"] = rep.notes;
    return j;
}

inline Json cross_check_json(const CrossCheckReport& rep) {
    Json j;
    j["schema"] = kSchema;
    j["command"] = "cross_check";
    j["kronecker"] = probe_report_json(rep.kronecker);
    j["topological"] = probe_report_json(rep.topological);
    Json ov = Json::array();
    for (const auto& n : rep.overlap) ov.push_back(int_str(n));
    j["overlap"] = std::move(ov);
    Json fac = Json::array();
    for (const auto& [n, f] : rep.observed_factors) {
        Json e;
        e["n"] = int_str(n);
        detail::put_rat(e, "factor", f);
        fac.push_back(std::move(e));
    }
    j["observed_factors"] = std::move(fac);
    j["notes"] = rep.notes;
    return j;
}

struct ValidationResult {
    bool ok = false;
    std::string message;
};

// Deterministic re-run: rebuild the probe inputs from the serialized report,
// run the probe again, and require the reserialized report to match the input
// byte for byte (as JSON values).
inline ValidationResult validate_probe_report(const Json& j) {
    try {
        if (j.at("schema").get<std::string>() != kSchema)
            return {false, "unknown schema"};
        RecurrenceSetSpec spec = set_spec_from_json(j.at("set"));
        Rat eps = parse_rat_str(j.at("epsilon_exact").get<std::string>());
        Int horizon = parse_int_str(j.at("horizon").get<std::string>());
        const Json& sp = j.at("search_params");
        ProbeOptions opt;
        opt.max_witnesses = std::stoul(sp.at("max_witnesses").get<std::string>());
        opt.shards = static_cast<unsigned>(std::stoul(sp.at("shards").get<std::string>()));
        if (sp.contains("seed")) opt.seed = parse_int_str(sp.at("seed").get<std::string>());

        Json rerun;
        std::string probe = j.at("probe").get<std::string>();
        if (probe == "kronecker") {
            std::vector<IntegralPolynomial> basis;
            for (const auto& s : j.at("basis")) basis.push_back(parse_polynomial(s.get<std::string>()));
            std::vector<Realized> betas;
            for (const auto& b : j.at("betas")) betas.push_back(realized_from_json(b));
            rerun = probe_report_json(probe_kronecker_basis(spec, basis, betas, eps, horizon, opt));
        } else if (probe == "topological") {
            StandardWeylSystem sys;
            for (const auto& fj : j.at("system").at("factors")) {
                WeylFactor f;
                f.d = fj.at("d").get<unsigned>();
                f.alpha = realized_from_json(fj.at("alpha"));
                f.symbol = f.alpha->symbol;
                sys.factors.push_back(std::move(f));
            }
            std::vector<IntegralPolynomial> polys;
            for (const auto& s : j.at("family")) polys.push_back(parse_polynomial(s.get<std::string>()));
            rerun = probe_report_json(
                probe_topological(spec, sys, PolyFamily(std::move(polys)), eps, horizon, opt));
        } else {
            return {false, "unknown probe kind '" + probe + "'"};
        }
        if (rerun == j) return {true, "re-run reproduced the report bit-exactly"};
        std::string diff;
        for (const auto& [key, val] : j.items())
            if (!rerun.contains(key) || rerun[key] != val) { diff = key; break; }
        return {false, "re-run diverged at field '" + diff + "'"};
    } catch (const std::exception& e) {
        return {false, std::string("validation error: ") + e.what()};
    }
}

}  // namespace weylkit

#endif  // WEYLKIT_JSON_IO_HPP
