#include "breuil/report.hpp"

#include <array>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "breuil/comparison.hpp"
#include "breuil/deformation.hpp"
#include "breuil/errors.hpp"
#include "breuil/gauge.hpp"
#include "breuil/gauge_modp.hpp"
#include "breuil/monodromy.hpp"
#include "breuil/rand.hpp"

namespace breuil {

namespace {

using json = nlohmann::json; // object keys are kept sorted: dumps are canonical

// ---- input document -----------------------------------------------------------------

struct ProblemInput {
    std::uint32_t prime = 13;
    std::array<std::uint32_t, 3> weights{0, 4, 8};
    std::uint32_t padic = 8;
    std::uint32_t fil = 11;
    std::uint32_t pi_truncation = 0; // 0 = e*p
    std::string coefficients = "ZpN";
    std::string filtration = "standard";
    std::uint64_t seed = 0;
    json frobenius; // null when absent
};

std::uint32_t as_u32(const json& j, const char* what) {
    if (!j.is_number_unsigned())
        throw input_error(std::string("input: ") + what + " must be a nonnegative integer");
    const std::uint64_t v = j.get<std::uint64_t>();
    if (v > 0xffffffffull)
        throw input_error(std::string("input: ") + what + " out of range");
    return static_cast<std::uint32_t>(v);
}

ProblemInput parse_input(const std::string& path) {
    ProblemInput in;
    if (path.empty()) return in;
    std::ifstream f(path);
    if (!f) throw input_error("input: cannot open '" + path + "'");
    json doc;
    try {
        doc = json::parse(f);
    } catch (const json::exception& ex) {
        throw input_error(std::string("input: JSON parse failure: ") + ex.what());
    }
    if (!doc.is_object()) throw input_error("input: document must be a JSON object");

    if (doc.contains("prime")) in.prime = as_u32(doc["prime"], "prime");
    if (doc.contains("weights")) {
        const json& w = doc["weights"];
        if (!w.is_array() || w.size() != 3)
            throw input_error("input: weights must be an array [a0, a1, a2]");
        for (int i = 0; i < 3; ++i) in.weights[i] = as_u32(w[i], "weights[i]");
    }
    if (doc.contains("precision")) {
        const json& pr = doc["precision"];
        if (!pr.is_object()) throw input_error("input: precision must be an object");
        if (pr.contains("padic")) in.padic = as_u32(pr["padic"], "precision.padic");
        if (pr.contains("fil")) in.fil = as_u32(pr["fil"], "precision.fil");
        if (pr.contains("pi_truncation"))
            in.pi_truncation = as_u32(pr["pi_truncation"], "precision.pi_truncation");
    }
    if (doc.contains("coefficients")) {
        in.coefficients = doc["coefficients"].get<std::string>();
        if (in.coefficients != "Fp" && in.coefficients != "ZpN" && in.coefficients != "Fp-dual")
            throw input_error("input: coefficients must be \"Fp\", \"ZpN\", or \"Fp-dual\"");
    }
    if (doc.contains("filtration")) {
        in.filtration = doc["filtration"].get<std::string>();
        if (in.filtration != "standard")
            throw input_error("input: only the \"standard\" filtration is supported");
    }
    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_unsigned())
            throw input_error("input: seed must be a nonnegative integer");
        in.seed = doc["seed"].get<std::uint64_t>();
    }
    if (doc.contains("frobenius")) in.frobenius = doc["frobenius"];
    return in;
}

const json& frobenius_entry(const json& frob, int i, int j) {
    if (!frob.is_array() || frob.size() != 3)
        throw input_error("input: frobenius must be a 3x3 array of coefficient lists");
    const json& row = frob[static_cast<std::size_t>(i)];
    if (!row.is_array() || row.size() != 3)
        throw input_error("input: frobenius must be a 3x3 array of coefficient lists");
    const json& entry = row[static_cast<std::size_t>(j)];
    if (!entry.is_array()) throw input_error("input: frobenius entries must be arrays");
    return entry;
}

DDMatR frobenius_as_relem(const PrimeCtx& cx, const json& frob) {
    DDMatR X = dd_zero(cx, r_zero(cx));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const json& entry = frobenius_entry(frob, i, j);
            if (entry.size() > cx.M)
                throw input_error("input: frobenius coefficient list longer than fil");
            RElem r(cx, cx.M);
            for (std::size_t k = 0; k < entry.size(); ++k) {
                if (!entry[k].is_number_unsigned())
                    throw input_error("input: frobenius coefficients must be nonnegative");
                r.c[k] = entry[k].get<std::uint64_t>() % cx.pN;
            }
            X.at(i, j) = r;
        }
    return X;
}

template <class K>
K coefficient_as(const PrimeCtx& cx, const json& c);

template <>
Fp coefficient_as<Fp>(const PrimeCtx& cx, const json& c) {
    if (!c.is_number_unsigned())
        throw input_error("input: Fp coefficients must be nonnegative integers");
    return Fp(cx.p, c.get<std::uint64_t>());
}

template <>
FpDual coefficient_as<FpDual>(const PrimeCtx& cx, const json& c) {
    if (c.is_number_unsigned()) return FpDual(cx.p, c.get<std::uint64_t>(), 0);
    if (c.is_array() && c.size() == 2 && c[0].is_number_unsigned() && c[1].is_number_unsigned())
        return FpDual(cx.p, c[0].get<std::uint64_t>(), c[1].get<std::uint64_t>());
    throw input_error("input: Fp-dual coefficients must be integers or [value, eps] pairs");
}

template <class K>
DDMatS<K> frobenius_as_modp(const PrimeCtx& cx, const json& frob) {
    DDMatS<K> X = dd_zero(cx, Sbar0<K>(cx));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const json& entry = frobenius_entry(frob, i, j);
            if (entry.size() > cx.p)
                throw input_error("input: mod-p frobenius coefficient list longer than p");
            Sbar0<K> x(cx);
            for (std::size_t k = 0; k < entry.size(); ++k)
                x.c[k] = coefficient_as<K>(cx, entry[k]);
            X.at(i, j) = x;
        }
    return X;
}

// ---- JSON helpers --------------------------------------------------------------------

json j_fp(Fp v) { return v.v; }
json j_fpdual(FpDual v) { return json::array({v.a, v.b}); }

json j_sparse_sbar0(const Sbar0<Fp>& x) {
    json out = json::array();
    for (std::uint32_t k = 0; k < x.wnd; ++k)
        if (!x.c[k].is_zero()) out.push_back(json::array({k, x.c[k].v}));
    return out;
}

json j_sparse_poly(const std::vector<Fp>& x) {
    json out = json::array();
    for (std::size_t d = 0; d < x.size(); ++d)
        if (!x[d].is_zero()) out.push_back(json::array({d, x[d].v}));
    return out;
}

json j_gauge_v(const GaugeV& v) {
    return json{{"v10", v.v10}, {"v20", v.v20}, {"v20p", v.v20p}, {"v21", v.v21}};
}

json j_ordinary(const OrdinaryModule<Fp>& m) {
    return json{{"v10", m.v10.v},
                {"v20", m.v20.v},
                {"v20p", m.v20p.v},
                {"v21", m.v21.v},
                {"alpha", json::array({m.alpha[0].v, m.alpha[1].v, m.alpha[2].v})}};
}

OrdinaryModule<Fp> module_from_sweep(const PrimeCtx& cx, const GaugeDataModp<Fp>& d) {
    OrdinaryModule<Fp> m(cx);
    m.v10 = d.v10;
    m.v20 = d.v20;
    m.v20p = d.v20p;
    m.v21 = d.v21;
    m.alpha = d.alpha;
    return m;
}

// ---- text rendering -------------------------------------------------------------------

bool render_inline(const json& j) {
    if (j.is_primitive()) return true;
    if (j.is_array()) {
        for (const json& x : j)
            if (!x.is_primitive()) return false;
        return j.size() <= 12;
    }
    return false;
}

void render_text(const json& j, std::ostringstream& out, int indent) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            out << pad << it.key() << ":";
            if (render_inline(it.value())) {
                out << " " << it.value().dump() << "\n";
            } else {
                out << "\n";
                render_text(it.value(), out, indent + 2);
            }
        }
    } else if (j.is_array()) {
        for (const json& x : j) {
            if (render_inline(x)) {
                out << pad << "- " << x.dump() << "\n";
            } else {
                out << pad << "-\n";
                render_text(x, out, indent + 2);
            }
        }
    } else {
        out << pad << j.dump() << "\n";
    }
}

std::string render(const json& j, const std::string& format) {
    if (format == "machine") return j.dump() + "\n";
    std::ostringstream out;
    render_text(j, out, 0);
    return out.str();
}

// ---- resolved run parameters ----------------------------------------------------------

struct Resolved {
    ProblemInput in;
    PrimeCtx cx;
    std::uint32_t pi_truncation;
};

Resolved resolve(const RunOptions& opt) {
    ProblemInput in = parse_input(opt.input_path);
    if (opt.precision != 0) in.padic = opt.precision;
    if (opt.fil != 0) in.fil = opt.fil;
    if (opt.seed >= 0) in.seed = static_cast<std::uint64_t>(opt.seed);
    PrimeCtx cx(in.prime, in.weights, in.padic, in.fil);
    const std::uint32_t T = in.pi_truncation == 0 ? cx.e * cx.p : in.pi_truncation;
    return Resolved{std::move(in), std::move(cx), T};
}

void require_frobenius(const ProblemInput& in, const char* cmd) {
    if (in.frobenius.is_null())
        throw input_error(std::string(cmd) + ": an input document with a frobenius matrix "
                                             "is required (--input PATH)");
}

json context_json(const Resolved& r) {
    return json{{"prime", r.cx.p},
                {"weights", json::array({r.cx.a[0], r.cx.a[1], r.cx.a[2]})},
                {"precision", json{{"padic", r.cx.N}, {"fil", r.cx.M},
                                   {"pi_truncation", r.pi_truncation}}},
                {"coefficients", r.in.coefficients},
                {"filtration", r.in.filtration},
                {"seed", r.in.seed}};
}

// ---- commands ---------------------------------------------------------------------------

json cmd_validate(const Resolved& r) {
    const PrimeCtx& cx = r.cx;
    json res;
    res["strongly_generic"] = cx.strongly_generic();
    res["brackets"] = json{{"b10", cx.bracket(1, 0)},
                           {"b21", cx.bracket(2, 1)},
                           {"b20", cx.bracket(2, 0)}};
    bool ok = cx.strongly_generic();
    if (!r.in.frobenius.is_null()) {
        bool invertible = false;
        if (r.in.coefficients == "ZpN")
            invertible = dd_is_gl(frobenius_as_relem(cx, r.in.frobenius));
        else if (r.in.coefficients == "Fp")
            invertible = dd_is_gl_s(frobenius_as_modp<Fp>(cx, r.in.frobenius));
        else
            invertible = dd_is_gl_s(frobenius_as_modp<FpDual>(cx, r.in.frobenius));
        res["frobenius_invertible"] = invertible;
        ok = ok && invertible;
    }
    res["ok"] = ok;
    return res;
}

json step_record_json(const StepRecord& s) {
    return json{{"step", s.step},
                {"n", s.n},
                {"parity", s.even ? "even" : "odd"},
                {"v_solved", j_gauge_v(s.v_solved)},
                {"v_renormalized", j_gauge_v(s.v_renormalized)},
                {"t", json::array({s.t[0], s.t[1], s.t[2]})},
                {"lambda", json::array({s.lambda[0], s.lambda[1], s.lambda[2]})},
                {"checks", json{{"congruence", s.congruence_ok},
                                {"step_equation", s.step_equation_ok},
                                {"b_membership", s.b_membership_ok},
                                {"exact_identity", s.exact_identity_ok},
                                {"a_next_membership", s.a_next_membership_ok}}}};
}

json cmd_gauge(const Resolved& r, const RunOptions& opt) {
    require_frobenius(r.in, "gauge");
    if (r.in.coefficients != "ZpN")
        throw input_error("gauge: coefficients must be \"ZpN\"");
    const DDMatR A0 = frobenius_as_relem(r.cx, r.in.frobenius);
    const GaugeResult g = diagonalize(A0, r.cx.N);
    json res;
    res["lambda"] = json::array({g.lambda[0], g.lambda[1], g.lambda[2]});
    res["v"] = j_gauge_v(g.v);
    res["steps"] = g.steps;
    res["exact_fixed_point"] = g.exact_fixed_point;
    res["precision"] = r.cx.N;
    if (opt.transcript) {
        json t = json::array();
        for (const StepRecord& s : g.transcript) t.push_back(step_record_json(s));
        res["transcript"] = t;
    }
    res["ok"] = true;
    return res;
}

json cmd_gauge_modp(const Resolved& r) {
    require_frobenius(r.in, "gauge-modp");
    json res;
    if (r.in.coefficients == "Fp-dual") {
        const auto A0 = frobenius_as_modp<FpDual>(r.cx, r.in.frobenius);
        const ModpSweepResult<FpDual> s = ordinary_form_modp(A0);
        res["v10"] = j_fpdual(s.data.v10);
        res["v20"] = j_fpdual(s.data.v20);
        res["v20p"] = j_fpdual(s.data.v20p);
        res["v21"] = j_fpdual(s.data.v21);
        res["alpha"] = json::array(
            {j_fpdual(s.data.alpha[0]), j_fpdual(s.data.alpha[1]), j_fpdual(s.data.alpha[2])});
        res["sweeps"] = s.sweeps;
    } else {
        DDMatS<Fp> A0;
        bool reduced = false;
        if (r.in.coefficients == "Fp") {
            A0 = frobenius_as_modp<Fp>(r.cx, r.in.frobenius);
        } else {
            A0 = reduce_dd_modp(frobenius_as_relem(r.cx, r.in.frobenius));
            reduced = true;
        }
        const ModpSweepResult<Fp> s = ordinary_form_modp(A0);
        res["v10"] = j_fp(s.data.v10);
        res["v20"] = j_fp(s.data.v20);
        res["v20p"] = j_fp(s.data.v20p);
        res["v21"] = j_fp(s.data.v21);
        res["alpha"] = json::array(
            {j_fp(s.data.alpha[0]), j_fp(s.data.alpha[1]), j_fp(s.data.alpha[2])});
        res["sweeps"] = s.sweeps;
        res["reduced_from_char0"] = reduced;
        if (reduced) {
            // The characteristic-0 diagonalization must agree mod p.
            const GaugeResult g = diagonalize(frobenius_as_relem(r.cx, r.in.frobenius), r.cx.N);
            const std::uint32_t p = r.cx.p;
            const bool agree = g.v.v10 % p == s.data.v10.v && g.v.v20 % p == s.data.v20.v &&
                               g.v.v20p % p == s.data.v20p.v && g.v.v21 % p == s.data.v21.v &&
                               g.lambda[0] % p == s.data.alpha[0].v &&
                               g.lambda[1] % p == s.data.alpha[1].v &&
                               g.lambda[2] % p == s.data.alpha[2].v;
            res["char0_agreement"] = agree;
        }
    }
    res["ok"] = true;
    return res;
}

OrdinaryModule<Fp> pipeline_module(const Resolved& r, const char* cmd) {
    require_frobenius(r.in, cmd);
    if (r.in.coefficients != "Fp")
        throw input_error(std::string(cmd) + ": coefficients must be \"Fp\"");
    const auto A0 = frobenius_as_modp<Fp>(r.cx, r.in.frobenius);
    const ModpSweepResult<Fp> s = ordinary_form_modp(A0);
    return module_from_sweep(r.cx, s.data);
}

json closed_form_json(const MonodromyData<Fp>& nd) {
    return json{{"P10", j_sparse_sbar0(nd.P10)},
                {"P20", j_sparse_sbar0(nd.P20)},
                {"P21", j_sparse_sbar0(nd.P21)}};
}

json cmd_monodromy(const Resolved& r) {
    const OrdinaryModule<Fp> m = pipeline_module(r, "monodromy");
    const bool exists = monodromy_exists(m);
    const MonodromySolutionSet sols = monodromy_bruteforce(m);
    json res;
    res["ordinary"] = j_ordinary(m);
    res["exists"] = exists;
    res["oracle"] = json{{"solvable", sols.solvable}, {"nullity", sols.nullity}};
    res["agreement"] = exists == sols.solvable;
    bool ok = exists == sols.solvable;
    if (exists) {
        const MonodromyData<Fp> nd = monodromy_closed_form(m);
        const bool axioms = verify_monodromy_axioms(m, nd);
        const bool member = monodromy_in_solution_set(sols, nd);
        res["closed_form"] = closed_form_json(nd);
        res["closed_form_axioms"] = axioms;
        res["closed_form_in_solution_set"] = member;
        ok = ok && axioms && member;
    } else {
        res["closed_form"] = nullptr;
    }
    res["ok"] = ok;
    return res;
}

json cmd_etale(const Resolved& r) {
    const OrdinaryModule<Fp> m = pipeline_module(r, "etale");
    const PrimeCtx& cx = r.cx;
    const EtalePhiModule em = to_etale(m, r.pi_truncation);
    const std::uint32_t val = etale_det_valuation(em);
    const IsotypicDescent de = descend_isotypic(em);
    json mat = json::array();
    for (int i = 0; i < 3; ++i) {
        json row = json::array();
        for (int j = 0; j < 3; ++j) row.push_back(j_sparse_poly(de.mat[3 * i + j]));
        mat.push_back(row);
    }
    const std::array<std::uint32_t, 3> expected = {cx.a[0], cx.a[1] + 1, cx.a[2] + 2};
    json res;
    res["ordinary"] = j_ordinary(m);
    res["truncation"] = em.T;
    res["det_valuation"] = val;
    res["det_valuation_expected"] = 3 * cx.e;
    res["descent"] = json{
        {"length", de.len},
        {"diag_exponent",
         json::array({de.diag_exponent[0], de.diag_exponent[1], de.diag_exponent[2]})},
        {"diag_exponent_expected", json::array({expected[0], expected[1], expected[2]})},
        {"matrix", mat}};
    res["ok"] = val == 3 * cx.e && de.diag_exponent == expected;
    return res;
}

json cmd_fl(const Resolved& r) {
    const OrdinaryModule<Fp> m = pipeline_module(r, "fl");
    const PrimeCtx& cx = r.cx;
    const FLModule fl = to_fl(m);
    const bool coherent = fl_pipeline_coherent(m);

    // Functoriality sample: rescale the gauge diagonally and compare.
    std::mt19937_64 rng(r.in.seed);
    const Fp t0(cx.p, 1 + rng() % (cx.p - 1));
    const Fp t1(cx.p, 1 + rng() % (cx.p - 1));
    const Fp t2(cx.p, 1 + rng() % (cx.p - 1));
    OrdinaryModule<Fp> resc = m;
    resc.v10 = t1 * t0.inv() * m.v10;
    resc.v20p = t2 * t0.inv() * m.v20p;
    resc.v21 = t2 * t1.inv() * m.v21;
    const FLModule fl2 = to_fl(resc);
    const bool iso = fl_isomorphic(fl, fl2);
    const bool rightmult = fl_isomorphic_rightmult(fl, fl2);

    json frob = json::array();
    for (int i = 0; i < 3; ++i) {
        json row = json::array();
        for (int j = 0; j < 3; ++j) row.push_back(fl.frob[3 * i + j].v);
        frob.push_back(row);
    }
    json res;
    res["ordinary"] = j_ordinary(m);
    res["hodge_tate"] = json::array({fl.hodge_tate[0], fl.hodge_tate[1], fl.hodge_tate[2]});
    res["frobenius"] = frob;
    res["pipeline_coherent"] = coherent;
    res["rescaling"] = json{{"t", json::array({t0.v, t1.v, t2.v})},
                            {"isomorphic", iso},
                            {"rightmult_isomorphic", rightmult}};
    res["ok"] = coherent && iso;
    return res;
}

json tangent_json(const TangentReport& t) {
    json dirs;
    for (std::size_t d = 0; d < 7; ++d) dirs[deformation_direction_name(d)] = t.direction_ok[d];
    return json{{"dimension", t.dimension}, {"directions", dirs}};
}

json cmd_dims(const Resolved& r) {
    const PrimeCtx& cx = r.cx;
    OrdinaryModule<Fp> base(cx);
    bool base_from_input = false;
    if (!r.in.frobenius.is_null()) {
        base = pipeline_module(r, "dims");
        base_from_input = true;
    } else {
        std::mt19937_64 rng(r.in.seed);
        base = rand_ordinary_module(cx, rng, /*v20_zero=*/true);
    }

    const TangentReport quasi = tangent_dimension(DeformationKind::quasi, base);
    json res;
    res["base"] = j_ordinary(base);
    res["base_from_input"] = base_from_input;
    res["quasi"] = tangent_json(quasi);
    bool ok = quasi.dimension == 7;
    if (base.v20.is_zero()) {
        const TangentReport wm = tangent_dimension(DeformationKind::with_monodromy, base);
        res["with_monodromy"] = tangent_json(wm);
        res["difference"] = quasi.dimension - wm.dimension;
        ok = ok && wm.dimension == 6 && !wm.direction_ok[1] && quasi.dimension - wm.dimension == 1;
    } else {
        res["with_monodromy"] = "skipped: base has v20 != 0";
    }

    const MonodromyLocusReport locus = monodromy_locus_report(cx, r.in.seed);
    json rows = json::array();
    for (const LocusRow& row : locus.rows)
        rows.push_back(json{{"v20", row.v20},
                            {"oracle_solvable", row.oracle_solvable},
                            {"exists_criterion", row.exists_criterion}});
    res["locus"] = json{{"base", j_ordinary(locus.base)},
                        {"admissible", locus.admissible_count},
                        {"total", cx.p},
                        {"rows", rows},
                        {"rows_match_criterion", locus.rows_match_criterion},
                        {"line_closure", locus.line_closure_ok},
                        {"framed_note", locus.framed_note}};
    ok = ok && locus.admissible_count == 1 && locus.rows_match_criterion && locus.line_closure_ok;
    res["ok"] = ok;
    return res;
}

// ---- self-test battery ------------------------------------------------------------------

struct Suite {
    std::string name;
    bool pass = false;
    json detail;
};

json suites_json(const std::vector<Suite>& suites, bool& all_pass) {
    json arr = json::array();
    all_pass = true;
    for (const Suite& s : suites) {
        json row{{"suite", s.name}, {"pass", s.pass}};
        if (!s.detail.is_null()) row["detail"] = s.detail;
        arr.push_back(row);
        all_pass = all_pass && s.pass;
    }
    return arr;
}

template <class F>
void run_suite(std::vector<Suite>& suites, const std::string& name, F&& body) {
    Suite s;
    s.name = name;
    try {
        s.pass = body(s.detail);
    } catch (const std::exception& ex) {
        s.pass = false;
        s.detail = json{{"error", ex.what()}};
    }
    suites.push_back(std::move(s));
}

json cmd_selftest(const Resolved& r) {
    const PrimeCtx& cx = r.cx;
    const std::uint32_t p = cx.p;
    const std::uint64_t seed = r.in.seed;
    std::vector<Suite> suites;

    run_suite(suites, "coefficient-identities", [&](json& detail) {
        const auto fs = factorial_split(p, p, cx.pN);
        detail = json{{"factorial_valuation", fs.first}, {"factorial_unit", fs.second}};
        bool ok = fs.first == 1;
        ok = ok && cx.twist_excess(2, 1, 0) == 1 && cx.twist_excess(1, 2, 0) == 0 &&
             cx.twist_excess(2, 0, 1) == 0;
        ok = ok && cx.bracket(2, 1) + cx.bracket(1, 0) == cx.e + cx.bracket(2, 0);
        return ok;
    });

    run_suite(suites, "frobenius-of-E-is-p-unit", [&](json&) {
        const RElem f = phi_of_E(cx);
        for (std::uint32_t k = 0; k < f.fil_known; ++k)
            if (f.c[k] % p != 0) return false;
        return f.c[0] / p % p != 0;
    });

    run_suite(suites, "adjugate-identity", [&](json&) {
        std::mt19937_64 rng(seed + 1);
        for (int it = 0; it < 5; ++it) {
            const DDMatR X = rand_gl3(cx, rng);
            const DDMatR lhs = dd_mul(X, dd_adjugate(X));
            const RElem det = dd_det(X);
            DDMatR rhs = dd_zero(cx, r_zero(cx));
            for (int i = 0; i < 3; ++i) rhs.at(i, i) = det;
            if (!dd_eq(lhs, rhs)) return false;
        }
        return true;
    });

    run_suite(suites, "gauge-diagonalization", [&](json& detail) {
        std::mt19937_64 rng(seed + 2);
        json steps = json::array();
        for (int it = 0; it < 3; ++it) {
            const DDMatR A0 = rand_gl3_near_diagonal(cx, rng);
            const GaugeResult g = diagonalize(A0, cx.N);
            steps.push_back(g.steps);
            if (g.steps > 20) return false;
        }
        detail = json{{"steps", steps}};
        return true;
    });

    run_suite(suites, "gauge-precision-coherence", [&](json&) {
        std::mt19937_64 rng(seed + 3);
        const DDMatR A0 = rand_gl3_near_diagonal(cx, rng);
        const std::uint32_t n1 = cx.N < 4 ? cx.N : 4;
        const GaugeResult g1 = diagonalize(A0, n1);
        const GaugeResult g2 = diagonalize(A0, cx.N);
        const std::uint64_t q = cx.pclamp(n1);
        for (int i = 0; i < 3; ++i)
            if (g1.lambda[i] % q != g2.lambda[i] % q) return false;
        return g1.v.v10 % q == g2.v.v10 % q && g1.v.v20 % q == g2.v.v20 % q &&
               g1.v.v20p % q == g2.v.v20p % q && g1.v.v21 % q == g2.v.v21 % q;
    });

    run_suite(suites, "modp-reduction-compatibility", [&](json&) {
        std::mt19937_64 rng(seed + 4);
        DDMatR L = dd_zero(cx, r_zero(cx));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j <= i; ++j)
                L.at(i, j) = i == j ? r_add(r_const(cx, rand_unit_modpN(cx, rng)),
                                            r_scal(p, rand_relem(cx, rng)))
                                    : rand_relem(cx, rng);
        const GaugeResult g = diagonalize(L, cx.N);
        const ModpSweepResult<Fp> s = ordinary_form_modp(reduce_dd_modp(L));
        return g.v.v10 % p == s.data.v10.v && g.v.v20 % p == s.data.v20.v &&
               g.v.v20p % p == s.data.v20p.v && g.v.v21 % p == s.data.v21.v &&
               g.lambda[0] % p == s.data.alpha[0].v && g.lambda[1] % p == s.data.alpha[1].v &&
               g.lambda[2] % p == s.data.alpha[2].v;
    });

    run_suite(suites, "monodromy-closed-form", [&](json& detail) {
        OrdinaryModule<Fp> m(cx);
        m.v10 = Fp(p, 1);
        m.v20p = Fp(p, 1);
        m.v21 = Fp(p, 1);
        const MonodromyData<Fp> nd = monodromy_closed_form(m);
        detail = closed_form_json(nd);
        return verify_monodromy_axioms(m, nd);
    });

    run_suite(suites, "monodromy-existence-iff", [&](json&) {
        std::mt19937_64 rng(seed + 5);
        for (int it = 0; it < 20; ++it) {
            const OrdinaryModule<Fp> m = rand_ordinary_module(cx, rng, false);
            const bool exists = monodromy_exists(m);
            const MonodromySolutionSet sols = monodromy_bruteforce(m);
            if (exists != sols.solvable) return false;
            if (exists) {
                const MonodromyData<Fp> nd = monodromy_closed_form(m);
                if (!verify_monodromy_axioms(m, nd)) return false;
                if (!monodromy_in_solution_set(sols, nd)) return false;
            }
        }
        return true;
    });

    run_suite(suites, "monodromy-locus", [&](json& detail) {
        const MonodromyLocusReport rep = monodromy_locus_report(cx, seed + 6);
        detail = json{{"admissible", rep.admissible_count}, {"total", p}};
        return rep.admissible_count == 1 && rep.rows_match_criterion && rep.line_closure_ok;
    });

    run_suite(suites, "comparison-pipeline", [&](json&) {
        std::mt19937_64 rng(seed + 7);
        for (int it = 0; it < 10; ++it) {
            const OrdinaryModule<Fp> m = rand_ordinary_module(cx, rng, true);
            const EtalePhiModule em = to_etale(m, r.pi_truncation);
            if (etale_det_valuation(em) != 3 * cx.e) return false;
            const IsotypicDescent de = descend_isotypic(em);
            const std::array<std::uint32_t, 3> expected = {cx.a[0], cx.a[1] + 1, cx.a[2] + 2};
            if (de.diag_exponent != expected) return false;
            if (!fl_pipeline_coherent(m)) return false;
            const Fp t0(p, 1 + rng() % (p - 1)), t1(p, 1 + rng() % (p - 1)),
                t2(p, 1 + rng() % (p - 1));
            OrdinaryModule<Fp> resc = m;
            resc.v10 = t1 * t0.inv() * m.v10;
            resc.v20p = t2 * t0.inv() * m.v20p;
            resc.v21 = t2 * t1.inv() * m.v21;
            if (!fl_isomorphic(to_fl(m), to_fl(resc))) return false;
        }
        return true;
    });

    run_suite(suites, "tangent-dimensions", [&](json& detail) {
        std::mt19937_64 rng(seed + 8);
        const OrdinaryModule<Fp> base = rand_ordinary_module(cx, rng, true);
        const TangentReport q = tangent_dimension(DeformationKind::quasi, base);
        const TangentReport w = tangent_dimension(DeformationKind::with_monodromy, base);
        detail = json{{"quasi", q.dimension}, {"with_monodromy", w.dimension}};
        return q.dimension == 7 && w.dimension == 6 && !w.direction_ok[1] &&
               q.dimension - w.dimension == 1;
    });

    bool all_pass = true;
    json arr = suites_json(suites, all_pass);
    json res;
    res["suites"] = arr;
    res["documentation"] =
        "the scheme-theoretic statements (the 12-dimensional framed parameter count and "
        "the global modularity consequence) are not desk-reproducible from matrix data; "
        "their checkable shadows are the suites above: gauge convergence and precision "
        "coherence, the monodromy existence criterion against the brute-force oracle, "
        "and the 7/6 tangent dimension counts";
    res["ok"] = all_pass;
    return res;
}

} // namespace

RunResult run_command(const RunOptions& opt) {
    json doc;
    doc["command"] = opt.command;
    int exit_code = 0;
    try {
        const Resolved r = resolve(opt);
        doc["context"] = context_json(r);
        json res;
        if (opt.command == "validate") {
            res = cmd_validate(r);
            if (!res["ok"].get<bool>()) exit_code = 1;
        } else if (opt.command == "gauge") {
            res = cmd_gauge(r, opt);
        } else if (opt.command == "gauge-modp") {
            res = cmd_gauge_modp(r);
        } else if (opt.command == "monodromy") {
            res = cmd_monodromy(r);
        } else if (opt.command == "etale") {
            res = cmd_etale(r);
        } else if (opt.command == "fl") {
            res = cmd_fl(r);
        } else if (opt.command == "dims") {
            res = cmd_dims(r);
        } else if (opt.command == "selftest") {
            res = cmd_selftest(r);
        } else {
            throw input_error("unknown command '" + opt.command + "'");
        }
        if (!res["ok"].is_null() && !res["ok"].get<bool>() && exit_code == 0 &&
            opt.command != "validate")
            exit_code = 2;
        doc["result"] = res;
    } catch (const input_error& ex) {
        doc["error"] = json{{"kind", "input"}, {"what", ex.what()}};
        exit_code = 1;
    } catch (const no_convergence& ex) {
        doc["error"] = json{{"kind", "no_convergence"}, {"what", ex.what()}};
        exit_code = 3;
    } catch (const computation_error& ex) {
        doc["error"] = json{{"kind", "computation"}, {"what", ex.what()}};
        exit_code = 2;
    } catch (const std::exception& ex) {
        doc["error"] = json{{"kind", "computation"}, {"what", ex.what()}};
        exit_code = 2;
    }
    return RunResult{exit_code, render(doc, opt.format)};
}

} // namespace breuil
