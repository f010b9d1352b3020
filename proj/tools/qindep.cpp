#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "qindep/proofkit.hpp"
#include "qindep/qseries.hpp"
#include "qindep/relations.hpp"
#include "qindep/report.hpp"
#include "qindep/theorems.hpp"

using namespace qindep;

namespace {

unsigned default_prec() {
    if (const char* e = std::getenv("QINDEP_DEFAULT_PREC")) {
        long v = std::strtol(e, nullptr, 10);
        if (v >= 32) return static_cast<unsigned>(v);
    }
    return 128;
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

// split at separators outside brackets
std::vector<std::string> split_top(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : s) {
        if (c == '[') ++depth;
        if (c == ']') --depth;
        if (c == sep && depth == 0) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

// strips one outer bracket pair when it encloses the whole string
std::string strip_outer(const std::string& in) {
    std::string s = trim(in);
    if (s.size() < 2 || s.front() != '[') return s;
    int depth = 0;
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '[') ++depth;
        if (s[i] == ']') {
            --depth;
            if (depth == 0) return i + 1 == s.size() ? trim(s.substr(1, s.size() - 2)) : s;
        }
    }
    return s;
}

FieldPtr make_field(const std::string& poly, const std::string& root, Precision prec) {
    if (poly.empty()) throw UsageError("a field polynomial (--q) is required");
    ZPoly p = parse_poly(poly);
    if (degree(p) < 1) {
        if (degree(p) < 0) throw UsageError("field polynomial must be nonzero");
        p = ZPoly{-p[0], 1};  // bare integer m means q = m
    }
    RootSelector sel = RootSelector::max_real();
    if (root != "max-real") {
        std::string r = root;
        if (r.rfind("index:", 0) == 0) r = r.substr(6);
        char* end = nullptr;
        long k = std::strtol(r.c_str(), &end, 10);
        if (!end || *end != '\0' || k < 1)
            throw UsageError("--root must be 'max-real' or a 1-based root index");
        sel = RootSelector::at(static_cast<size_t>(k));
    }
    return field_create(p, sel, prec);
}

FieldElement parse_element(const FieldPtr& f, const std::string& s) {
    auto v = parse_rational_vector(s);
    if (v.size() > f->degree())
        throw UsageError("element '" + s + "' has more coordinates than the field degree");
    return FieldElement(f, QPoly(v.begin(), v.end()));
}

// "[e1,e2,...]"; each element a rational or a bracketed power-basis list
std::vector<FieldElement> parse_elements(const FieldPtr& f, const std::string& s) {
    std::string body = strip_outer(s);
    if (body.empty()) return {};
    std::vector<FieldElement> out;
    for (const auto& piece : split_top(body, ',')) out.push_back(parse_element(f, piece));
    return out;
}

// semicolon-separated rows; row 0 is the constant coefficient
RelationCoeffs parse_lambda(const FieldPtr& f, const std::string& s) {
    auto rows = split_top(s, ';');
    if (rows.empty() || rows[0].empty())
        throw UsageError("--lambda needs at least the constant row");
    RelationCoeffs c;
    c.lambda0 = parse_element(f, rows[0]);
    for (size_t r = 1; r < rows.size(); ++r) {
        std::vector<FieldElement> row;
        for (const auto& piece : split_top(rows[r], ','))
            row.push_back(parse_element(f, piece));
        c.lambdas.push_back(std::move(row));
    }
    return c;
}

std::vector<unsigned long> parse_ulong_list(const std::string& s) {
    std::vector<unsigned long> out;
    for (const auto& piece : split_top(strip_outer(s), ',')) {
        char* end = nullptr;
        unsigned long v = std::strtoul(piece.c_str(), &end, 10);
        if (!end || *end != '\0') throw UsageError("expected an integer list, got '" + s + "'");
        out.push_back(v);
    }
    return out;
}

std::pair<unsigned long, unsigned long> parse_range(const std::string& s) {
    size_t dots = s.find("..");
    char* end = nullptr;
    if (dots == std::string::npos) {
        unsigned long n = std::strtoul(s.c_str(), &end, 10);
        if (!end || *end != '\0') throw UsageError("--n expects N or LO..HI");
        return {n, n};
    }
    unsigned long lo = std::strtoul(s.substr(0, dots).c_str(), &end, 10);
    unsigned long hi = std::strtoul(s.substr(dots + 2).c_str(), &end, 10);
    if (!end || *end != '\0' || hi < lo) throw UsageError("--n expects N or LO..HI");
    return {lo, hi};
}

/* Ties each option to a key of the report "inputs" block, so a report can be
 * replayed through --config and defaults are always recorded. */
class Binder {
  public:
    void attach(CLI::App* cmd) {
        cmd->add_option("--config", config_path_,
                        "JSON file with the same shape as the report inputs block");
    }

    void bind(CLI::Option* opt, const std::string& key, std::string* ref) {
        setters_.push_back([opt, key, ref](const Json& j) {
            if (opt->count() == 0 && j.contains(key)) *ref = j.at(key).get<std::string>();
        });
        getters_.emplace_back(key, [ref] { return Json(*ref); });
    }
    void bind(CLI::Option* opt, const std::string& key, unsigned* ref) {
        setters_.push_back([opt, key, ref](const Json& j) {
            if (opt->count() == 0 && j.contains(key)) *ref = j.at(key).get<unsigned>();
        });
        getters_.emplace_back(key, [ref] { return Json(*ref); });
    }
    void bind_json(CLI::Option* opt, const std::string& key, Json* ref) {
        setters_.push_back([opt, key, ref](const Json& j) {
            if (opt->count() == 0 && j.contains(key)) *ref = j.at(key);
        });
        getters_.emplace_back(key, [ref] { return *ref; });
    }

    void apply_config() {
        if (config_path_.empty()) return;
        std::ifstream f(config_path_);
        if (!f) throw UsageError("cannot open config file '" + config_path_ + "'");
        Json j = Json::parse(f, nullptr, true, true);
        for (const auto& s : setters_) s(j);
    }

    Json inputs() const {
        Json j;
        for (const auto& [k, g] : getters_) j[k] = g();
        return j;
    }

  private:
    std::string config_path_;
    std::vector<std::function<void(const Json&)>> setters_;
    std::vector<std::pair<std::string, std::function<Json()>>> getters_;
};

int emit(const std::string& command, const Binder& b, Json result, unsigned prec_bits,
         const std::string& output, int code = 0) {
    Json report = make_report(command, b.inputs(), std::move(result), prec_bits);
    if (output == "text")
        std::cout << render_text(report);
    else
        std::cout << render_json(report);
    return code;
}

struct Common {
    std::string q, root = "max-real", output = "json";
    unsigned prec = default_prec();

    void attach(CLI::App* cmd, Binder& b, bool with_field = true) {
        b.attach(cmd);
        if (with_field) {
            b.bind(cmd->add_option("--q", q, "field polynomial for q, or a bare integer"),
                   "q", &q);
            b.bind(cmd->add_option("--root", root, "max-real (default) or a 1-based index"),
                   "root", &root);
        }
        b.bind(cmd->add_option("--prec", prec, "working precision in bits"), "prec", &prec);
        b.bind(cmd->add_option("--output", output, "json (default) or text"), "output",
               &output);
    }
    FieldPtr field() const { return make_field(q, root, Precision(prec)); }
};

// field

struct FieldCmd {
    Common common;
    Binder binder;

    void attach(CLI::App* cmd) {
        binder.bind(cmd->add_option("--poly", common.q, "defining integer polynomial"),
                    "poly", &common.q);
        binder.bind(cmd->add_option("--root", common.root,
                                    "max-real (default) or a 1-based index"),
                    "root", &common.root);
        binder.attach(cmd);
        binder.bind(cmd->add_option("--prec", common.prec, "working precision in bits"),
                    "prec", &common.prec);
        binder.bind(cmd->add_option("--output", common.output, "json (default) or text"),
                    "output", &common.output);
    }

    int run() {
        binder.apply_config();
        Precision prec(common.prec);
        auto f = common.field();
        Json result;
        result["degree"] = f->degree();
        result["min_poly"] = poly_to_string(f->min_poly());
        Json roots = Json::array();
        for (const auto& r : f->roots_at(prec)) roots.push_back(ball_json(r));
        result["roots"] = roots;
        int code = 0;
        try {
            auto pv = pv_check(f, prec);
            Json moduli = Json::array();
            for (const auto& m : pv.conjugate_moduli) moduli.push_back(ball_json(m));
            result["pv"] = Json{{"is_pv", pv.is_pv},
                                {"sign", pv.sign_convention == PVReport::Plus ? "plus" : "minus"},
                                {"dominant_root", ball_json(pv.dominant_root)},
                                {"conjugate_moduli", moduli}};
        } catch (const Undecidable& e) {
            result["pv"] = Json{{"is_pv", "undecided"}, {"detail", e.what()}};
            code = 2;
        }
        return emit("field", binder, result, common.prec, common.output, code);
    }
};

// eval

struct EvalCmd {
    Common common;
    Binder binder;
    std::string fn, x = "1", poly_p;
    unsigned m = 1, derivative = 0;

    void attach(CLI::App* cmd) {
        common.attach(cmd, binder);
        binder.bind(cmd->add_option("--fn", fn, "eq | lq | zetaq1 | eqp | tq | eqm"), "fn",
                    &fn);
        binder.bind(cmd->add_option("--x", x, "argument: rational or [a0,a1,...]"), "x", &x);
        binder.bind(cmd->add_option("--poly-p", poly_p, "denominator polynomial (eqp)"),
                    "poly_p", &poly_p);
        binder.bind(cmd->add_option("--m", m, "progression modulus (eqm)"), "m", &m);
        binder.bind(cmd->add_option("--derivative", derivative, "termwise derivative order"),
                    "derivative", &derivative);
    }

    SeriesSpec spec(const FieldPtr& f) const {
        SeriesSpec s = SeriesSpec::exact(series_kind_from_name(fn), f, parse_element(f, x));
        s.derivative_order = derivative;
        s.progression = m;
        if (s.kind == SeriesKind::EqP) {
            if (poly_p.empty()) throw UsageError("eqp needs --poly-p");
            s.P = parse_poly(poly_p);
        }
        return s;
    }

    int run() {
        binder.apply_config();
        if (fn.empty()) throw UsageError("--fn is required");
        Precision prec(common.prec);
        auto f = common.field();
        SeriesSpec s = spec(f);
        Json result;
        result["value"] = ball_json(eval_series(s, prec));
        result["truncation_terms"] = choose_truncation(s, common.prec, prec);
        return emit("eval", binder, result, common.prec, common.output);
    }
};

// height

struct HeightCmd {
    Common common;
    Binder binder;
    std::string alpha;

    void attach(CLI::App* cmd) {
        common.attach(cmd, binder);
        binder.bind(cmd->add_option("--alpha", alpha, "field element: rational or [a0,a1,...]"),
                    "alpha", &alpha);
    }

    int run() {
        binder.apply_config();
        if (alpha.empty()) throw UsageError("--alpha is required");
        Precision prec(common.prec);
        auto f = common.field();
        FieldElement a = parse_element(f, alpha);
        Json result;
        result["height"] = ball_json(q_height(a, prec));
        result["norm"] = rational_string(norm_exact(a));
        result["algebraic_integer"] = is_algebraic_integer(a);
        Json mp = Json::array();
        for (const auto& c : minimal_polynomial(a)) mp.push_back(rational_string(c));
        result["min_poly"] = mp;
        return emit("height", binder, result, common.prec, common.output);
    }
};

// check

struct CheckCmd {
    Common common;
    Binder binder;
    std::string theorem, alphas, alpha, poly_p, a_list;
    unsigned derivative_bound = 0;

    void attach(CLI::App* cmd) {
        common.attach(cmd, binder);
        binder.bind(cmd->add_option("--theorem", theorem,
                                    "thm1 | cor1_2 | cor1_3 | cor1_5 | thm1_6"),
                    "theorem", &theorem);
        binder.bind(cmd->add_option("--alphas", alphas, "list of field elements [e1,e2,...]"),
                    "alphas", &alphas);
        binder.bind(cmd->add_option("--alpha", alpha, "single field element"), "alpha",
                    &alpha);
        binder.bind(cmd->add_option("--poly-p", poly_p, "denominator polynomial (thm1)"),
                    "poly_p", &poly_p);
        binder.bind(cmd->add_option("--a-list", a_list, "progressions a_1<...<a_k (thm1_6)"),
                    "a_list", &a_list);
        binder.bind(cmd->add_option("--derivative-bound", derivative_bound,
                                    "highest derivative order included"),
                    "derivative_bound", &derivative_bound);
    }

    HypothesisVerdict verdict() {
        Precision prec(common.prec);
        auto f = common.field();
        auto one_alpha = [&] {
            if (!alpha.empty()) return parse_element(f, alpha);
            if (alphas.empty()) throw UsageError("--alpha is required");
            auto v = parse_elements(f, alphas);
            if (v.size() != 1) throw UsageError("exactly one alpha expected");
            return v[0];
        };
        if (theorem == "thm1") {
            if (poly_p.empty()) throw UsageError("thm1 needs --poly-p");
            return check_thm1(f, parse_poly(poly_p), parse_elements(f, alphas),
                              derivative_bound, prec);
        }
        if (theorem == "cor1_2")
            return check_cor_eq(f, parse_elements(f, alphas), derivative_bound, prec);
        if (theorem == "cor1_3")
            return check_cor_irrational(f, one_alpha(), prec, TheoremId::Cor1_3);
        if (theorem == "cor1_5")
            return check_cor_irrational(f, one_alpha(), prec, TheoremId::Cor1_5);
        if (theorem == "thm1_6") {
            if (a_list.empty()) throw UsageError("thm1_6 needs --a-list");
            return check_thm2(f, one_alpha(), parse_ulong_list(a_list), prec);
        }
        throw UsageError("unknown theorem '" + theorem + "'");
    }

    int run() {
        binder.apply_config();
        HypothesisVerdict v = verdict();
        int code = 0;
        if (!v.satisfied) {
            code = 3;
            for (const auto& c : v.checks)
                if (c.status == CheckStatus::Undecided) code = 2;
        }
        return emit("check", binder, verdict_json(v), common.prec, common.output, code);
    }
};

// xn-trace

struct TraceCmd {
    Common common;
    Binder binder;
    std::string theorem = "1", alphas, alpha, poly_p = "x-1", a_list, lambda, n_range;

    void attach(CLI::App* cmd) {
        common.attach(cmd, binder);
        binder.bind(cmd->add_option("--theorem", theorem, "1 or 1_6"), "theorem", &theorem);
        binder.bind(cmd->add_option("--alphas", alphas, "list of field elements (theorem 1)"),
                    "alphas", &alphas);
        binder.bind(cmd->add_option("--alpha", alpha, "field element (theorem 1_6)"), "alpha",
                    &alpha);
        binder.bind(cmd->add_option("--poly-p", poly_p, "denominator polynomial (theorem 1)"),
                    "poly_p", &poly_p);
        binder.bind(cmd->add_option("--a-list", a_list, "progressions (theorem 1_6)"),
                    "a_list", &a_list);
        binder.bind(cmd->add_option("--lambda", lambda,
                                    "relation coefficients: rows 'l0;l_1,...;l_2,...'"),
                    "lambda", &lambda);
        binder.bind(cmd->add_option("--n", n_range, "N or LO..HI"), "n", &n_range);
    }

    int run() {
        binder.apply_config();
        if (lambda.empty()) throw UsageError("--lambda is required");
        if (n_range.empty()) throw UsageError("--n is required");
        Precision prec(common.prec);
        auto f = common.field();
        RelationCoeffs coeffs = parse_lambda(f, lambda);
        auto [lo, hi] = parse_range(n_range);

        std::function<XNTrace(unsigned long)> source;
        if (theorem == "1" || theorem == "thm1") {
            auto as = parse_elements(f, alphas);
            ZPoly P = parse_poly(poly_p);
            source = [=](unsigned long N) { return compute_xn_thm1(f, P, as, coeffs, N, prec); };
        } else if (theorem == "1_6" || theorem == "thm1_6") {
            if (alpha.empty() || a_list.empty())
                throw UsageError("theorem 1_6 needs --alpha and --a-list");
            FieldElement a = parse_element(f, alpha);
            ProgressionSetup setup = ProgressionSetup::create(parse_ulong_list(a_list));
            source = [=](unsigned long N) { return compute_xn_thm2(f, a, setup, coeffs, N, prec); };
        } else {
            throw UsageError("--theorem must be 1 or 1_6");
        }

        std::vector<XNTrace> traces;
        Json rows = Json::array();
        for (unsigned long N = lo; N <= hi; ++N) {
            traces.push_back(source(N));
            rows.push_back(trace_json(traces.back()));
        }
        auto cached = [&](unsigned long N) { return traces[N - lo]; };
        DichotomyReport dich = norm_dichotomy_scan(cached, lo, hi);
        Json result;
        result["rows"] = rows;
        result["dichotomy"] = dichotomy_json(dich);
        return emit("xn-trace", binder, result, common.prec, common.output);
    }
};

// eliminate

struct EliminateCmd {
    Common common;
    Binder binder;
    std::string alpha, a_list, lambda, n_str;

    void attach(CLI::App* cmd) {
        common.attach(cmd, binder);
        binder.bind(cmd->add_option("--alpha", alpha, "field element"), "alpha", &alpha);
        binder.bind(cmd->add_option("--a-list", a_list, "progressions a_1<...<a_k"), "a_list",
                    &a_list);
        binder.bind(cmd->add_option("--lambda", lambda, "relation coefficient rows"),
                    "lambda", &lambda);
        binder.bind(cmd->add_option("--n", n_str, "truncation index N"), "n", &n_str);
    }

    int run() {
        binder.apply_config();
        if (alpha.empty() || a_list.empty() || lambda.empty() || n_str.empty())
            throw UsageError("eliminate needs --alpha, --a-list, --lambda and --n");
        Precision prec(common.prec);
        auto f = common.field();
        auto [lo, hi] = parse_range(n_str);
        if (lo != hi) throw UsageError("eliminate takes a single --n");
        ProgressionSetup setup = ProgressionSetup::create(parse_ulong_list(a_list));
        auto terms = elimination_terms(f, parse_element(f, alpha), setup,
                                       parse_lambda(f, lambda), lo, prec);
        Json result;
        result["terms"] = elimination_json(terms);
        result["delta"] = setup.delta;
        return emit("eliminate", binder, result, common.prec, common.output);
    }
};

// relations

struct RelationsCmd {
    Common common;  // no field flags; the values spec carries the field
    Binder binder;
    std::string values_spec_path, max_height = "1000000";
    Json values_spec;

    void attach(CLI::App* cmd) {
        common.attach(cmd, binder, false);
        binder.bind_json(cmd->add_option("--values-spec", values_spec_path,
                                         "JSON file describing the values"),
                         "values_spec", &values_spec);
        binder.bind(cmd->add_option("--max-height", max_height, "largest coefficient height"),
                    "max_height", &max_height);
    }

    static std::vector<ComplexBall> evaluate(const Json& spec, const FieldPtr& f,
                                             Precision prec) {
        std::vector<ComplexBall> out;
        for (const auto& v : spec.at("values")) {
            std::string kind = v.value("kind", "series");
            if (kind == "constant") {
                out.push_back(embed(parse_element(f, v.at("value").get<std::string>()), 1,
                                    prec));
                continue;
            }
            SeriesSpec s = SeriesSpec::exact(
                series_kind_from_name(v.at("fn").get<std::string>()), f,
                parse_element(f, v.value("x", "1")));
            s.derivative_order = v.value("derivative", 0u);
            s.progression = v.value("m", 1u);
            if (s.kind == SeriesKind::EqP) s.P = parse_poly(v.at("poly_p").get<std::string>());
            out.push_back(eval_series(s, prec));
        }
        return out;
    }

    int run() {
        binder.apply_config();
        if (!values_spec_path.empty()) {
            std::ifstream in(values_spec_path);
            if (!in) throw UsageError("cannot open '" + values_spec_path + "'");
            values_spec = Json::parse(in, nullptr, true, true);
        }
        if (values_spec.is_null() || !values_spec.contains("values"))
            throw UsageError("relations needs --values-spec or --config with a values block");
        Precision prec(common.prec);
        const Json& fs = values_spec.at("field");
        FieldPtr f = make_field(fs.at("poly").get<std::string>(),
                                fs.value("root", "max-real"), prec);
        RelationQuery query;
        query.precision = prec;
        query.values = evaluate(values_spec, f, prec);
        if (values_spec.value("field_mode", false)) query.field = f;
        query.max_height = mpz_class(max_height);
        Json spec_copy = values_spec;
        query.reevaluate = [spec_copy, f](Precision p) { return evaluate(spec_copy, f, p); };
        RelationResult r = find_relation(query);
        return emit("relations", binder, relation_json(r), common.prec, common.output);
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"certified q-series evaluation, hypothesis checking and relation search"};
    app.require_subcommand(1);

    FieldCmd field_cmd;
    EvalCmd eval_cmd;
    HeightCmd height_cmd;
    CheckCmd check_cmd;
    TraceCmd trace_cmd;
    EliminateCmd eliminate_cmd;
    RelationsCmd relations_cmd;

    auto* c_field = app.add_subcommand("field", "create a field and certify its roots");
    field_cmd.attach(c_field);
    auto* c_eval = app.add_subcommand("eval", "evaluate a q-series with a certified tail");
    eval_cmd.attach(c_eval);
    auto* c_height = app.add_subcommand("height", "q-relative height, norm and integrality");
    height_cmd.attach(c_height);
    auto* c_check = app.add_subcommand("check", "verify independence hypotheses");
    check_cmd.attach(c_check);
    auto* c_trace = app.add_subcommand("xn-trace", "exact truncation sequence and norms");
    trace_cmd.attach(c_trace);
    auto* c_elim = app.add_subcommand("eliminate", "factored elimination terms");
    eliminate_cmd.attach(c_elim);
    auto* c_rel = app.add_subcommand("relations", "integer relation search with certificate");
    relations_cmd.attach(c_rel);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (app.got_subcommand(c_field)) return field_cmd.run();
        if (app.got_subcommand(c_eval)) return eval_cmd.run();
        if (app.got_subcommand(c_height)) return height_cmd.run();
        if (app.got_subcommand(c_check)) return check_cmd.run();
        if (app.got_subcommand(c_trace)) return trace_cmd.run();
        if (app.got_subcommand(c_elim)) return eliminate_cmd.run();
        if (app.got_subcommand(c_rel)) return relations_cmd.run();
    } catch (const PrecisionExhausted& e) {
        std::cerr << "undecided: " << e.what() << "\n";
        return 2;
    } catch (const Undecidable& e) {
        std::cerr << "undecided: " << e.what() << "\n";
        return 2;
    } catch (const Json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
