#include "qindep/report.hpp"

#include <sstream>

namespace qindep {

std::string decimal_string(mpfr_srcptr x) {
    if (mpfr_zero_p(x)) return "0";
    if (!mpfr_number_p(x)) return mpfr_sgn(x) < 0 ? "-inf" : "inf";
    mpq_class v;
    mpfr_get_q(v.get_mpq_t(), x);
    mpz_class num = v.get_num(), den = v.get_den();
    bool neg = num < 0;
    if (neg) num = -num;
    // den is a power of two for mpfr values
    unsigned long k = mpz_sizeinbase(den.get_mpz_t(), 2) - 1;
    mpz_class pow5;
    mpz_ui_pow_ui(pow5.get_mpz_t(), 5, k);
    std::string s = mpz_class(num * pow5).get_str();
    if (k > 0) {
        if (s.size() <= k) s.insert(0, k + 1 - s.size(), '0');
        s.insert(s.size() - k, ".");
        size_t last = s.find_last_not_of('0');
        if (s[last] == '.') --last;
        s.erase(last + 1);
    }
    return neg ? "-" + s : s;
}

std::string rational_string(const mpq_class& v) {
    return v.get_str();
}

Json ball_json(const RealBall& b) {
    return Json{{"mid", decimal_string(b.mid())}, {"rad", decimal_string(b.rad())}};
}

Json ball_json(const ComplexBall& b) {
    if (b.certainly_real()) return ball_json(b.re());
    return Json{{"re", ball_json(b.re())}, {"im", ball_json(b.im())}};
}

Json element_json(const FieldElement& a) {
    Json coeffs = Json::array();
    size_t n = a.field() ? a.field()->degree() : 1;
    for (size_t i = 0; i < n; ++i) {
        mpq_class c = i < a.coeffs().size() ? a.coeffs()[i] : mpq_class(0);
        coeffs.push_back(rational_string(c));
    }
    return coeffs;
}

Json verdict_json(const HypothesisVerdict& v) {
    Json checks = Json::array();
    for (const auto& c : v.checks)
        checks.push_back(Json{{"name", c.name},
                              {"status", check_status_name(c.status)},
                              {"evidence", c.evidence}});
    return Json{{"theorem", theorem_id_name(v.theorem_id)},
                {"satisfied", v.satisfied},
                {"checks", checks},
                {"margin", ball_json(v.margin)}};
}

Json trace_json(const XNTrace& t) {
    Json conj = Json::array();
    for (const auto& c : t.conj_enclosures) conj.push_back(ball_json(c));
    Json bc = Json::array();
    for (const auto& b : t.bound_conj) bc.push_back(ball_json(b));
    return Json{{"N", t.N},
                {"xn", element_json(t.xn_exact)},
                {"norm", rational_string(t.norm)},
                {"conjugates", conj},
                {"bound_main", ball_json(t.bound_main)},
                {"bound_conjugates", bc}};
}

Json dichotomy_json(const DichotomyReport& r) {
    Json entries = Json::array();
    for (const auto& e : r.entries)
        entries.push_back(Json{{"N", e.N},
                               {"norm", rational_string(e.norm)},
                               {"forced_zero", e.forced_zero}});
    return Json{{"classification", dichotomy_class_name(r.classification)},
                {"entries", entries}};
}

Json elimination_json(const std::vector<EliminationTerm>& terms) {
    Json out = Json::array();
    for (const auto& t : terms)
        out.push_back(Json{{"progression", t.j},
                           {"offset", t.l},
                           {"leading", t.leading},
                           {"value_coeffs", element_json(t.value_exact)},
                           {"weighted_coeffs", element_json(t.weighted_exact)},
                           {"value", ball_json(t.value)},
                           {"envelope", ball_json(t.envelope)}});
    return out;
}

Json relation_json(const RelationResult& r) {
    Json j;
    j["status"] = r.status == RelationStatus::RelationFound ? "relation_found"
                                                            : "none_below_height";
    Json coeffs = Json::array();
    for (const auto& c : r.coefficients) coeffs.push_back(c.get_str());
    j["coefficients"] = coeffs;
    if (!r.field_coefficients.empty()) {
        Json fc = Json::array();
        for (const auto& row : r.field_coefficients) {
            Json jr = Json::array();
            for (const auto& c : row) jr.push_back(c.get_str());
            fc.push_back(jr);
        }
        j["field_coefficients"] = fc;
    }
    j["residual"] = ball_json(r.residual);
    j["certified_height_bound"] = r.certified_height_bound.get_str();
    return j;
}

Json make_report(const std::string& command, Json inputs, Json result,
                 unsigned precision_bits) {
    return Json{{"schema", 1},
                {"command", command},
                {"inputs", std::move(inputs)},
                {"result", std::move(result)},
                {"precision_used", precision_bits}};
}

std::string render_json(const Json& j) {
    return j.dump() + "\n";
}

namespace {

void render_value(std::ostream& os, const Json& j, const std::string& indent) {
    if (j.is_object()) {
        if (j.empty()) {
            os << "{}\n";
            return;
        }
        size_t width = 0;
        for (auto it = j.begin(); it != j.end(); ++it)
            width = std::max(width, it.key().size());
        for (auto it = j.begin(); it != j.end(); ++it) {
            os << indent << it.key() << std::string(width - it.key().size(), ' ')
               << "  ";
            if (it.value().is_structured() && !it.value().empty()) {
                os << "\n";
                render_value(os, it.value(), indent + "  ");
            } else {
                render_value(os, it.value(), "");
            }
        }
    } else if (j.is_array()) {
        if (j.empty()) {
            os << "[]\n";
            return;
        }
        for (size_t i = 0; i < j.size(); ++i) {
            os << indent << "- ";
            if (j[i].is_structured() && !j[i].empty()) {
                os << "\n";
                render_value(os, j[i], indent + "  ");
            } else {
                render_value(os, j[i], "");
            }
        }
    } else if (j.is_string()) {
        os << j.get<std::string>() << "\n";
    } else {
        os << j.dump() << "\n";
    }
}

} // namespace

std::string render_text(const Json& report) {
    std::ostringstream os;
    render_value(os, report, "");
    return os.str();
}

} // namespace qindep
