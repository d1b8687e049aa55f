/* Canonical JSON encodings of polynomials over Q(w). */
#include "tpt/mpoly.hpp"

#include "json.hpp"

namespace tpt {

std::string mpoly_to_json(const MPoly<QOmega>& f) {
    nlohmann::json j;
    j["vars"] = f.vars();
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [e, c] : f.terms()) {
        nlohmann::json t;
        t["coef"] = to_string(c);
        t["exp"] = e;
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    return j.dump();
}

MPoly<QOmega> mpoly_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("polynomial JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("vars") || !j.contains("terms"))
        throw parse_error("polynomial JSON: need \"vars\" and \"terms\"");
    std::vector<std::string> vars = j["vars"].get<std::vector<std::string>>();
    MPoly<QOmega> f(vars);
    for (const auto& t : j["terms"]) {
        if (!t.contains("coef") || !t.contains("exp"))
            throw parse_error("polynomial JSON: term needs \"coef\" and \"exp\"");
        std::vector<unsigned> e = t["exp"].get<std::vector<unsigned>>();
        if (e.size() != vars.size()) throw parse_error("polynomial JSON: exponent arity");
        f.set_term(std::move(e), parse_qomega(t["coef"].get<std::string>()));
    }
    return f;
}

std::string upoly_to_json(const UPoly<QOmega>& p) {
    nlohmann::json cs = nlohmann::json::array();
    for (long i = 0; i <= p.degree(); ++i)
        cs.push_back(to_string(p[static_cast<std::size_t>(i)]));
    return cs.dump();
}

UPoly<QOmega> upoly_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("polynomial JSON: ") + e.what());
    }
    if (!j.is_array()) throw parse_error("polynomial JSON: need a coefficient array");
    std::vector<QOmega> cs;
    for (const auto& c : j) cs.push_back(parse_qomega(c.get<std::string>()));
    return UPoly<QOmega>(std::move(cs));
}

} // namespace tpt
