/* Sparse multivariate polynomials: an ordered variable list plus a map from
 * exponent vectors to nonzero coefficients.  The map's lexicographic key
 * order doubles as the canonical term order for printing and JSON.  Binary
 * operations align variable lists by name automatically. */
#pragma once

#include <map>
#include <string>
#include <vector>

#include "tpt/upoly.hpp"

namespace tpt {

template <class K>
class MPoly {
public:
    using Exp = std::vector<unsigned>;

    MPoly() = default;
    MPoly(long c) {
        if (!(K(c) == K(0))) terms_[Exp{}] = K(c);
    }
    explicit MPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

    static MPoly constant(std::vector<std::string> vars, K c) {
        MPoly p(std::move(vars));
        if (!(c == K(0))) p.terms_[Exp(p.vars_.size(), 0)] = std::move(c);
        return p;
    }
    static MPoly variable(std::vector<std::string> vars, const std::string& name) {
        MPoly p(std::move(vars));
        Exp e(p.vars_.size(), 0);
        e.at(p.index_of(name)) = 1;
        p.terms_[std::move(e)] = K(1);
        return p;
    }

    const std::vector<std::string>& vars() const { return vars_; }
    const std::map<Exp, K>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    std::size_t index_of(const std::string& name) const {
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i] == name) return i;
        throw invariant_error("MPoly: unknown variable " + name);
    }
    bool has_var(const std::string& name) const {
        for (const auto& v : vars_)
            if (v == name) return true;
        return false;
    }

    void set_term(Exp e, K c) {
        if (e.size() != vars_.size()) throw invariant_error("MPoly: exponent arity mismatch");
        if (c == K(0))
            terms_.erase(e);
        else
            terms_[std::move(e)] = std::move(c);
    }
    K coeff(const Exp& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? K(0) : it->second;
    }

    long total_degree() const {
        long d = -1;
        for (const auto& [e, c] : terms_) {
            long s = 0;
            for (unsigned x : e) s += x;
            d = std::max(d, s);
        }
        return d;
    }
    long degree_in(const std::string& name) const {
        std::size_t i = index_of(name);
        long d = is_zero() ? -1 : 0;
        for (const auto& [e, c] : terms_) d = std::max(d, static_cast<long>(e[i]));
        return d;
    }
    bool is_homogeneous() const {
        long d = -1;
        for (const auto& [e, c] : terms_) {
            long s = 0;
            for (unsigned x : e) s += x;
            if (d < 0) d = s;
            if (s != d) return false;
        }
        return true;
    }

    /// Re-express on a variable list that contains every current variable.
    MPoly extended_to(const std::vector<std::string>& nv) const {
        MPoly out(nv);
        std::vector<std::size_t> pos(vars_.size());
        for (std::size_t i = 0; i < vars_.size(); ++i) pos[i] = out.index_of(vars_[i]);
        for (const auto& [e, c] : terms_) {
            Exp ne(nv.size(), 0);
            for (std::size_t i = 0; i < e.size(); ++i) ne[pos[i]] = e[i];
            out.terms_[std::move(ne)] = c;
        }
        return out;
    }

    static std::vector<std::string> merge_vars(const std::vector<std::string>& a,
                                               const std::vector<std::string>& b) {
        std::vector<std::string> out = a;
        for (const auto& v : b) {
            bool seen = false;
            for (const auto& w : out) seen = seen || w == v;
            if (!seen) out.push_back(v);
        }
        return out;
    }

    bool operator==(const MPoly& o) const {
        auto nv = merge_vars(vars_, o.vars_);
        return extended_to(nv).terms_ == o.extended_to(nv).terms_;
    }
    bool operator!=(const MPoly& o) const { return !(*this == o); }

    MPoly operator-() const {
        MPoly r = *this;
        for (auto& [e, c] : r.terms_) c = -c;
        return r;
    }
    MPoly operator+(const MPoly& o) const {
        auto nv = merge_vars(vars_, o.vars_);
        MPoly a = extended_to(nv), b = o.extended_to(nv);
        for (const auto& [e, c] : b.terms_) {
            auto it = a.terms_.find(e);
            if (it == a.terms_.end()) {
                a.terms_[e] = c;
            } else {
                it->second = it->second + c;
                if (it->second == K(0)) a.terms_.erase(it);
            }
        }
        return a;
    }
    MPoly operator-(const MPoly& o) const { return *this + (-o); }
    MPoly operator*(const MPoly& o) const {
        auto nv = merge_vars(vars_, o.vars_);
        MPoly a = extended_to(nv), b = o.extended_to(nv), r(nv);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                Exp e(nv.size());
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                K prod = ca * cb;
                auto it = r.terms_.find(e);
                if (it == r.terms_.end()) {
                    if (!(prod == K(0))) r.terms_[std::move(e)] = std::move(prod);
                } else {
                    it->second = it->second + prod;
                    if (it->second == K(0)) r.terms_.erase(it);
                }
            }
        return r;
    }
    MPoly operator*(const K& s) const {
        MPoly r = *this;
        if (s == K(0)) {
            r.terms_.clear();
            return r;
        }
        for (auto& [e, c] : r.terms_) c = c * s;
        return r;
    }
    friend MPoly operator*(const K& s, const MPoly& p) { return p * s; }
    MPoly& operator+=(const MPoly& o) { return *this = *this + o; }
    MPoly& operator-=(const MPoly& o) { return *this = *this - o; }
    MPoly& operator*=(const MPoly& o) { return *this = *this * o; }

    MPoly pow(unsigned long n) const {
        MPoly r(1), b = *this;
        while (n) {
            if (n & 1) r = r * b;
            b = b * b;
            n >>= 1;
        }
        return r;
    }

    MPoly derivative(const std::string& name) const {
        if (!has_var(name)) return MPoly(vars_);
        std::size_t i = index_of(name);
        MPoly r(vars_);
        for (const auto& [e, c] : terms_) {
            if (e[i] == 0) continue;
            Exp ne = e;
            --ne[i];
            r.terms_[std::move(ne)] = c * K(static_cast<long>(e[i]));
        }
        return r;
    }

    K eval(const std::map<std::string, K>& point) const {
        std::vector<K> vals;
        vals.reserve(vars_.size());
        for (const auto& v : vars_) {
            auto it = point.find(v);
            if (it == point.end()) throw invariant_error("MPoly::eval: missing value for " + v);
            vals.push_back(it->second);
        }
        K acc(0);
        for (const auto& [e, c] : terms_) {
            K t = c;
            for (std::size_t i = 0; i < e.size(); ++i)
                for (unsigned k = 0; k < e[i]; ++k) t = t * vals[i];
            acc = acc + t;
        }
        return acc;
    }

    /// Simultaneous substitution; bindings must cover every variable.
    MPoly subst(const std::map<std::string, MPoly>& bindings) const {
        std::vector<const MPoly*> bound;
        bound.reserve(vars_.size());
        for (const auto& v : vars_) {
            auto it = bindings.find(v);
            if (it == bindings.end())
                throw invariant_error("MPoly::subst: missing binding for " + v);
            bound.push_back(&it->second);
        }
        // Cache successive powers of each binding.
        std::vector<std::vector<MPoly>> pows(vars_.size());
        MPoly acc;
        for (const auto& [e, c] : terms_) {
            MPoly t(std::vector<std::string>{});
            t.terms_[Exp{}] = c;
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) continue;
                auto& p = pows[i];
                if (p.empty()) p.push_back(*bound[i]);
                while (p.size() < e[i]) p.push_back(p.back() * *bound[i]);
                t = t * p[e[i] - 1];
            }
            acc = acc + t;
        }
        return acc;
    }

    /// View as a univariate polynomial in one variable; coefficients keep the
    /// full variable list with that variable's exponent zeroed.
    UPoly<MPoly> to_upoly_in(const std::string& name) const {
        std::size_t i = index_of(name);
        long d = degree_in(name);
        std::vector<MPoly> cs(static_cast<std::size_t>(d + 1), MPoly(vars_));
        for (const auto& [e, c] : terms_) {
            Exp ne = e;
            ne[i] = 0;
            cs[e[i]].terms_[std::move(ne)] = c;
        }
        return UPoly<MPoly>(std::move(cs));
    }
    static MPoly from_upoly_in(const std::string& name, const UPoly<MPoly>& p,
                               const std::vector<std::string>& vars) {
        MPoly acc(vars);
        MPoly v = acc.has_var(name) ? variable(vars, name)
                                    : variable(merge_vars(vars, {name}), name);
        MPoly pw(1);
        for (long k = 0; k <= p.degree(); ++k) {
            acc += p[static_cast<std::size_t>(k)] * pw;
            pw = pw * v;
        }
        return acc;
    }

    MPoly homogenize(const std::string& name, long degree = -1) const {
        if (has_var(name) && degree_in(name) > 0)
            throw invariant_error("MPoly::homogenize: variable already occurs");
        long d = total_degree();
        if (degree < 0) degree = d;
        if (degree < d) throw invariant_error("MPoly::homogenize: target degree too small");
        std::vector<std::string> nv = merge_vars(vars_, {name});
        MPoly ext = extended_to(nv), out(nv);
        std::size_t i = ext.index_of(name);
        for (const auto& [e, c] : ext.terms_) {
            long s = 0;
            for (unsigned x : e) s += x;
            Exp ne = e;
            ne[i] = static_cast<unsigned>(degree - s);
            out.terms_[std::move(ne)] = c;
        }
        return out;
    }
    MPoly dehomogenize(const std::string& name) const {
        std::size_t i = index_of(name);
        MPoly out(vars_);
        for (const auto& [e, c] : terms_) {
            Exp ne = e;
            ne[i] = 0;
            auto it = out.terms_.find(ne);
            if (it == out.terms_.end()) {
                out.terms_[std::move(ne)] = c;
            } else {
                it->second = it->second + c;
                if (it->second == K(0)) out.terms_.erase(it);
            }
        }
        return out;
    }

    /// Exact quotient by leading-term reduction in lex order; throws if g
    /// does not divide this polynomial.
    MPoly exact_div(const MPoly& g) const {
        if (g.is_zero()) throw invariant_error("MPoly: division by zero");
        auto nv = merge_vars(vars_, g.vars_);
        MPoly f = extended_to(nv), gg = g.extended_to(nv), q(nv);
        auto glt = --gg.terms_.end();
        while (!f.is_zero()) {
            auto flt = --f.terms_.end();
            Exp e(nv.size());
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (flt->first[i] < glt->first[i])
                    throw invariant_error("MPoly: inexact division");
                e[i] = flt->first[i] - glt->first[i];
            }
            K c = RingTraits<K>::exact_div(flt->second, glt->second);
            MPoly t(nv);
            t.terms_[e] = c;
            q += t;
            f -= t * gg;
        }
        return q;
    }

    /// Componentwise minimum exponent (the monomial content).
    Exp monomial_content() const {
        if (is_zero()) return Exp(vars_.size(), 0);
        Exp m = terms_.begin()->first;
        for (const auto& [e, c] : terms_)
            for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::min(m[i], e[i]);
        return m;
    }
    MPoly divide_monomial(const Exp& m) const {
        MPoly out(vars_);
        for (const auto& [e, c] : terms_) {
            Exp ne = e;
            for (std::size_t i = 0; i < ne.size(); ++i) {
                if (ne[i] < m[i]) throw invariant_error("MPoly: monomial does not divide");
                ne[i] -= m[i];
            }
            out.terms_[std::move(ne)] = c;
        }
        return out;
    }

    std::string to_string() const;

private:
    std::vector<std::string> vars_;
    std::map<Exp, K> terms_;
};

template <class K>
struct RingTraits<MPoly<K>> {
    static MPoly<K> exact_div(const MPoly<K>& a, const MPoly<K>& b) { return a.exact_div(b); }
};

template <class K>
std::string MPoly<K>::to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        std::string c = tpt::to_string(it->second);
        bool neg = !c.empty() && c[0] == '-';
        if (!out.empty()) {
            out += neg ? " - " : " + ";
            if (neg) c = c.substr(1);
        }
        if (c.find_first_of("+-", 1) != std::string::npos || c.find('*') != std::string::npos)
            c = "(" + c + ")";
        std::string mono;
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            unsigned e = it->first[i];
            if (e == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += vars_[i];
            if (e > 1) mono += "^" + std::to_string(e);
        }
        if (mono.empty()) {
            out += c;
        } else if (c == "1") {
            out += mono;
        } else {
            out += c + "*" + mono;
        }
    }
    return out;
}

/// Substitute yvar <- num/den into g and clear denominators with den^n.
/// Requires n >= deg_yvar(g); the result is a polynomial.
template <class K>
MPoly<K> compose_rational(const MPoly<K>& g, const std::string& yvar, const MPoly<K>& num,
                          const MPoly<K>& den, long n) {
    if (den.is_zero()) throw invariant_error("compose_rational: zero denominator");
    long dy = g.has_var(yvar) ? g.degree_in(yvar) : 0;
    if (n < dy) throw invariant_error("compose_rational: clearing power below y-degree");
    if (!g.has_var(yvar)) return g * den.pow(static_cast<unsigned long>(n));
    UPoly<MPoly<K>> cs = g.to_upoly_in(yvar);
    MPoly<K> acc;
    MPoly<K> np(1), dp(1);
    std::vector<MPoly<K>> dens(static_cast<std::size_t>(dy + 1), MPoly<K>(1));
    for (long k = dy - 1; k >= 0; --k) dens[k] = dens[k + 1] * den;
    for (long k = 0; k <= dy; ++k) {
        acc += cs[static_cast<std::size_t>(k)] * np * dens[static_cast<std::size_t>(k)];
        np = np * num;
    }
    return acc * den.pow(static_cast<unsigned long>(n - dy));
}

/// True when f = c*g for some nonzero scalar c (both zero also counts).
template <class K>
bool proportional(const MPoly<K>& f, const MPoly<K>& g) {
    if (f.is_zero() || g.is_zero()) return f.is_zero() && g.is_zero();
    auto nv = MPoly<K>::merge_vars(f.vars(), g.vars());
    MPoly<K> a = f.extended_to(nv), b = g.extended_to(nv);
    if (a.terms().size() != b.terms().size()) return false;
    if (a.terms().rbegin()->first != b.terms().rbegin()->first) return false;
    K c = a.terms().rbegin()->second / b.terms().rbegin()->second;
    return a == b * c;
}

/// Collapse a multivariate polynomial that only involves `var` into a dense
/// univariate one. Throws if any other variable actually occurs.
template <class K>
UPoly<K> mpoly_to_upoly(const MPoly<K>& f, const std::string& var) {
    std::vector<K> cs;
    std::size_t vi = f.vars().size();
    for (std::size_t i = 0; i < f.vars().size(); ++i)
        if (f.vars()[i] == var) vi = i;
    for (const auto& [e, c] : f.terms()) {
        unsigned deg = 0;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (i != vi) throw invariant_error("mpoly_to_upoly: polynomial involves " + f.vars()[i]);
            deg = e[i];
        }
        if (cs.size() <= deg) cs.resize(deg + 1, K(0));
        cs[deg] = c;
    }
    return UPoly<K>(std::move(cs));
}

template <class K>
MPoly<K> upoly_to_mpoly(const UPoly<K>& p, const std::string& var) {
    MPoly<K> out({var});
    for (long k = 0; k <= p.degree(); ++k)
        out.set_term({static_cast<unsigned>(k)}, p[static_cast<std::size_t>(k)]);
    return out;
}

/// Serialize / parse the canonical polynomial JSON (terms in ascending
/// lexicographic exponent order, Q(w) coefficients as strings).
std::string mpoly_to_json(const MPoly<QOmega>& f);
MPoly<QOmega> mpoly_from_json(const std::string& text);

} // namespace tpt
