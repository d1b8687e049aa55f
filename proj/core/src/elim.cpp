#include "tpt/elim.hpp"

#include <vector>

namespace tpt {

namespace {

// f split by powers of `elim`, each slice a dense polynomial in `keep`.
std::vector<UPoly<QOmega>> slices(const MPoly<QOmega>& f, const std::string& elim,
                                  const std::string& keep) {
    const auto& vars = f.vars();
    std::size_t ie = vars.size(), ik = vars.size();
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (vars[i] == elim) ie = i;
        if (vars[i] == keep) ik = i;
    }
    long de = f.has_var(elim) ? f.degree_in(elim) : 0;
    std::vector<std::vector<QOmega>> cs(static_cast<std::size_t>(de + 1));
    for (const auto& [e, c] : f.terms()) {
        unsigned ee = 0, ek = 0;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (i == ie)
                ee = e[i];
            else if (i == ik)
                ek = e[i];
            else
                throw invariant_error("bivariate_resultant: polynomial involves " + vars[i]);
        }
        auto& slice = cs[ee];
        if (slice.size() <= ek) slice.resize(ek + 1, QOmega());
        slice[ek] = c;
    }
    std::vector<UPoly<QOmega>> out;
    out.reserve(cs.size());
    for (auto& slice : cs) out.emplace_back(std::move(slice));
    return out;
}

UPoly<QOmega> upoly_pow(const UPoly<QOmega>& p, long e) {
    UPoly<QOmega> acc(QOmega(Rational(1)));
    for (long i = 0; i < e; ++i) acc = acc * p;
    return acc;
}

} // namespace

UPoly<QOmega> bivariate_resultant(const MPoly<QOmega>& P, const MPoly<QOmega>& Q,
                                  const std::string& elim, const std::string& keep) {
    if (P.is_zero() || Q.is_zero()) throw invariant_error("bivariate_resultant: zero input");
    auto ps = slices(P, elim, keep);
    auto qs = slices(Q, elim, keep);
    long dp = static_cast<long>(ps.size()) - 1;
    long dq = static_cast<long>(qs.size()) - 1;
    if (dp == 0 && dq == 0) return UPoly<QOmega>(QOmega(Rational(1)));
    if (dp == 0) return upoly_pow(ps[0], dq);
    if (dq == 0) return upoly_pow(qs[0], dp);
    long ep = P.has_var(keep) ? P.degree_in(keep) : 0;
    long eq = Q.has_var(keep) ? Q.degree_in(keep) : 0;
    // Each Sylvester row carries coefficients of one input, so the resultant
    // has keep-degree at most dq*ep + dp*eq; that many nodes plus one pin it.
    long bound = dp * eq + dq * ep;
    std::vector<QOmega> xs, ys;
    for (long step = 0; static_cast<long>(xs.size()) <= bound; ++step) {
        long v = step % 2 ? (step + 1) / 2 : -(step / 2);
        QOmega node{Rational(v)};
        if (ps.back().eval(node).is_zero() || qs.back().eval(node).is_zero()) continue;
        std::vector<QOmega> pc, qc;
        pc.reserve(ps.size());
        qc.reserve(qs.size());
        for (const auto& s : ps) pc.push_back(s.eval(node));
        for (const auto& s : qs) qc.push_back(s.eval(node));
        xs.push_back(node);
        ys.push_back(resultant(UPoly<QOmega>(std::move(pc)), UPoly<QOmega>(std::move(qc))));
    }
    return UPoly<QOmega>::interpolate(xs, ys);
}

UPoly<QOmega> bivariate_resultant_direct(const MPoly<QOmega>& P, const MPoly<QOmega>& Q,
                                         const std::string& elim, const std::string& keep) {
    if (P.is_zero() || Q.is_zero()) throw invariant_error("bivariate_resultant: zero input");
    auto ps = slices(P, elim, keep);
    auto qs = slices(Q, elim, keep);
    std::vector<MPoly<QOmega>> pm, qm;
    for (const auto& s : ps) pm.push_back(upoly_to_mpoly(s, keep));
    for (const auto& s : qs) qm.push_back(upoly_to_mpoly(s, keep));
    MPoly<QOmega> r =
        sylvester_resultant(UPoly<MPoly<QOmega>>(std::move(pm)), UPoly<MPoly<QOmega>>(std::move(qm)));
    return mpoly_to_upoly(r, keep);
}

} // namespace tpt
