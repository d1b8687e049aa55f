#include "tpt/series.hpp"

#include <algorithm>
#include <mutex>
#include <unordered_map>

#include "json.hpp"

namespace tpt {

namespace {

struct UnknownRegistry {
    std::mutex mtx;
    std::vector<std::string> names;
    std::unordered_map<std::string, std::uint32_t> ids;
};

UnknownRegistry& registry() {
    static UnknownRegistry r;
    return r;
}

} // namespace

Unknown::Unknown(const std::string& name) {
    if (name.empty()) throw invariant_error("Unknown: empty name");
    auto& r = registry();
    std::lock_guard<std::mutex> lock(r.mtx);
    auto it = r.ids.find(name);
    if (it != r.ids.end()) {
        id_ = it->second;
        return;
    }
    id_ = static_cast<std::uint32_t>(r.names.size());
    r.names.push_back(name);
    r.ids.emplace(name, id_);
}

const std::string& Unknown::name() const {
    auto& r = registry();
    std::lock_guard<std::mutex> lock(r.mtx);
    return r.names[id_];
}

bool Unknown::operator<(const Unknown& o) const {
    if (id_ == o.id_) return false;
    return name() < o.name();
}

QOmega LinExpr::coeff_of(const Unknown& u) const {
    auto it = lin_.find(u);
    return it == lin_.end() ? QOmega::zero() : it->second;
}

LinExpr LinExpr::operator-() const {
    LinExpr r;
    r.const_ = -const_;
    for (const auto& [u, c] : lin_) r.lin_.emplace(u, -c);
    return r;
}

LinExpr LinExpr::operator+(const LinExpr& o) const {
    LinExpr r = *this;
    r.const_ = r.const_ + o.const_;
    for (const auto& [u, c] : o.lin_) {
        auto it = r.lin_.find(u);
        if (it == r.lin_.end()) {
            r.lin_.emplace(u, c);
        } else {
            it->second = it->second + c;
            if (it->second.is_zero()) r.lin_.erase(it);
        }
    }
    return r;
}

LinExpr LinExpr::operator-(const LinExpr& o) const { return *this + (-o); }

LinExpr LinExpr::operator*(const LinExpr& o) const {
    if (!is_constant() && !o.is_constant())
        throw NonlinearTermSurvives("product of two unknown-bearing affine forms: " +
                                    to_string() + " times " + o.to_string());
    if (is_constant()) return o.scaled(const_);
    return scaled(o.const_);
}

LinExpr LinExpr::scaled(const QOmega& s) const {
    LinExpr r;
    if (s.is_zero()) return r;
    r.const_ = const_ * s;
    for (const auto& [u, c] : lin_) r.lin_.emplace(u, c * s);
    return r;
}

LinExpr LinExpr::substitute(const std::map<Unknown, QOmega>& values) const {
    LinExpr r;
    r.const_ = const_;
    for (const auto& [u, c] : lin_) {
        auto it = values.find(u);
        if (it == values.end())
            r.lin_.emplace(u, c);
        else
            r.const_ = r.const_ + c * it->second;
    }
    return r;
}

QOmega LinExpr::eval(const std::map<Unknown, QOmega>& values) const {
    LinExpr r = substitute(values);
    if (!r.is_constant())
        throw invariant_error("LinExpr eval: unbound unknown " + r.lin_.begin()->first.name());
    return r.const_;
}

std::string LinExpr::to_string() const {
    if (is_zero()) return "0";
    std::string out;
    if (!const_.is_zero() || lin_.empty()) out = tpt::to_string(const_);
    for (const auto& [u, c] : lin_) {
        if (!out.empty()) out += " + ";
        out += "(" + tpt::to_string(c) + ")*" + u.name();
    }
    return out;
}

TruncSeries::TruncSeries(long order) : order_(order) {
    if (order < 0) throw invariant_error("TruncSeries: negative order");
    coeffs_.resize(static_cast<std::size_t>(order) + 1);
}

TruncSeries::TruncSeries(long order, std::vector<LinExpr> coeffs) : TruncSeries(order) {
    if (coeffs.size() > coeffs_.size())
        throw invariant_error("TruncSeries: more coefficients than the order admits");
    std::copy(coeffs.begin(), coeffs.end(), coeffs_.begin());
}

TruncSeries TruncSeries::constant(long order, const LinExpr& c) {
    TruncSeries s(order);
    s.coeffs_[0] = c;
    return s;
}

TruncSeries TruncSeries::upow(long order, long m, const LinExpr& c) {
    TruncSeries s(order);
    if (m < 0) throw invariant_error("TruncSeries: negative power of u");
    if (m <= order) s.coeffs_[static_cast<std::size_t>(m)] = c;
    return s;
}

TruncSeries TruncSeries::from_upoly(const UPoly<QOmega>& f, long order) {
    TruncSeries s(order);
    for (long m = 0; m <= std::min<long>(order, f.degree()); ++m)
        s.coeffs_[static_cast<std::size_t>(m)] = LinExpr(f[m]);
    return s;
}

const LinExpr& TruncSeries::coeff(long m) const {
    if (m < 0 || m > order_) throw invariant_error("TruncSeries: coefficient index out of range");
    return coeffs_[static_cast<std::size_t>(m)];
}

void TruncSeries::set_coeff(long m, const LinExpr& c) {
    if (m < 0 || m > order_) throw invariant_error("TruncSeries: coefficient index out of range");
    coeffs_[static_cast<std::size_t>(m)] = c;
}

bool TruncSeries::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const LinExpr& c) { return c.is_zero(); });
}

namespace {
void require_same_order(const TruncSeries& a, const TruncSeries& b) {
    if (a.order() != b.order())
        throw invariant_error("TruncSeries: truncation order mismatch (" +
                              std::to_string(a.order()) + " vs " + std::to_string(b.order()) +
                              "); re-truncate explicitly");
}
} // namespace

TruncSeries TruncSeries::operator+(const TruncSeries& o) const {
    require_same_order(*this, o);
    TruncSeries r(order_);
    for (long m = 0; m <= order_; ++m)
        r.coeffs_[static_cast<std::size_t>(m)] =
            coeffs_[static_cast<std::size_t>(m)] + o.coeffs_[static_cast<std::size_t>(m)];
    return r;
}

TruncSeries TruncSeries::operator-(const TruncSeries& o) const {
    require_same_order(*this, o);
    TruncSeries r(order_);
    for (long m = 0; m <= order_; ++m)
        r.coeffs_[static_cast<std::size_t>(m)] =
            coeffs_[static_cast<std::size_t>(m)] - o.coeffs_[static_cast<std::size_t>(m)];
    return r;
}

TruncSeries TruncSeries::operator-() const {
    TruncSeries r(order_);
    for (long m = 0; m <= order_; ++m)
        r.coeffs_[static_cast<std::size_t>(m)] = -coeffs_[static_cast<std::size_t>(m)];
    return r;
}

TruncSeries TruncSeries::operator*(const TruncSeries& o) const {
    require_same_order(*this, o);
    TruncSeries r(order_);
    for (long k = 0; k <= order_; ++k) {
        LinExpr acc;
        for (long i = 0; i <= k; ++i)
            acc += coeffs_[static_cast<std::size_t>(i)] *
                   o.coeffs_[static_cast<std::size_t>(k - i)];
        r.coeffs_[static_cast<std::size_t>(k)] = std::move(acc);
    }
    return r;
}

bool TruncSeries::operator==(const TruncSeries& o) const {
    return order_ == o.order_ && coeffs_ == o.coeffs_;
}

TruncSeries TruncSeries::scaled(const LinExpr& s) const {
    TruncSeries r(order_);
    for (long m = 0; m <= order_; ++m)
        r.coeffs_[static_cast<std::size_t>(m)] = coeffs_[static_cast<std::size_t>(m)] * s;
    return r;
}

TruncSeries TruncSeries::truncated_to(long m) const {
    if (m > order_)
        throw invariant_error("TruncSeries: cannot extend the truncation order");
    TruncSeries r(m);
    for (long i = 0; i <= m; ++i) r.coeffs_[static_cast<std::size_t>(i)] = coeff(i);
    return r;
}

TruncSeries TruncSeries::substitute(const std::map<Unknown, QOmega>& values) const {
    TruncSeries r(order_);
    for (long m = 0; m <= order_; ++m)
        r.coeffs_[static_cast<std::size_t>(m)] =
            coeffs_[static_cast<std::size_t>(m)].substitute(values);
    return r;
}

QOmega TruncSeries::eval(const QOmega& u) const {
    if (has_unknowns()) throw invariant_error("TruncSeries eval: unknowns remain");
    QOmega acc = QOmega::zero();
    for (long m = order_; m >= 0; --m)
        acc = acc * u + coeffs_[static_cast<std::size_t>(m)].constant();
    return acc;
}

bool TruncSeries::has_unknowns() const {
    return std::any_of(coeffs_.begin(), coeffs_.end(),
                       [](const LinExpr& c) { return !c.is_constant(); });
}

std::string TruncSeries::to_string() const {
    std::string out = "O(u^" + std::to_string(order_ + 1) + ")";
    for (long m = order_; m >= 0; --m) {
        const LinExpr& c = coeffs_[static_cast<std::size_t>(m)];
        if (c.is_zero()) continue;
        std::string term = "[" + c.to_string() + "]";
        if (m == 1)
            term += "*u";
        else if (m > 1)
            term += "*u^" + std::to_string(m);
        out = term + " + " + out;
    }
    return out;
}

TruncSeries series_substitute(const UPoly<QOmega>& f, const QOmega& t0, const TruncSeries& shift) {
    if (!shift.coeff(0).is_zero())
        throw invariant_error("series_substitute: shift must vanish at u=0");
    long N = shift.order();
    if (f.is_zero()) return TruncSeries(N);
    // Taylor coefficients of f at t0 by in-place Horner shifts.
    std::vector<QOmega> g = f.coeffs();
    long d = f.degree();
    for (long j = 0; j < d; ++j)
        for (long i = d - 1; i >= j; --i)
            g[static_cast<std::size_t>(i)] =
                g[static_cast<std::size_t>(i)] + t0 * g[static_cast<std::size_t>(i + 1)];
    TruncSeries r = TruncSeries::constant(N, LinExpr(g[static_cast<std::size_t>(d)]));
    for (long k = d - 1; k >= 0; --k)
        r = r * shift + TruncSeries::constant(N, LinExpr(g[static_cast<std::size_t>(k)]));
    return r;
}

TruncSeries series_div_upow(const TruncSeries& f, long m) {
    if (m < 0 || m > f.order())
        throw invariant_error("series_div_upow: power out of range");
    for (long i = 0; i < m; ++i)
        if (!f.coeff(i).is_zero())
            throw NotDivisible("series_div_upow: coefficient of u^" + std::to_string(i) +
                               " is " + f.coeff(i).to_string());
    TruncSeries r(f.order() - m);
    for (long i = m; i <= f.order(); ++i) r.set_coeff(i - m, f.coeff(i));
    return r;
}

std::string series_to_json(const TruncSeries& s) {
    nlohmann::json j;
    j["order"] = s.order();
    nlohmann::json arr = nlohmann::json::array();
    for (long m = 0; m <= s.order(); ++m) {
        const LinExpr& c = s.coeff(m);
        nlohmann::json jc;
        jc["const"] = to_string(c.constant());
        nlohmann::json lin = nlohmann::json::object();
        for (const auto& [u, q] : c.linear()) lin[u.name()] = to_string(q);
        jc["lin"] = lin;
        arr.push_back(jc);
    }
    j["coeffs"] = arr;
    return j.dump();
}

TruncSeries series_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("order") || !j.contains("coeffs") ||
        !j["order"].is_number_integer() || !j["coeffs"].is_array())
        throw parse_error("series: malformed JSON");
    long order = j["order"].get<long>();
    if (order < 0 || j["coeffs"].size() != static_cast<std::size_t>(order) + 1)
        throw parse_error("series: coefficient count does not match the order");
    TruncSeries s(order);
    long m = 0;
    for (const auto& jc : j["coeffs"]) {
        if (!jc.is_object() || !jc.contains("const") || !jc["const"].is_string())
            throw parse_error("series: malformed coefficient");
        LinExpr c(parse_qomega(jc["const"].get<std::string>()));
        if (jc.contains("lin")) {
            if (!jc["lin"].is_object()) throw parse_error("series: malformed linear part");
            for (const auto& [name, val] : jc["lin"].items()) {
                if (!val.is_string()) throw parse_error("series: malformed linear part");
                c += LinExpr(Unknown(name)).scaled(parse_qomega(val.get<std::string>()));
            }
        }
        s.set_coeff(m++, c);
    }
    return s;
}

namespace {

// Union-find over unknowns; the representative is the least name.
class Classes {
  public:
    Unknown find(Unknown u) {
        auto it = parent_.find(u);
        if (it == parent_.end() || it->second == u) return u;
        Unknown root = find(it->second);
        parent_.insert_or_assign(u, root);
        return root;
    }
    void merge(Unknown a, Unknown b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (b < a) std::swap(a, b);
        parent_.insert_or_assign(b, a);
    }

  private:
    std::map<Unknown, Unknown> parent_;
};

} // namespace

AffineSolution solve_affine_system(const std::vector<LinExpr>& equations,
                                   const Restriction& restrict_to, bool require_unique) {
    // Collect every unknown in sight and identify equal ones.
    std::vector<Unknown> seen;
    auto note = [&seen](const Unknown& u) {
        if (std::find(seen.begin(), seen.end(), u) == seen.end()) seen.push_back(u);
    };
    for (const auto& eq : equations)
        for (const auto& [u, c] : eq.linear()) note(u);
    for (const auto& [u, v] : restrict_to.fixed) {
        (void)v;
        note(u);
    }
    for (const auto& [a, b] : restrict_to.equal) {
        note(a);
        note(b);
    }

    Classes cls;
    for (const auto& [a, b] : restrict_to.equal) cls.merge(a, b);

    // Fixed values propagate to the whole class; conflicts are fatal.
    std::map<Unknown, QOmega> fixed_rep;
    for (const auto& [u, v] : restrict_to.fixed) {
        Unknown r = cls.find(u);
        auto it = fixed_rep.find(r);
        if (it != fixed_rep.end() && !(it->second == v))
            throw Inconsistent("restriction fixes " + u.name() + " to conflicting values");
        fixed_rep.insert_or_assign(r, v);
    }

    // Live columns: class representatives not pinned by the restriction.
    std::vector<Unknown> cols;
    for (const auto& u : seen) {
        Unknown r = cls.find(u);
        if (fixed_rep.count(r)) continue;
        if (std::find(cols.begin(), cols.end(), r) == cols.end()) cols.push_back(r);
    }
    std::sort(cols.begin(), cols.end());
    std::map<Unknown, std::size_t> col_of;
    for (std::size_t i = 0; i < cols.size(); ++i) col_of.emplace(cols[i], i);

    // Rows: coefficient matrix + right-hand side for eq = 0.
    std::size_t n = cols.size();
    std::vector<std::vector<QOmega>> A;
    std::vector<QOmega> rhs;
    for (const auto& eq : equations) {
        std::vector<QOmega> row(n, QOmega::zero());
        QOmega cst = eq.constant();
        for (const auto& [u, c] : eq.linear()) {
            Unknown r = cls.find(u);
            auto fx = fixed_rep.find(r);
            if (fx != fixed_rep.end()) {
                cst = cst + c * fx->second;
            } else {
                std::size_t j = col_of.at(r);
                row[j] = row[j] + c;
            }
        }
        A.push_back(std::move(row));
        rhs.push_back(-cst);
    }

    // Gaussian elimination, pivoting by largest Q(w) norm, then lowest row.
    std::size_t m = A.size();
    std::vector<long> pivot_of_col(n, -1);
    std::size_t next_row = 0;
    for (std::size_t j = 0; j < n && next_row < m; ++j) {
        std::size_t best = m;
        Rational best_norm(0);
        for (std::size_t i = next_row; i < m; ++i) {
            if (A[i][j].is_zero()) continue;
            Rational nm = A[i][j].norm();
            if (best == m || nm > best_norm) {
                best = i;
                best_norm = nm;
            }
        }
        if (best == m) continue;
        std::swap(A[next_row], A[best]);
        std::swap(rhs[next_row], rhs[best]);
        QOmega inv = A[next_row][j].inverse();
        for (std::size_t k = j; k < n; ++k) A[next_row][k] = A[next_row][k] * inv;
        rhs[next_row] = rhs[next_row] * inv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == next_row || A[i][j].is_zero()) continue;
            QOmega factor = A[i][j];
            for (std::size_t k = j; k < n; ++k) A[i][k] = A[i][k] - factor * A[next_row][k];
            rhs[i] = rhs[i] - factor * rhs[next_row];
        }
        pivot_of_col[j] = static_cast<long>(next_row);
        ++next_row;
    }
    long rank = static_cast<long>(next_row);

    for (std::size_t i = next_row; i < m; ++i)
        if (!rhs[i].is_zero())
            throw Inconsistent("affine system has no solution");

    bool unique = static_cast<std::size_t>(rank) == n;
    if (require_unique && !unique)
        throw Underdetermined("affine system has a " + std::to_string(n - static_cast<std::size_t>(rank)) +
                              "-dimensional solution space");

    // Free columns take zero; pivot columns read off the reduced rows.
    std::vector<QOmega> value(n, QOmega::zero());
    for (std::size_t j = 0; j < n; ++j)
        if (pivot_of_col[j] >= 0) value[j] = rhs[static_cast<std::size_t>(pivot_of_col[j])];

    AffineSolution sol;
    sol.rank = rank;
    sol.unique = unique;
    for (const auto& u : seen) {
        Unknown r = cls.find(u);
        auto fx = fixed_rep.find(r);
        if (fx != fixed_rep.end())
            sol.assignment.emplace(u, fx->second);
        else
            sol.assignment.emplace(u, value[col_of.at(r)]);
    }
    return sol;
}

} // namespace tpt
