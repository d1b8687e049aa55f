#pragma once
/* Truncated power series in u whose coefficients are affine-linear forms in
 * named unknowns over Q(w), plus the exact affine system solver. Products of
 * two unknown-bearing coefficients are never representable; the guard below
 * turns any attempt into a loud error instead of a silent wrong answer. */
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tpt/errors.hpp"
#include "tpt/qomega.hpp"
#include "tpt/upoly.hpp"

namespace tpt {

class NonlinearTermSurvives : public invariant_error {
  public:
    explicit NonlinearTermSurvives(const std::string& what) : invariant_error(what) {}
};

class NotDivisible : public invariant_error {
  public:
    explicit NotDivisible(const std::string& what) : invariant_error(what) {}
};

class Inconsistent : public std::runtime_error {
  public:
    explicit Inconsistent(const std::string& what) : std::runtime_error(what) {}
};

class Underdetermined : public std::runtime_error {
  public:
    explicit Underdetermined(const std::string& what) : std::runtime_error(what) {}
};

// Interned symbolic unknown. Equality is O(1); ordering is by name so that
// containers and elimination order are reproducible across runs.
class Unknown {
  public:
    explicit Unknown(const std::string& name);

    std::uint32_t id() const { return id_; }
    const std::string& name() const;

    bool operator==(const Unknown& o) const { return id_ == o.id_; }
    bool operator!=(const Unknown& o) const { return id_ != o.id_; }
    bool operator<(const Unknown& o) const;

  private:
    std::uint32_t id_;
};

// constant + sum of coeff * unknown; no zero coefficients are stored.
class LinExpr {
  public:
    LinExpr() = default;
    LinExpr(const QOmega& c) : const_(c) {}
    LinExpr(const Rational& c) : const_(c) {}
    LinExpr(long c) : const_(QOmega(c)) {}
    explicit LinExpr(const Unknown& u) { lin_[u] = QOmega::one(); }

    const QOmega& constant() const { return const_; }
    const std::map<Unknown, QOmega>& linear() const { return lin_; }
    bool is_constant() const { return lin_.empty(); }
    bool is_zero() const { return lin_.empty() && const_.is_zero(); }
    QOmega coeff_of(const Unknown& u) const;

    LinExpr operator-() const;
    LinExpr operator+(const LinExpr& o) const;
    LinExpr operator-(const LinExpr& o) const;
    // Throws NonlinearTermSurvives when both factors carry unknowns.
    LinExpr operator*(const LinExpr& o) const;
    LinExpr& operator+=(const LinExpr& o) { return *this = *this + o; }
    LinExpr& operator-=(const LinExpr& o) { return *this = *this - o; }
    LinExpr& operator*=(const LinExpr& o) { return *this = *this * o; }
    bool operator==(const LinExpr& o) const { return const_ == o.const_ && lin_ == o.lin_; }
    bool operator!=(const LinExpr& o) const { return !(*this == o); }

    LinExpr scaled(const QOmega& s) const;
    // Replaces every bound unknown by its value; unbound unknowns survive.
    LinExpr substitute(const std::map<Unknown, QOmega>& values) const;
    // Requires every unknown bound.
    QOmega eval(const std::map<Unknown, QOmega>& values) const;

    std::string to_string() const;

  private:
    QOmega const_;
    std::map<Unknown, QOmega> lin_;
};

inline LinExpr operator*(const QOmega& s, const LinExpr& e) { return e.scaled(s); }

// Power series sum c_m u^m truncated after u^N; N is part of the value and
// binary operations refuse mismatched truncation orders.
class TruncSeries {
  public:
    explicit TruncSeries(long order);
    TruncSeries(long order, std::vector<LinExpr> coeffs);
    static TruncSeries constant(long order, const LinExpr& c);
    static TruncSeries upow(long order, long m, const LinExpr& c = LinExpr(1));
    static TruncSeries from_upoly(const UPoly<QOmega>& f, long order);

    long order() const { return order_; }
    const LinExpr& coeff(long m) const;
    void set_coeff(long m, const LinExpr& c);
    bool is_zero() const;

    TruncSeries operator+(const TruncSeries& o) const;
    TruncSeries operator-(const TruncSeries& o) const;
    TruncSeries operator*(const TruncSeries& o) const;
    TruncSeries operator-() const;
    TruncSeries& operator+=(const TruncSeries& o) { return *this = *this + o; }
    TruncSeries& operator-=(const TruncSeries& o) { return *this = *this - o; }
    TruncSeries& operator*=(const TruncSeries& o) { return *this = *this * o; }
    bool operator==(const TruncSeries& o) const;
    bool operator!=(const TruncSeries& o) const { return !(*this == o); }

    TruncSeries scaled(const LinExpr& s) const;
    // Drops coefficients beyond m; extending the order is not allowed.
    TruncSeries truncated_to(long m) const;
    TruncSeries substitute(const std::map<Unknown, QOmega>& values) const;
    // Horner evaluation at a numeric u; requires unknown-free coefficients.
    QOmega eval(const QOmega& u) const;
    bool has_unknowns() const;

    std::string to_string() const;

  private:
    long order_;
    std::vector<LinExpr> coeffs_;
};

// f(t0 + shift(u)) expanded as a series; shift must vanish at u=0.
TruncSeries series_substitute(const UPoly<QOmega>& f, const QOmega& t0, const TruncSeries& shift);

// Divide by u^m; throws NotDivisible unless c_0..c_{m-1} vanish identically.
TruncSeries series_div_upow(const TruncSeries& f, long m);

std::string series_to_json(const TruncSeries& s);
TruncSeries series_from_json(const std::string& text);

// Affine subspace to solve inside: fixed values and identified unknowns.
struct Restriction {
    std::map<Unknown, QOmega> fixed;
    std::vector<std::pair<Unknown, Unknown>> equal;
};

struct AffineSolution {
    std::map<Unknown, QOmega> assignment;
    long rank = 0;
    bool unique = false;
};

// Exact Gaussian elimination over Q(w). Pivots by largest coefficient norm,
// ties broken by lowest row index; free unknowns are set to zero. Throws
// Inconsistent when no solution exists and Underdetermined when uniqueness
// is demanded but the kernel is nontrivial.
AffineSolution solve_affine_system(const std::vector<LinExpr>& equations,
                                   const Restriction& restrict_to = {},
                                   bool require_unique = false);

} // namespace tpt
