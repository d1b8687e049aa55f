#include "tpt/roots.hpp"

#include <algorithm>
#include <cstddef>

namespace tpt {

namespace {

constexpr mpfr_rnd_t RN = MPFR_RNDN;

/* Scratch registers for the complex kernels below, all at one working
 * precision. */
struct Scratch {
    MpfrVal t1, t2, t3, t4, t5;
    explicit Scratch(mpfr_prec_t p) : t1(p), t2(p), t3(p), t4(p), t5(p) {}
};

/* (xr,xi) = (ar,ai)*(br,bi); the output must not alias the inputs. */
void cmul(mpfr_ptr xr, mpfr_ptr xi, mpfr_srcptr ar, mpfr_srcptr ai, mpfr_srcptr br,
          mpfr_srcptr bi, Scratch& s) {
    mpfr_mul(s.t1.raw(), ar, br, RN);
    mpfr_mul(s.t2.raw(), ai, bi, RN);
    mpfr_mul(s.t3.raw(), ar, bi, RN);
    mpfr_mul(s.t4.raw(), ai, br, RN);
    mpfr_sub(xr, s.t1.raw(), s.t2.raw(), RN);
    mpfr_add(xi, s.t3.raw(), s.t4.raw(), RN);
}

/* (xr,xi) = (ar,ai)/(br,bi); output must not alias inputs.  Returns false
 * when the divisor is exactly zero. */
bool cdiv(mpfr_ptr xr, mpfr_ptr xi, mpfr_srcptr ar, mpfr_srcptr ai, mpfr_srcptr br,
          mpfr_srcptr bi, Scratch& s) {
    mpfr_mul(s.t1.raw(), br, br, RN);
    mpfr_mul(s.t2.raw(), bi, bi, RN);
    mpfr_add(s.t5.raw(), s.t1.raw(), s.t2.raw(), RN);
    if (mpfr_zero_p(s.t5.raw())) return false;
    mpfr_mul(s.t1.raw(), ar, br, RN);
    mpfr_mul(s.t2.raw(), ai, bi, RN);
    mpfr_add(s.t1.raw(), s.t1.raw(), s.t2.raw(), RN);
    mpfr_mul(s.t2.raw(), ai, br, RN);
    mpfr_mul(s.t3.raw(), ar, bi, RN);
    mpfr_sub(s.t2.raw(), s.t2.raw(), s.t3.raw(), RN);
    mpfr_div(xr, s.t1.raw(), s.t5.raw(), RN);
    mpfr_div(xi, s.t2.raw(), s.t5.raw(), RN);
    return true;
}

struct CPoly {
    std::vector<MpfrVal> re, im;
    long deg;
};

CPoly to_cpoly(const UPoly<QOmega>& p, mpfr_prec_t prec) {
    CPoly out{{}, {}, p.degree()};
    for (const auto& c : p.coeffs()) {
        ComplexBall b = ComplexBall::from_qomega(c, prec);
        out.re.push_back(b.mid_re());
        out.im.push_back(b.mid_im());
    }
    return out;
}

/* Horner evaluation of c at (zr,zi) into (vr,vi); v must not alias z. */
void ceval(mpfr_ptr vr, mpfr_ptr vi, const CPoly& c, mpfr_srcptr zr, mpfr_srcptr zi,
           Scratch& s, MpfrVal& wr, MpfrVal& wi) {
    std::size_t d = static_cast<std::size_t>(c.deg);
    mpfr_set(vr, c.re[d].raw(), RN);
    mpfr_set(vi, c.im[d].raw(), RN);
    for (std::size_t k = d; k-- > 0;) {
        cmul(wr.raw(), wi.raw(), vr, vi, zr, zi, s);
        mpfr_add(vr, wr.raw(), c.re[k].raw(), RN);
        mpfr_add(vi, wi.raw(), c.im[k].raw(), RN);
    }
}

/* |(ar,ai)| into x. */
void cabs(mpfr_ptr x, mpfr_srcptr ar, mpfr_srcptr ai) { mpfr_hypot(x, ar, ai, RN); }

struct Candidates {
    std::vector<MpfrVal> re, im;
};

/* Aberth-Ehrlich sweeps at the given precision, starting from points on a
 * circle sized by the Cauchy bound.  Convergence is best-effort;
 * certification has the last word. */
Candidates aberth(const UPoly<QOmega>& p, const UPoly<QOmega>& dp, mpfr_prec_t prec) {
    long n = p.degree();
    CPoly cp = to_cpoly(p, prec), cd = to_cpoly(dp, prec);
    Scratch s(prec);
    MpfrVal wr(prec), wi(prec), pr(prec), pi(prec), dr(prec), di(prec);
    MpfrVal nr(prec), ni(prec), sr(prec), si(prec), qr(prec), qi(prec);

    Candidates z;
    // Radius 1 + max |c_k| / |c_n|; the offset angle breaks symmetry.
    mpfr_set_ui(s.t1.raw(), 0, RN);
    for (long k = 0; k < n; ++k) {
        cabs(s.t2.raw(), cp.re[static_cast<std::size_t>(k)].raw(),
             cp.im[static_cast<std::size_t>(k)].raw());
        mpfr_max(s.t1.raw(), s.t1.raw(), s.t2.raw(), RN);
    }
    cabs(s.t2.raw(), cp.re[static_cast<std::size_t>(n)].raw(),
         cp.im[static_cast<std::size_t>(n)].raw());
    mpfr_div(s.t1.raw(), s.t1.raw(), s.t2.raw(), RN);
    mpfr_add_ui(s.t1.raw(), s.t1.raw(), 1, RN);
    MpfrVal radius(prec), theta(prec), pi2(prec);
    mpfr_set(radius.raw(), s.t1.raw(), RN);
    mpfr_const_pi(pi2.raw(), RN);
    mpfr_mul_ui(pi2.raw(), pi2.raw(), 2, RN);
    for (long i = 0; i < n; ++i) {
        mpfr_mul_si(theta.raw(), pi2.raw(), i, RN);
        mpfr_div_si(theta.raw(), theta.raw(), n, RN);
        mpfr_add_d(theta.raw(), theta.raw(), 0.4, RN);
        MpfrVal cr(prec), ci(prec);
        mpfr_sin_cos(ci.raw(), cr.raw(), theta.raw(), RN);
        mpfr_mul(cr.raw(), cr.raw(), radius.raw(), RN);
        mpfr_mul(ci.raw(), ci.raw(), radius.raw(), RN);
        z.re.push_back(std::move(cr));
        z.im.push_back(std::move(ci));
    }

    const int max_sweeps = 600;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool converged = true;
        for (long i = 0; i < n; ++i) {
            std::size_t ii = static_cast<std::size_t>(i);
            ceval(pr.raw(), pi.raw(), cp, z.re[ii].raw(), z.im[ii].raw(), s, wr, wi);
            if (mpfr_zero_p(pr.raw()) && mpfr_zero_p(pi.raw())) continue;
            ceval(dr.raw(), di.raw(), cd, z.re[ii].raw(), z.im[ii].raw(), s, wr, wi);
            if (!cdiv(nr.raw(), ni.raw(), pr.raw(), pi.raw(), dr.raw(), di.raw(), s)) {
                // Sitting on a critical point: nudge and try again next sweep.
                mpfr_add_d(z.re[ii].raw(), z.re[ii].raw(), 1e-3, RN);
                converged = false;
                continue;
            }
            // sum over j != i of 1/(z_i - z_j)
            mpfr_set_ui(sr.raw(), 0, RN);
            mpfr_set_ui(si.raw(), 0, RN);
            for (long j = 0; j < n; ++j) {
                if (j == i) continue;
                std::size_t jj = static_cast<std::size_t>(j);
                mpfr_sub(s.t1.raw(), z.re[ii].raw(), z.re[jj].raw(), RN);
                mpfr_sub(s.t2.raw(), z.im[ii].raw(), z.im[jj].raw(), RN);
                mpfr_mul(s.t3.raw(), s.t1.raw(), s.t1.raw(), RN);
                mpfr_mul(s.t4.raw(), s.t2.raw(), s.t2.raw(), RN);
                mpfr_add(s.t3.raw(), s.t3.raw(), s.t4.raw(), RN);
                if (mpfr_zero_p(s.t3.raw())) continue;
                mpfr_div(s.t1.raw(), s.t1.raw(), s.t3.raw(), RN);
                mpfr_div(s.t2.raw(), s.t2.raw(), s.t3.raw(), RN);
                mpfr_add(sr.raw(), sr.raw(), s.t1.raw(), RN);
                mpfr_sub(si.raw(), si.raw(), s.t2.raw(), RN);
            }
            // w = N / (1 - N*S)
            cmul(qr.raw(), qi.raw(), nr.raw(), ni.raw(), sr.raw(), si.raw(), s);
            mpfr_ui_sub(qr.raw(), 1, qr.raw(), RN);
            mpfr_neg(qi.raw(), qi.raw(), RN);
            if (!cdiv(wr.raw(), wi.raw(), nr.raw(), ni.raw(), qr.raw(), qi.raw(), s)) {
                mpfr_set(wr.raw(), nr.raw(), RN);
                mpfr_set(wi.raw(), ni.raw(), RN);
            }
            mpfr_sub(z.re[ii].raw(), z.re[ii].raw(), wr.raw(), RN);
            mpfr_sub(z.im[ii].raw(), z.im[ii].raw(), wi.raw(), RN);
            // Converged when |w| <= 2^-(prec-8) * (1 + |z_i|).
            cabs(s.t1.raw(), wr.raw(), wi.raw());
            cabs(s.t2.raw(), z.re[ii].raw(), z.im[ii].raw());
            mpfr_add_ui(s.t2.raw(), s.t2.raw(), 1, RN);
            mpfr_mul_2si(s.t2.raw(), s.t2.raw(), -(prec - 8), RN);
            if (mpfr_cmp(s.t1.raw(), s.t2.raw()) > 0) converged = false;
        }
        if (converged) break;
    }
    return z;
}

/* Newton polish of each candidate separately at full precision. */
void polish(const UPoly<QOmega>& p, const UPoly<QOmega>& dp, Candidates& z, mpfr_prec_t prec,
            int steps) {
    CPoly cp = to_cpoly(p, prec), cd = to_cpoly(dp, prec);
    Scratch s(prec);
    MpfrVal wr(prec), wi(prec), pr(prec), pi(prec), dr(prec), di(prec), nr(prec), ni(prec);
    for (std::size_t i = 0; i < z.re.size(); ++i) {
        // Lift to the working precision.
        MpfrVal zr(prec), zi(prec);
        mpfr_set(zr.raw(), z.re[i].raw(), RN);
        mpfr_set(zi.raw(), z.im[i].raw(), RN);
        for (int k = 0; k < steps; ++k) {
            ceval(pr.raw(), pi.raw(), cp, zr.raw(), zi.raw(), s, wr, wi);
            if (mpfr_zero_p(pr.raw()) && mpfr_zero_p(pi.raw())) break;
            ceval(dr.raw(), di.raw(), cd, zr.raw(), zi.raw(), s, wr, wi);
            if (!cdiv(nr.raw(), ni.raw(), pr.raw(), pi.raw(), dr.raw(), di.raw(), s)) break;
            mpfr_sub(zr.raw(), zr.raw(), nr.raw(), RN);
            mpfr_sub(zi.raw(), zi.raw(), ni.raw(), RN);
            cabs(s.t1.raw(), nr.raw(), ni.raw());
            cabs(s.t2.raw(), zr.raw(), zi.raw());
            mpfr_add_ui(s.t2.raw(), s.t2.raw(), 1, RN);
            mpfr_mul_2si(s.t2.raw(), s.t2.raw(), -(prec - 4), RN);
            if (mpfr_cmp(s.t1.raw(), s.t2.raw()) <= 0) break;
        }
        z.re[i] = std::move(zr);
        z.im[i] = std::move(zi);
    }
}

/* Ball-arithmetic Horner at an exact dyadic point. */
ComplexBall ball_eval(const std::vector<ComplexBall>& coeffs, const ComplexBall& z) {
    ComplexBall v = coeffs.back();
    for (std::size_t k = coeffs.size() - 1; k-- > 0;) v = v * z + coeffs[k];
    return v;
}

/* Wraps each candidate in an inclusion disk of radius n*|p(z)|/|p'(z)| with
 * certified bounds.  Empty result means certification failed. */
std::vector<ComplexBall> certify(const UPoly<QOmega>& p, const UPoly<QOmega>& dp,
                                 const Candidates& z, mpfr_prec_t prec) {
    long n = p.degree();
    std::vector<ComplexBall> pc, dc;
    for (const auto& c : p.coeffs()) pc.push_back(ComplexBall::from_qomega(c, prec));
    for (const auto& c : dp.coeffs()) dc.push_back(ComplexBall::from_qomega(c, prec));
    std::vector<ComplexBall> disks;
    for (std::size_t i = 0; i < z.re.size(); ++i) {
        ComplexBall Z = ComplexBall::from_midpoint(z.re[i], z.im[i]);
        ComplexBall P = ball_eval(pc, Z);
        ComplexBall D = ball_eval(dc, Z);
        MpfrVal dlow = D.abs_lower();
        if (dlow.is_zero()) return {};
        MpfrVal r(ComplexBall::radius_precision);
        mpfr_div(r.raw(), P.abs_upper().raw(), dlow.raw(), MPFR_RNDU);
        mpfr_mul_ui(r.raw(), r.raw(), static_cast<unsigned long>(n), MPFR_RNDU);
        Z.add_error(r);
        disks.push_back(std::move(Z));
    }
    for (std::size_t i = 0; i < disks.size(); ++i)
        for (std::size_t j = i + 1; j < disks.size(); ++j)
            if (!disks[i].certainly_disjoint(disks[j])) return {};
    return disks;
}

} // namespace

std::vector<ComplexBall> isolate_roots(const UPoly<QOmega>& p, const RootIsolationOptions& opts) {
    if (p.is_zero()) throw invariant_error("isolate_roots: zero polynomial");
    if (opts.precision_bits < 64) throw invariant_error("isolate_roots: need at least 64 bits");
    long n = p.degree();
    if (n == 0) return {};
    if (n == 1) {
        QOmega root = -(p[0] / p[1]);
        return {ComplexBall::from_qomega(root, opts.precision_bits)};
    }
    UPoly<QOmega> dp = p.derivative();
    if (upoly_gcd(p, dp).degree() != 0)
        throw invariant_error("isolate_roots: input has repeated roots");

    // Cheap candidates first, then certified at the requested precision; a
    // full-precision retry covers clusters the warmup could not resolve.
    Candidates z = aberth(p, dp, 64);
    polish(p, dp, z, opts.precision_bits, opts.max_newton_steps);
    std::vector<ComplexBall> disks = certify(p, dp, z, opts.precision_bits);
    if (disks.empty()) {
        z = aberth(p, dp, opts.precision_bits);
        polish(p, dp, z, opts.precision_bits, opts.max_newton_steps);
        disks = certify(p, dp, z, opts.precision_bits);
    }
    if (disks.empty())
        throw PrecisionExhausted("isolate_roots: could not separate " + std::to_string(n) +
                                 " roots at " + std::to_string(opts.precision_bits) + " bits");
    std::sort(disks.begin(), disks.end(), [](const ComplexBall& a, const ComplexBall& b) {
        int c = compare(a.mid_re(), b.mid_re());
        if (c != 0) return c < 0;
        return compare(a.mid_im(), b.mid_im()) < 0;
    });
    return disks;
}

} // namespace tpt
