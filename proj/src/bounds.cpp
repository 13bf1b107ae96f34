#include "listlab/bounds.hpp"

#include <cmath>

#include "listlab/attack_params.hpp"
#include "listlab/error.hpp"
#include "listlab/parallel.hpp"

namespace listlab {

namespace {

void require(bool cond, const char* precondition) {
    if (!cond) throw DomainError(std::string("precondition violated: ") + precondition);
}

BoundReport single_value(const std::string& id, const BoundParams& in, double value) {
    BoundReport r;
    r.bound_id = id;
    r.inputs = in;
    r.lhs = r.rhs = value;
    r.margin = 0.0;
    r.satisfied = true;
    return r;
}

double p_check(const BoundParams& in) {
    require(in.p > Rational(0) && in.p < Rational(1, 2), "p in (0, 1/2)");
    return in.p.to_double();
}

}  // namespace

BoundReport rate_bound(const std::string& bound_id, const BoundParams& params) {
    if (bound_id == "thm10_lower") {
        double p = p_check(params);
        require(params.L >= 1, "L >= 1");
        require(params.eps >= Rational(0), "eps >= 0");
        double rate = 1.0 - entropy(p) - 1.0 / double(params.L) - params.eps.to_double();
        auto r = single_value(bound_id, params, rate);
        r.aux["rate"] = rate;
        return r;
    }
    if (bound_id == "thm11_upper") {
        double p = p_check(params);
        require(params.L >= 1, "L >= 1");
        Rational pr = params.p;
        Rational one_2p = Rational(1) - Rational(2) * pr;
        Rational lambda_star = pr + pr.pow(3) * one_2p * one_2p / Rational(12 * params.L);
        Rational penalty = pr.pow(4) * one_2p * one_2p / Rational(48 * params.L * params.L);
        double rate = entropy(lambda_star.to_double()) - entropy(p) - penalty.to_double();
        auto r = single_value(bound_id, params, rate);
        r.aux["lambda_star"] = lambda_star.to_double();
        r.aux["rate"] = rate;
        return r;
    }
    if (bound_id == "thm15_zero_rate") {
        p_check(params);
        require(params.L >= 1, "L >= 1");
        Rational lambda = params.p + Rational(1, 2) * params.p.pow(params.L);
        Rational cap = Rational(2 * params.L * params.L) / params.p;
        auto r = single_value(bound_id, params, cap.to_double());
        r.aux["lambda"] = lambda.to_double();
        r.aux["size_cap"] = cap.to_double();
        return r;
    }
    if (bound_id == "thm15_rate") {
        double p = p_check(params);
        require(params.L >= 1, "L >= 1");
        Rational penalty =
            Rational(1, 4) * (Rational(1) - Rational(2) * params.p) * params.p.pow(params.L);
        double rate = 1.0 - entropy(p) - penalty.to_double();
        auto r = single_value(bound_id, params, rate);
        r.aux["rate"] = rate;
        return r;
    }
    if (bound_id == "thm16_zero_rate") {
        p_check(params);
        require(params.L >= 1, "L >= 1");
        Rational lambda = params.p + params.p.pow(params.L) / Rational(2 * params.L);
        Rational cap = Rational(2 * params.L * params.L) / lambda;
        auto r = single_value(bound_id, params, cap.to_double());
        r.aux["lambda"] = lambda.to_double();
        r.aux["size_cap"] = cap.to_double();
        return r;
    }
    if (bound_id == "thm18_params") {
        double p = p_check(params);
        require(params.L >= 1, "L >= 1");
        double b = bias_exponent_scale(params.p).to_double();
        require(double(params.L) >= std::log2(32.0 / b) / (2.0 * b),
                "L >= log2(32/b) / (2b)");
        double eps = std::exp(-b * double(params.L));
        double lambda_cap = p + 5.0 * eps;
        double rate = std::min(eps * eps, eps / (6.0 * double(params.L)));
        double lambda_prime = p + 4.0 * eps;
        // side condition 1/2 - lambda' >= (1/2 - p)/2
        bool side = 0.5 - lambda_prime >= 0.5 * (0.5 - p);
        auto r = single_value(bound_id, params, rate);
        r.aux["b"] = b;
        r.aux["eps"] = eps;
        r.aux["lambda_cap"] = lambda_cap;
        r.aux["rate"] = rate;
        r.aux["side_condition_ok"] = side ? 1.0 : 0.0;
        r.satisfied = side;
        return r;
    }
    if (bound_id == "lemma19_interval") {
        double p = p_check(params);
        require(params.lambda > params.p && params.lambda <= Rational(1, 2),
                "lambda in (p, 1/2]");
        require(params.gamma > Rational(0), "gamma > 0");
        double base = entropy(params.lambda.to_double()) - entropy(p);
        double a2 = attack_alpha2(params.p, params.lambda).to_double();
        BoundReport r;
        r.bound_id = bound_id;
        r.inputs = params;
        r.lhs = base - params.gamma.to_double();
        r.rhs = base - a2 * params.gamma.to_double();
        r.margin = r.rhs - r.lhs;
        r.satisfied = r.margin >= -1e-12;
        r.aux["alpha2"] = a2;
        return r;
    }
    throw DomainError("unknown bound id: " + bound_id);
}

// ---- inequality sweeps ----------------------------------------------------

namespace {

constexpr double kNearTie = 1e-9;
constexpr uint32_t kHpBits = 96;

double hp_margin(const LogLinear& lhs, const LogLinear& rhs) {
    LogLinear diff = rhs;
    diff.add_scaled(Rational(-1), lhs);
    return diff.to_fixed(kHpBits).to_double() * std::pow(2.0, -double(kHpBits));
}

LogLinear a1_expr(const Rational& p, const Rational& lambda) {
    Rational onemp = Rational(1) - p;
    LogLinear e;
    e.add_log(onemp, onemp / lambda);
    e.add_log(p, p / (Rational(1) - lambda));
    return e;
}

struct SweepContext {
    SweepStats stats;
    const SweepSink* sink;
    bool have_min = false;

    void record(SweepPoint&& pt) {
        ++stats.points;
        if (pt.skipped) {
            ++stats.skipped;
        } else {
            if (!pt.satisfied) ++stats.violations;
            if (!have_min || pt.margin < stats.min_margin) {
                stats.min_margin = pt.margin;
                stats.tightest = pt;
                have_min = true;
            }
        }
        if (sink && *sink) (*sink)(pt);
    }
};

void merge_stats(SweepStats& into, const SweepStats& from) {
    bool from_has_min = from.points > from.skipped;
    bool into_has_min = into.points > into.skipped;
    bool take = from_has_min && (!into_has_min || from.min_margin < into.min_margin);
    into.points += from.points;
    into.violations += from.violations;
    into.skipped += from.skipped;
    if (take) {
        into.min_margin = from.min_margin;
        into.tightest = from.tightest;
    }
}

int64_t lowest_multiple_above(const Rational& value, const Rational& step, bool strict) {
    Rational m = value / step;
    BigInt c = m.ceil();
    if (strict && Rational(c) * step <= value) c += BigInt(1);
    return c.to_int64();
}

int64_t highest_multiple_below(const Rational& value, const Rational& step, bool strict) {
    Rational m = value / step;
    BigInt f = m.floor();
    if (strict && Rational(f) * step >= value) f -= BigInt(1);
    return f.to_int64();
}

}  // namespace

SweepStats sweep_inequality(const std::string& fact_id, const SweepOptions& opt,
                            const SweepSink* sink) {
    const double step_d = opt.step.to_double();
    const double tol = opt.tolerance;
    auto rat = [&](int64_t mult) { return Rational(mult) * opt.step; };

    if (fact_id == "fact24") {
        SweepContext ctx{{}, sink};
        int64_t z_lo = 1, z_hi = highest_multiple_below(Rational(1), opt.step, true);
        const double log2e = 1.4426950408889634;
        for (int64_t zm = z_lo; zm <= z_hi; ++zm) {
            double z = double(zm) * step_d;
            double h = entropy(z);
            double zlog = z * std::log2(1.0 / z);
            double lo = zlog + log2e * (z - z * z);
            double hi = zlog + log2e * z;
            double margin = std::min(h - lo, hi - h);
            if (std::abs(margin) < kNearTie) {
                Rational zr = rat(zm);
                LogLinear hz = LogLinear::entropy2(zr);
                LogLinear lo_e, hi_e;
                lo_e.add_log(-zr, zr).add_log2e(zr - zr * zr);
                hi_e.add_log(-zr, zr).add_log2e(zr);
                margin = std::min(hp_margin(lo_e, hz), hp_margin(hz, hi_e));
            }
            SweepPoint pt;
            pt.z_mult = zm;
            pt.lhs = lo;
            pt.rhs = hi;
            pt.margin = margin;
            pt.satisfied = margin >= -tol;
            ctx.record(std::move(pt));
        }
        return ctx.stats;
    }

    bool is23 = fact_id == "fact23", is25 = fact_id == "lemma25", is26 = fact_id == "lemma26";
    if (!is23 && !is25 && !is26) throw DomainError("unknown fact id: " + fact_id);

    int64_t p_lo = lowest_multiple_above(opt.p_lo, opt.step, false);
    int64_t p_hi = highest_multiple_below(opt.p_hi, opt.step, false);
    int64_t half = highest_multiple_below(Rational(1, 2), opt.step, false);
    int64_t lam_hi = highest_multiple_below(opt.lambda_hi, opt.step, false);
    if (p_lo < 1) p_lo = 1;

    // entropy at every grid multiple up to lambda_hi, shared by all rows
    std::vector<double> hgrid(size_t(std::max<int64_t>(lam_hi, p_hi) + 1), 0.0);
    for (size_t m = 1; m < hgrid.size(); ++m) hgrid[m] = entropy(double(m) * step_d);

    uint64_t tasks = p_hi >= p_lo ? uint64_t(p_hi - p_lo + 1) : 0;
    std::vector<SweepStats> per_p(tasks);
    uint32_t workers = (sink && *sink) ? 1 : opt.workers;

    parallel_for(tasks, workers, [&](uint64_t task) {
        int64_t pm = p_lo + int64_t(task);
        SweepContext ctx{{}, sink};
        double p = double(pm) * step_d;
        double hp = hgrid[size_t(pm)];
        // lemma26 slack range depends only on p: 0 < eps < (1-2p)/(2p)
        int64_t e_hi = 0;
        if (is26) {
            Rational eps_cap = (Rational(1) - Rational(2) * rat(pm)) / (Rational(2) * rat(pm));
            e_hi = eps_cap.sign() > 0 ? highest_multiple_below(eps_cap, opt.step, true) : 0;
        }
        // lambda must stay within (p, 1/2] for these inequalities
        int64_t l_hi = std::min(lam_hi, half);
        if (l_hi <= pm) {
            SweepPoint pt;
            pt.p_mult = pm;
            pt.skipped = "no admissible lambda: requires p < lambda <= 1/2";
            ctx.record(std::move(pt));
            per_p[task] = ctx.stats;
            return;
        }
        for (int64_t lm = pm + 1; lm <= l_hi; ++lm) {
            double lambda = double(lm) * step_d;
            double hl = hgrid[size_t(lm)];
            if (is23) {
                double lhs = hl - hp;
                double rhs = 0.5 * (1.0 - 2.0 * p) * (lambda - p);
                double margin = lhs - rhs;
                if (std::abs(margin) < kNearTie) {
                    Rational pr = rat(pm), lr = rat(lm);
                    LogLinear l = LogLinear::entropy2(lr);
                    l.add_scaled(Rational(-1), LogLinear::entropy2(pr));
                    LogLinear r((Rational(1) - Rational(2) * pr) * (lr - pr) * Rational(1, 2));
                    margin = hp_margin(r, l);
                }
                SweepPoint pt;
                pt.p_mult = pm;
                pt.lambda_mult = lm;
                pt.lhs = hl - hp;
                pt.rhs = rhs;
                pt.margin = margin;
                pt.satisfied = margin >= -tol;
                ctx.record(std::move(pt));
                continue;
            }
            double a1 = (1.0 - p) * std::log2((1.0 - p) / lambda) +
                        p * std::log2(p / (1.0 - lambda));
            if (is25) {
                double rhs = (1.0 - 2.0 * p) * (hl - hp) / (lambda - p) +
                             5.0 / p * (lambda - p);
                double margin = rhs - a1;
                if (std::abs(margin) < kNearTie) {
                    Rational pr = rat(pm), lr = rat(lm);
                    LogLinear rhs_e;
                    Rational coeff = (Rational(1) - Rational(2) * pr) / (lr - pr);
                    rhs_e.add_scaled(coeff, LogLinear::entropy2(lr));
                    rhs_e.add_scaled(-coeff, LogLinear::entropy2(pr));
                    rhs_e.add_const(Rational(5) * (lr - pr) / pr);
                    margin = hp_margin(a1_expr(pr, lr), rhs_e);
                }
                SweepPoint pt;
                pt.p_mult = pm;
                pt.lambda_mult = lm;
                pt.lhs = a1;
                pt.rhs = rhs;
                pt.margin = margin;
                pt.satisfied = margin >= -tol;
                ctx.record(std::move(pt));
                continue;
            }
            // lemma26: admissible slack 0 < eps < (1-2p)/(2p)
            double a2 = 2.0 / (p * p);
            double lp = lambda - p;
            double b2term = 3.0 * lp * lp / (p * p * (1.0 - 2.0 * p) * (1.0 - 2.0 * p));
            if (e_hi < 1) {
                SweepPoint pt;
                pt.p_mult = pm;
                pt.lambda_mult = lm;
                pt.skipped = "no admissible eps: requires 0 < eps < (1-2p)/(2p)";
                ctx.record(std::move(pt));
                continue;
            }
            for (int64_t em = 1; em <= e_hi; ++em) {
                double eps = double(em) * step_d;
                double beta = lp / (1.0 - 2.0 * p + 2.0 * p * eps);
                double lhs = a1 * beta + a2 * beta * beta;
                double rhs = hl - hp - 0.5 * p * eps * lp + b2term;
                double margin = rhs - lhs;
                if (std::abs(margin) < kNearTie) {
                    Rational pr = rat(pm), lr = rat(lm), er = rat(em);
                    Rational betar = (lr - pr) / (Rational(1) - Rational(2) * pr +
                                                  Rational(2) * pr * er);
                    LogLinear lhs_e;
                    lhs_e.add_scaled(betar, a1_expr(pr, lr));
                    lhs_e.add_const(Rational(2) / (pr * pr) * betar * betar);
                    LogLinear rhs_e = LogLinear::entropy2(lr);
                    rhs_e.add_scaled(Rational(-1), LogLinear::entropy2(pr));
                    Rational one_2p = Rational(1) - Rational(2) * pr;
                    rhs_e.add_const(Rational(3) * (lr - pr) * (lr - pr) /
                                        (pr * pr * one_2p * one_2p) -
                                    pr * er * (lr - pr) / Rational(2));
                    margin = hp_margin(lhs_e, rhs_e);
                }
                SweepPoint pt;
                pt.p_mult = pm;
                pt.lambda_mult = lm;
                pt.eps_mult = em;
                pt.lhs = lhs;
                pt.rhs = rhs;
                pt.margin = margin;
                pt.satisfied = margin >= -tol;
                ctx.record(std::move(pt));
            }
        }
        per_p[task] = ctx.stats;
    });

    SweepStats total;
    for (const auto& s : per_p) merge_stats(total, s);
    return total;
}

// ---- exact overlap-decay expectation --------------------------------------

Rational overlap_decay_expectation(uint32_t n, const Rational& p) {
    Rational en = p * Rational((long long)n);
    if (!en.is_integer()) throw DomainError("pn must be integral");
    long long s = en.num().to_int64();
    if (s < 0 || s > (long long)n) throw DomainError("p outside [0, 1]");
    long long m = (long long)n - s;  // (1-p)n marked, pn sampled
    long long hi = std::min(m, s);
    // sum_t f(n, m, s, t) 2^-t over a common denominator C(n, s) 2^hi
    BigInt num(0);
    for (long long t = 0; t <= hi; ++t)
        num += binomial(m, t) * binomial(n - m, s - t) * (BigInt(1) << size_t(hi - t));
    return Rational(num, binomial((long long)n, s) * (BigInt(1) << size_t(hi)));
}

DecayLadder overlap_decay_ladder(const Rational& p, const std::vector<uint32_t>& n_ladder) {
    DecayLadder out;
    double threshold = (-p * (Rational(1) - p) / Rational(8)).to_double();
    double prev = 0.0;
    for (size_t i = 0; i < n_ladder.size(); ++i) {
        uint32_t n = n_ladder[i];
        DecayRow row;
        row.n = n;
        row.expectation = overlap_decay_expectation(n, p);
        row.exponent =
            (row.expectation.num().log2_abs() - row.expectation.den().log2_abs()) / double(n);
        row.threshold = threshold;
        row.below_threshold = row.exponent < threshold;
        if (i > 0 && row.exponent >= prev) out.monotone_decreasing = false;
        if (row.below_threshold && out.first_n_below == 0) out.first_n_below = n;
        prev = row.exponent;
        out.rows.push_back(std::move(row));
    }
    return out;
}

Rational chebyshev_failure_bound(const Rational& mean, const Rational& variance) {
    if (!(mean > Rational(0))) throw DomainError("mean must be positive");
    if (variance < Rational(0)) throw DomainError("variance must be nonnegative");
    Rational bound = variance / (mean * mean);
    return bound > Rational(1) ? Rational(1) : bound;
}

}  // namespace listlab
