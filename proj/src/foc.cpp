#include "growthlab/foc.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "growthlab/log_domain.hpp"

namespace growthlab {

namespace {

void check_domain(const CandidateState& s) {
    if (!(s.c > 0.0)) throw std::domain_error("candidate state: c must be positive");
    if (!(s.k > 0.0)) throw std::domain_error("candidate state: k must be positive");
    if (!(s.h_p > 0.0) || !(s.h_d > 0.0) || !(s.h_p + s.h_d < 1.0))
        throw std::domain_error("candidate state: need 0 < h_p, 0 < h_d, h_p + h_d < 1");
    if (!(s.u_p > 0.0) || !(s.u_p < 1.0) || !(s.u_d > 0.0) || !(s.u_d < 1.0))
        throw std::domain_error("candidate state: need 0 < u_p < 1");
}

/// Internal unknown vector for the Newton iteration. u_d rather than u_p:
/// corner solutions have u_d ~ 1e-9, and representing it as 1 - u_p caps the
/// attainable residual accuracy at the ulp of 1.
struct Vec5 {
    std::array<double, 5> x;  // c, h_p, h_d, u_d, k
};

struct ResidualEval {
    std::array<double, 5> r;    // r_u, r_hp, r_hd, r_lambda, r_k
    std::array<double, 5> rel;
    double sup_rel;
};

ResidualEval eval(const EconomyParams& p, const Vec5& v, const FocOptions& opt) {
    const double c = v.x[0], h_p = v.x[1], h_d = v.x[2], u_d = v.x[3], k = v.x[4];
    const double d = 1.0 - h_p - h_d;
    const double u_p = 1.0 - u_d;

    const double y_p = log_weighted_product(
        {{p.A_p(), 1.0}, {u_p, p.a1()}, {k, p.a1()}, {h_p, p.a2()}});
    const double y_d = log_weighted_product(
        {{p.A_d(), 1.0}, {u_d, p.b1()}, {k, p.b1()}, {h_d, p.b2()}, {d, p.b3()}});

    // core = (c^sigma1 d^sigma2)^(1-sigma) = (1 - sigma) u(c, d); positive for
    // any sigma != 1, so lambda = sigma1 core / c stays well defined.
    const double core = std::exp((1.0 - p.sigma()) *
                                 (p.sigma1() * std::log(c) + p.sigma2() * std::log(d)));
    const double lambda = p.sigma1() * core / c;

    const double t_u1 = p.a1() * y_p / u_p;
    const double t_u2 = p.b1() * y_d / u_d;
    const double t_hp1 = lambda * p.a2() * y_p / h_p;
    const double t_hp2 = lambda * p.b3() * y_d / d;
    const double t_hp3 = p.sigma2() * core / d;
    const double t_hd1 = lambda * p.b2() * y_d / h_d;
    const double gig_capital_term = opt.a2_gig_capital_return ? p.a2() * y_d : p.b1() * y_d;
    const double t_l1 = p.a1() * y_p / k;
    const double t_l2 = gig_capital_term / k;
    const double t_l3 = p.delta() + p.rho();
    const double t_k4 = (p.delta() + p.n()) * k;

    ResidualEval e;
    e.r = {t_u1 - t_u2,
           t_hp1 - t_hp2 - t_hp3,
           t_hd1 - t_hp2 - t_hp3,
           t_l1 + t_l2 - t_l3,
           y_p + y_d - c - t_k4};
    const std::array<double, 5> scale = {
        std::max(std::fabs(t_u1), std::fabs(t_u2)),
        std::max({std::fabs(t_hp1), std::fabs(t_hp2), std::fabs(t_hp3)}),
        std::max({std::fabs(t_hd1), std::fabs(t_hp2), std::fabs(t_hp3)}),
        std::max({std::fabs(t_l1), std::fabs(t_l2), std::fabs(t_l3)}),
        std::max({std::fabs(y_p), std::fabs(y_d), std::fabs(c), std::fabs(t_k4)})};
    e.sup_rel = 0.0;
    for (int i = 0; i < 5; ++i) {
        e.rel[i] = scale[i] > 0.0 ? std::fabs(e.r[i]) / scale[i] : 0.0;
        e.sup_rel = std::max(e.sup_rel, e.rel[i]);
    }
    return e;
}

Vec5 project(Vec5 v, double margin) {
    v.x[0] = std::max(v.x[0], margin);                       // c
    v.x[1] = std::max(v.x[1], margin);                       // h_p
    v.x[2] = std::max(v.x[2], margin);                       // h_d
    if (double s = v.x[1] + v.x[2]; s > 1.0 - margin) {
        const double f = (1.0 - margin) / s;
        v.x[1] *= f;
        v.x[2] *= f;
    }
    v.x[3] = std::clamp(v.x[3], margin, 1.0 - margin);       // u_d
    v.x[4] = std::max(v.x[4], margin);                       // k
    return v;
}

/// Solves the 5x5 system A s = b by Gaussian elimination with partial
/// pivoting. Returns false on a (numerically) singular matrix.
bool solve5(std::array<std::array<double, 5>, 5> A, std::array<double, 5> b,
            std::array<double, 5>& s) {
    for (int col = 0; col < 5; ++col) {
        int piv = col;
        for (int i = col + 1; i < 5; ++i)
            if (std::fabs(A[i][col]) > std::fabs(A[piv][col])) piv = i;
        if (A[piv][col] == 0.0 || !std::isfinite(A[piv][col])) return false;
        std::swap(A[col], A[piv]);
        std::swap(b[col], b[piv]);
        for (int i = col + 1; i < 5; ++i) {
            const double f = A[i][col] / A[col][col];
            if (f == 0.0) continue;
            for (int j = col; j < 5; ++j) A[i][j] -= f * A[col][j];
            b[i] -= f * b[col];
        }
    }
    for (int i = 4; i >= 0; --i) {
        double acc = b[i];
        for (int j = i + 1; j < 5; ++j) acc -= A[i][j] * s[j];
        s[i] = acc / A[i][i];
        if (!std::isfinite(s[i])) return false;
    }
    return true;
}

FocResiduals to_public(const ResidualEval& e) {
    FocResiduals r;
    r.r_c = 0.0;
    r.r_u = e.r[0];
    r.r_hp = e.r[1];
    r.r_hd = e.r[2];
    r.r_lambda = e.r[3];
    r.r_k = e.r[4];
    r.rel_u = e.rel[0];
    r.rel_hp = e.rel[1];
    r.rel_hd = e.rel[2];
    r.rel_lambda = e.rel[3];
    r.rel_k = e.rel[4];
    r.sup_norm = 0.0;
    for (double v : e.r) r.sup_norm = std::max(r.sup_norm, std::fabs(v));
    r.sup_norm_rel = e.sup_rel;
    return r;
}

Vec5 to_vec(const CandidateState& s) { return {{s.c, s.h_p, s.h_d, s.u_d, s.k}}; }

CandidateState to_state(const Vec5& v) {
    return {v.x[0], v.x[1], v.x[2], 1.0 - v.x[3], v.x[3], v.x[4]};
}

}  // namespace

DerivedQuantities derive(const EconomyParams& p, const CandidateState& s) {
    check_domain(s);
    DerivedQuantities q;
    q.d = s.d();
    q.u_d = s.u_d;
    q.y_p = log_weighted_product(
        {{p.A_p(), 1.0}, {s.u_p, p.a1()}, {s.k, p.a1()}, {s.h_p, p.a2()}});
    q.y_d = log_weighted_product(
        {{p.A_d(), 1.0}, {s.u_d, p.b1()}, {s.k, p.b1()}, {s.h_d, p.b2()}, {q.d, p.b3()}});
    q.u = utility_flow(s.c, q.d, p.prefs());
    q.lambda = (1.0 - p.sigma()) * p.sigma1() * q.u / s.c;
    return q;
}

FocResiduals residuals(const EconomyParams& p, const CandidateState& s,
                       const FocOptions& options) {
    check_domain(s);
    return to_public(eval(p, to_vec(s), options));
}

CandidateState default_guess(const EconomyParams& params) {
    VariantPolicy policy;
    policy.capital_weight = CapitalWeight::B1;
    policy.consumption_formula = ConsumptionFormula::SigmaRatio;
    return CandidateState::from_steady_state(solve(params, policy));
}

StrictSolveResult strict_solve(const EconomyParams& params, const SolverOptions& options) {
    return strict_solve(params, default_guess(params), options);
}

StrictSolveResult strict_solve(const EconomyParams& p, const CandidateState& guess,
                               const SolverOptions& opt) {
    StrictSolveResult out;
    Vec5 x = project(to_vec(guess), opt.box_margin);
    ResidualEval cur = eval(p, x, opt.foc);
    out.trace.push_back({0, cur.sup_rel, 0.0});

    if (cur.sup_rel < opt.tol) {
        out.state = to_state(x);
        out.residuals = to_public(cur);
        out.status = SolveStatus::Converged;
        out.iterations = 0;
        return out;
    }

    for (int iter = 1; iter <= opt.max_iter; ++iter) {
        // Central-difference Jacobian; perturbed points are projected into the
        // box, and each column divides by the realized coordinate difference.
        std::array<std::array<double, 5>, 5> J{};
        bool jac_ok = true;
        for (int j = 0; j < 5 && jac_ok; ++j) {
            const double h = opt.jacobian_rel_step * std::fabs(x.x[j]);
            Vec5 xp = x, xm = x;
            xp.x[j] += h;
            xm.x[j] -= h;
            xp = project(xp, opt.box_margin);
            xm = project(xm, opt.box_margin);
            const double denom = xp.x[j] - xm.x[j];
            if (denom == 0.0) {
                jac_ok = false;
                break;
            }
            const ResidualEval rp = eval(p, xp, opt.foc);
            const ResidualEval rm = eval(p, xm, opt.foc);
            for (int i = 0; i < 5; ++i) J[i][j] = (rp.r[i] - rm.r[i]) / denom;
        }

        std::array<double, 5> step{};
        std::array<double, 5> rhs{};
        for (int i = 0; i < 5; ++i) rhs[i] = -cur.r[i];
        if (!jac_ok || !solve5(J, rhs, step)) {
            out.state = to_state(x);
            out.residuals = to_public(cur);
            out.status = SolveStatus::SingularJacobian;
            out.iterations = iter - 1;
            return out;
        }

        double t = 1.0;
        bool accepted = false;
        for (int halving = 0; halving <= opt.max_halvings; ++halving) {
            Vec5 xt = x;
            for (int i = 0; i < 5; ++i) xt.x[i] += t * step[i];
            xt = project(xt, opt.box_margin);
            const ResidualEval rt = eval(p, xt, opt.foc);
            if (std::isfinite(rt.sup_rel) && rt.sup_rel < cur.sup_rel) {
                x = xt;
                cur = rt;
                out.trace.push_back({iter, cur.sup_rel, t});
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if (!accepted) {
            out.state = to_state(x);
            out.residuals = to_public(cur);
            out.status = SolveStatus::StalledLineSearch;
            out.iterations = iter - 1;
            return out;
        }
        if (cur.sup_rel < opt.tol) {
            out.state = to_state(x);
            out.residuals = to_public(cur);
            out.status = SolveStatus::Converged;
            out.iterations = iter;
            return out;
        }
    }

    out.state = to_state(x);
    out.residuals = to_public(cur);
    out.status = SolveStatus::MaxIterations;
    out.iterations = opt.max_iter;
    return out;
}

std::vector<FieldDelta> discrepancy_report(const EconomyParams& params,
                                           const SteadyState& closed,
                                           const CandidateState& strict) {
    const DerivedQuantities q = derive(params, strict);
    const auto rel = [](double a, double b) {
        return std::fabs(a - b) / std::max({std::fabs(a), std::fabs(b), 1e-300});
    };
    const std::array<std::pair<const char*, std::pair<double, double>>, 12> fields = {{
        {"h_p", {closed.h_p, strict.h_p}},
        {"h_d", {closed.h_d, strict.h_d}},
        {"y_p", {closed.y_p, q.y_p}},
        {"y_d", {closed.y_d, q.y_d}},
        {"y", {closed.y, q.y_p + q.y_d}},
        {"c", {closed.c, strict.c}},
        {"d", {closed.d, q.d}},
        {"u", {closed.u, q.u}},
        {"u_p", {closed.u_p, strict.u_p}},
        {"u_d", {closed.u_d, strict.u_d}},
        {"k", {closed.k, strict.k}},
        {"lambda", {closed.lambda, q.lambda}},
    }};
    std::vector<FieldDelta> report;
    report.reserve(fields.size());
    for (const auto& [name, pair] : fields)
        report.push_back({name, pair.first, pair.second, rel(pair.first, pair.second)});
    return report;
}

}  // namespace growthlab
