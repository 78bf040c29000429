#include "fewnomial/solver.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace fewnomial {

namespace {

struct Term {
    double coeff;
    std::vector<double> w;
};

struct Poly {
    std::vector<Term> terms;
};

// x_m = sign_m * exp(u_m): each monomial becomes sign * exp(w . u).
std::vector<Poly> compile(const FewnomialSystem& sys) {
    std::vector<Poly> out;
    for (const auto& poly : sys.polynomials) {
        Poly p;
        for (const auto& [e, c] : poly.terms()) {
            Term t;
            t.coeff = c.get_d();
            for (long v : e)
                t.w.push_back(static_cast<double>(v));
            p.terms.push_back(std::move(t));
        }
        out.push_back(std::move(p));
    }
    return out;
}

double term_sign(const Term& t, const std::vector<int>& orthant) {
    double s = 1.0;
    for (std::size_t m = 0; m < orthant.size(); ++m)
        if (orthant[m] < 0 && std::lround(t.w[m]) % 2 != 0)
            s = -s;
    return s;
}

double safe_exp(double v) {
    return std::exp(std::min(v, 700.0));
}

// Interval of p over the box, treating each exp(w.u) exactly.
std::pair<double, double> eval_interval(const Poly& p, const std::vector<double>& signs,
                                        const std::vector<double>& lo,
                                        const std::vector<double>& hi) {
    double sum_lo = 0.0, sum_hi = 0.0;
    for (std::size_t t = 0; t < p.terms.size(); ++t) {
        const Term& term = p.terms[t];
        double a = 0.0, b = 0.0;
        for (std::size_t m = 0; m < lo.size(); ++m) {
            if (term.w[m] >= 0) {
                a += term.w[m] * lo[m];
                b += term.w[m] * hi[m];
            } else {
                a += term.w[m] * hi[m];
                b += term.w[m] * lo[m];
            }
        }
        double c = term.coeff * signs[t];
        double mlo = safe_exp(a), mhi = safe_exp(b);
        if (c >= 0) {
            sum_lo += c * mlo;
            sum_hi += c * mhi;
        } else {
            sum_lo += c * mhi;
            sum_hi += c * mlo;
        }
    }
    // Slack for rounding in the sums.
    double slack = 1e-12 * (std::abs(sum_lo) + std::abs(sum_hi) + 1.0);
    return {sum_lo - slack, sum_hi + slack};
}

struct PointEval {
    double value = 0.0;
    double magnitude = 0.0;          // sum of |term| values
    std::vector<double> grad;        // d/du_m
};

PointEval eval_point(const Poly& p, const std::vector<double>& signs,
                     const std::vector<double>& u) {
    PointEval ev;
    ev.grad.assign(u.size(), 0.0);
    for (std::size_t t = 0; t < p.terms.size(); ++t) {
        const Term& term = p.terms[t];
        double dot = 0.0;
        for (std::size_t m = 0; m < u.size(); ++m)
            dot += term.w[m] * u[m];
        double v = term.coeff * signs[t] * safe_exp(dot);
        ev.value += v;
        ev.magnitude += std::abs(v);
        for (std::size_t m = 0; m < u.size(); ++m)
            ev.grad[m] += term.w[m] * v;
    }
    return ev;
}

// Solve J * dx = -g in place; returns false when J is numerically singular.
bool linear_solve(std::vector<std::vector<double>> j, std::vector<double> g,
                  std::vector<double>& dx) {
    const std::size_t n = g.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(j[r][c]) > std::abs(j[piv][c]))
                piv = r;
        if (std::abs(j[piv][c]) < 1e-300)
            return false;
        std::swap(j[c], j[piv]);
        std::swap(g[c], g[piv]);
        for (std::size_t r = c + 1; r < n; ++r) {
            double f = j[r][c] / j[c][c];
            for (std::size_t cc = c; cc < n; ++cc)
                j[r][cc] -= f * j[c][cc];
            g[r] -= f * g[c];
        }
    }
    dx.assign(n, 0.0);
    for (std::size_t c = n; c-- > 0;) {
        double s = -g[c];
        for (std::size_t cc = c + 1; cc < n; ++cc)
            s -= j[c][cc] * dx[cc];
        dx[c] = s / j[c][c];
    }
    return true;
}

double det_with_rows(std::vector<std::vector<double>> j) {
    const std::size_t n = j.size();
    double det = 1.0;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(j[r][c]) > std::abs(j[piv][c]))
                piv = r;
        if (piv != c) {
            std::swap(j[c], j[piv]);
            det = -det;
        }
        if (j[c][c] == 0.0)
            return 0.0;
        det *= j[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            double f = j[r][c] / j[c][c];
            for (std::size_t cc = c; cc < n; ++cc)
                j[r][cc] -= f * j[c][cc];
        }
    }
    return det;
}

struct OrthantContext {
    const std::vector<Poly>* polys;
    std::vector<std::vector<double>> signs;  // per equation, per term
    std::vector<int> orthant;
};

bool newton(const OrthantContext& ctx, std::vector<double>& u, double box, double margin) {
    const std::size_t n = u.size();
    for (int iter = 0; iter < 80; ++iter) {
        std::vector<double> g(n);
        std::vector<std::vector<double>> j(n, std::vector<double>(n));
        for (std::size_t i = 0; i < n; ++i) {
            PointEval ev = eval_point((*ctx.polys)[i], ctx.signs[i], u);
            g[i] = ev.value;
            j[i] = ev.grad;
        }
        std::vector<double> dx;
        if (!linear_solve(j, g, dx))
            return false;
        double step = 0.0;
        for (std::size_t m = 0; m < n; ++m) {
            u[m] += dx[m];
            step = std::max(step, std::abs(dx[m]));
            if (std::abs(u[m]) > box + margin)
                return false;
        }
        if (step < 1e-13)
            return true;
    }
    return false;
}

struct Box {
    std::vector<double> lo, hi;
};

// Plain Newton in the original x-coordinates. Cells at the edge of the log
// box often chase a solution on a coordinate hyperplane (x_m -> 0), which is
// invisible to interval exclusion in u-space; returns true when the iteration
// lands on such a non-torus solution.
bool converges_to_axis(const FewnomialSystem& sys, std::vector<double> x) {
    const int n = sys.n;
    for (int iter = 0; iter < 60; ++iter) {
        std::vector<double> g(n);
        std::vector<std::vector<double>> jac(n, std::vector<double>(n, 0.0));
        for (int i = 0; i < n; ++i) {
            double mag = 0.0;
            for (const auto& [e, c] : sys.polynomials[i].terms()) {
                double t = c.get_d();
                for (int m = 0; m < n; ++m)
                    t *= std::pow(x[m], static_cast<double>(e[m]));
                if (!std::isfinite(t))
                    return false;
                g[i] += t;
                mag += std::abs(t);
                for (int m = 0; m < n; ++m) {
                    if (e[m] == 0)
                        continue;
                    double d = c.get_d() * static_cast<double>(e[m]);
                    for (int mm = 0; mm < n; ++mm)
                        d *= std::pow(x[mm], static_cast<double>(e[mm] - (mm == m ? 1 : 0)));
                    if (!std::isfinite(d))
                        return false;
                    jac[i][m] += d;
                }
            }
            g[i] /= std::max(mag, 1e-300);
            for (int m = 0; m < n; ++m)
                jac[i][m] /= std::max(mag, 1e-300);
        }
        std::vector<double> dx;
        if (!linear_solve(jac, g, dx))
            return false;
        double step = 0.0, norm = 0.0;
        for (int m = 0; m < n; ++m) {
            x[m] += dx[m];
            step = std::max(step, std::abs(dx[m]));
            norm = std::max(norm, std::abs(x[m]));
        }
        if (step < 1e-12) {
            double near_axis = 1e-7 * (1.0 + norm);
            for (int m = 0; m < n; ++m)
                if (std::abs(x[m]) < near_axis)
                    return true;
            return false;
        }
    }
    return false;
}

// --- dedicated Gale-system search ------------------------------------------
//
// The cleared Gale polynomials expand p_i^alpha into many monomials, which
// makes term-wise interval exclusion hopeless. Working with the product form
// prod p_i^{a_i0} prod y^{a_ij} = 1 keeps every factor linear or monomial, so
// intervals stay tight: log|p_i| over a box is exact up to rounding.

struct GaleEval {
    const MixedStructure* ms;
    const IntMatrix* alphas;  // l x (n+l), canonical column order
    int l = 0;
    std::vector<int> block_of;        // flat y index -> equation block
    std::vector<int> offset_in_block; // flat y index -> j-1
    std::vector<double> coeff;        // a_{i,j} per flat index
    std::vector<double> b;            // a_{i,0} per block

    int alpha_col(int i, int j) const {
        int off = 0;
        for (int t = 0; t < i; ++t)
            off += ms->block_sizes[t] + 1;
        return off + j;
    }
    double a(int k, int i, int j) const { return alphas->at(k, alpha_col(i, j)).get_d(); }
};

GaleEval make_gale_eval(const MixedStructure& ms, const IntMatrix& alphas) {
    GaleEval ge;
    ge.ms = &ms;
    ge.alphas = &alphas;
    ge.l = ms.l;
    for (int i = 0; i < ms.n; ++i) {
        ge.b.push_back(ms.constant_coeffs[i].get_d());
        for (int j = 0; j < ms.block_sizes[i]; ++j) {
            ge.block_of.push_back(i);
            ge.offset_in_block.push_back(j);
            ge.coeff.push_back(ms.body_coeffs[i][j].get_d());
        }
    }
    return ge;
}

struct PInterval {
    double lo, hi;
    int sign;  // +1, -1, or 0 when the interval straddles zero
};

// p_i over the box y_j = sigma_j * exp([lo_j, hi_j]).
PInterval p_interval(const GaleEval& ge, int i, const std::vector<int>& sigma,
                     const std::vector<double>& lo, const std::vector<double>& hi) {
    double a = ge.b[i], b = ge.b[i];
    for (int v = 0; v < ge.l; ++v) {
        if (ge.block_of[v] != i)
            continue;
        double c = ge.coeff[v] * sigma[v];
        if (c >= 0) {
            a += c * safe_exp(lo[v]);
            b += c * safe_exp(hi[v]);
        } else {
            a += c * safe_exp(hi[v]);
            b += c * safe_exp(lo[v]);
        }
    }
    double slack = 1e-12 * (std::abs(a) + std::abs(b) + 1.0);
    a -= slack;
    b += slack;
    return {a, b, a > 0.0 ? 1 : (b < 0.0 ? -1 : 0)};
}

double p_at(const GaleEval& ge, int i, const std::vector<double>& y) {
    double v = ge.b[i];
    for (int t = 0; t < ge.l; ++t)
        if (ge.block_of[t] == i)
            v += ge.coeff[t] * y[t];
    return v;
}

// F_k(u) = log|P_k| and its gradient; requires all p_i != 0.
bool gale_value_grad(const GaleEval& ge, const std::vector<int>& sigma,
                     const std::vector<double>& u, std::vector<double>& f,
                     std::vector<std::vector<double>>& grad) {
    const int l = ge.l, n = ge.ms->n;
    std::vector<double> y(l);
    for (int v = 0; v < l; ++v)
        y[v] = sigma[v] * safe_exp(u[v]);
    std::vector<double> p(n);
    for (int i = 0; i < n; ++i) {
        p[i] = p_at(ge, i, y);
        if (p[i] == 0.0 || !std::isfinite(p[i]))
            return false;
    }
    f.assign(l, 0.0);
    grad.assign(l, std::vector<double>(l, 0.0));
    for (int k = 0; k < l; ++k) {
        for (int i = 0; i < n; ++i)
            f[k] += ge.a(k, i, 0) * std::log(std::abs(p[i]));
        for (int v = 0; v < l; ++v) {
            int i = ge.block_of[v];
            int j = ge.offset_in_block[v] + 1;
            f[k] += ge.a(k, i, j) * u[v];
            grad[k][v] = ge.a(k, i, j) + ge.a(k, i, 0) * ge.coeff[v] * y[v] / p[i];
        }
    }
    return true;
}

// Sign of P_k over a cell: +1/-1 when determined, 0 when some relevant p_i
// sign is unknown. The y-sign contribution is fixed by the orthant.
int product_sign(const GaleEval& ge, int k, const std::vector<int>& sigma,
                 const std::vector<int>& p_signs) {
    int s = 1;
    for (int i = 0; i < ge.ms->n; ++i) {
        long a = std::lround(ge.a(k, i, 0));
        if (a % 2 != 0) {
            if (p_signs[i] == 0)
                return 0;
            if (p_signs[i] < 0)
                s = -s;
        }
    }
    for (int v = 0; v < ge.l; ++v) {
        long a = std::lround(ge.a(k, ge.block_of[v], ge.offset_in_block[v] + 1));
        if (a % 2 != 0 && sigma[v] < 0)
            s = -s;
    }
    return s;
}

// Magnitude of the sum defining p_i at y; the natural scale for deciding
// whether a computed p_i value is an exact zero up to roundoff.
double p_scale_at(const GaleEval& ge, int i, const std::vector<double>& y) {
    double v = std::abs(ge.b[i]);
    for (int t = 0; t < ge.l; ++t)
        if (ge.block_of[t] == i)
            v += std::abs(ge.coeff[t] * y[t]);
    return v;
}

// What a residual min-width cell is converging to.
enum class TailClass {
    kSuspect,  // unresolved: report it
    kWall,     // a limit on the arrangement (some y_j = 0 or p_i = 0): drop
    kRoot,     // a regular torus solution, possibly very close to a wall
};

// Newton in y-coordinates on the product equations, used to classify residual
// tails near the arrangement. Walls attract spurious cells because interval
// exclusion cannot certify them; genuine roots can also hide arbitrarily close
// to a wall, where the log-coordinate Newton basin is too thin to enter. The
// cleared polynomial form stays well conditioned there, so its Newton limit
// separates the two cases.
TailClass classify_tail(const GaleEval& ge, std::vector<double> y, std::vector<double>* root) {
    const int l = ge.l, n = ge.ms->n;
    // relative distance to the nearest arrangement wall
    auto proximity = [&](const std::vector<double>& pt) {
        double norm = 0.0;
        for (double v : pt)
            norm = std::max(norm, std::abs(v));
        double prox = 1e300;
        for (double v : pt)
            prox = std::min(prox, std::abs(v));
        for (int i = 0; i < n; ++i)
            prox = std::min(prox, std::abs(p_at(ge, i, pt)));
        return prox / (1.0 + norm);
    };
    for (int iter = 0; iter < 60; ++iter) {
        std::vector<double> p(n);
        for (int i = 0; i < n; ++i)
            p[i] = p_at(ge, i, y);
        // G_k = prod_{a>0} ... - prod_{a<0} ..., the cleared equations, but
        // evaluated in factored form.
        std::vector<double> g(l), scale(l);
        std::vector<std::vector<double>> jac(l, std::vector<double>(l, 0.0));
        for (int k = 0; k < l; ++k) {
            // Track log-magnitudes and signs to avoid overflow on large boxes;
            // the raw products can exceed double range when |y| ~ e^60.
            double lpos = 0.0, lneg = 0.0;
            int spos = 1, sneg = 1;
            std::vector<double> dpos(l, 0.0), dneg(l, 0.0);  // log-derivative sums
            for (int i = 0; i < n; ++i) {
                long a = std::lround(ge.a(k, i, 0));
                if (a == 0)
                    continue;
                if (p[i] == 0.0)
                    return TailClass::kWall;  // exact arrangement point
                double& lprod = a > 0 ? lpos : lneg;
                int& sprod = a > 0 ? spos : sneg;
                auto& dprod = a > 0 ? dpos : dneg;
                long e = std::labs(a);
                lprod += static_cast<double>(e) * std::log(std::abs(p[i]));
                if (p[i] < 0.0 && e % 2 != 0)
                    sprod = -sprod;
                for (int v = 0; v < l; ++v)
                    if (ge.block_of[v] == i)
                        dprod[v] += static_cast<double>(e) * ge.coeff[v] / p[i];
            }
            for (int v = 0; v < l; ++v) {
                long a = std::lround(ge.a(k, ge.block_of[v], ge.offset_in_block[v] + 1));
                if (a == 0)
                    continue;
                if (y[v] == 0.0)
                    return TailClass::kWall;  // y on a coordinate hyperplane
                double& lprod = a > 0 ? lpos : lneg;
                int& sprod = a > 0 ? spos : sneg;
                auto& dprod = a > 0 ? dpos : dneg;
                long e = std::labs(a);
                lprod += static_cast<double>(e) * std::log(std::abs(y[v]));
                if (y[v] < 0.0 && e % 2 != 0)
                    sprod = -sprod;
                dprod[v] += static_cast<double>(e) / y[v];
            }
            // Scale both sides by the larger magnitude: Newton is invariant
            // under row scaling, and the scaled products stay in [-1, 1].
            double shift = std::max(lpos, lneg);
            double pos = spos * std::exp(lpos - shift);
            double neg = sneg * std::exp(lneg - shift);
            g[k] = pos - neg;
            scale[k] = std::max(std::abs(pos), std::abs(neg));
            for (int v = 0; v < l; ++v)
                jac[k][v] = pos * dpos[v] - neg * dneg[v];
        }
        std::vector<double> dy;
        if (!linear_solve(jac, g, dy))  // singular Jacobian: typical at pinch points
            return proximity(y) < 1e-3 ? TailClass::kWall : TailClass::kSuspect;
        std::vector<double> prev = y;
        double step = 0.0, norm = 0.0;
        for (int v = 0; v < l; ++v) {
            y[v] += dy[v];
            step = std::max(step, std::abs(dy[v]));
            norm = std::max(norm, std::abs(y[v]));
        }
        if (!std::isfinite(norm))
            return proximity(prev) < 1e-3 ? TailClass::kWall : TailClass::kSuspect;
        if (step < 1e-11) {
            bool at_root = true;
            for (int k = 0; k < l; ++k)
                if (std::abs(g[k]) > 1e-9 * (scale[k] + 1.0))
                    at_root = false;
            if (at_root) {
                // A cleared-equation solution exactly on a wall is a non-torus
                // limit; only values at roundoff scale count as "on".
                for (int v = 0; v < l; ++v)
                    if (std::abs(y[v]) < 1e-10 * (1.0 + norm))
                        return TailClass::kWall;
                for (int i = 0; i < n; ++i)
                    if (std::abs(p_at(ge, i, y)) < 1e-10 * (p_scale_at(ge, i, y) + 1e-300))
                        return TailClass::kWall;
                if (root)
                    *root = y;
                return TailClass::kRoot;
            }
            double near = 1e-6 * (1.0 + norm);
            for (int v = 0; v < ge.l; ++v)
                if (std::abs(y[v]) < near)
                    return TailClass::kWall;
            for (int i = 0; i < n; ++i)
                if (std::abs(p_at(ge, i, y)) < near)
                    return TailClass::kWall;
            return TailClass::kSuspect;
        }
    }
    return proximity(y) < 1e-3 ? TailClass::kWall : TailClass::kSuspect;
}

SolutionSet solve_gale_product(const MixedStructure& ms, const IntMatrix& alphas,
                               const SolverOptions& opts) {
    GaleEval ge = make_gale_eval(ms, alphas);
    const int l = ge.l;
    SolutionSet out;
    const double newton_width = 0.05;

    for (int mask = 0; mask < (1 << l); ++mask) {
        std::vector<int> sigma;
        for (int v = 0; v < l; ++v)
            sigma.push_back(mask >> v & 1 ? -1 : 1);

        std::vector<Solution> roots, suspects;
        std::deque<Box> queue;
        queue.push_back(Box{std::vector<double>(l, -opts.box), std::vector<double>(l, opts.box)});

        while (!queue.empty()) {
            if (++out.cells_visited > opts.cell_budget)
                throw Error("solver cell budget exceeded");
            Box box = std::move(queue.front());
            queue.pop_front();

            std::vector<PInterval> ps;
            for (int i = 0; i < ms.n; ++i)
                ps.push_back(p_interval(ge, i, sigma, box.lo, box.hi));
            std::vector<int> p_signs;
            for (const auto& pi : ps)
                p_signs.push_back(pi.sign);

            bool excluded = false;
            for (int k = 0; k < l && !excluded; ++k) {
                int sgn = product_sign(ge, k, sigma, p_signs);
                if (sgn < 0) {
                    excluded = true;  // P_k < 0 cannot equal 1
                    break;
                }
                // log|P_k| interval; cells straddling a wall p_i = 0 make one
                // side infinite, tracked by flags so the finite side keeps a
                // meaningful slack.
                double flo = 0.0, fhi = 0.0;
                bool unbounded_below = false, unbounded_above = false;
                for (int i = 0; i < ms.n; ++i) {
                    double a = ge.a(k, i, 0);
                    if (a == 0.0)
                        continue;
                    double abs_hi = std::max(std::abs(ps[i].lo), std::abs(ps[i].hi));
                    double mhi = std::log(std::max(abs_hi, 1e-300));
                    if (ps[i].sign == 0) {
                        if (a > 0) {
                            unbounded_below = true;
                            fhi += a * mhi;
                        } else {
                            unbounded_above = true;
                            flo += a * mhi;
                        }
                    } else {
                        double abs_lo = std::min(std::abs(ps[i].lo), std::abs(ps[i].hi));
                        double mlo = std::log(std::max(abs_lo, 1e-300));
                        if (a > 0) {
                            flo += a * mlo;
                            fhi += a * mhi;
                        } else {
                            flo += a * mhi;
                            fhi += a * mlo;
                        }
                    }
                }
                for (int v = 0; v < l; ++v) {
                    double a = ge.a(k, ge.block_of[v], ge.offset_in_block[v] + 1);
                    if (a > 0) {
                        flo += a * box.lo[v];
                        fhi += a * box.hi[v];
                    } else {
                        flo += a * box.hi[v];
                        fhi += a * box.lo[v];
                    }
                }
                double slack = 1e-9 + 1e-12 * (std::abs(flo) + std::abs(fhi));
                if ((!unbounded_below && flo - slack > 0.0) ||
                    (!unbounded_above && fhi + slack < 0.0))
                    excluded = true;
            }
            if (excluded)
                continue;

            double width = 0.0;
            int widest = 0;
            for (int v = 0; v < l; ++v)
                if (box.hi[v] - box.lo[v] > width) {
                    width = box.hi[v] - box.lo[v];
                    widest = v;
                }

            if (width <= newton_width) {
                std::vector<double> u(l);
                for (int v = 0; v < l; ++v)
                    u[v] = 0.5 * (box.lo[v] + box.hi[v]);
                std::vector<double> start = u;
                bool settled = false;
                // damped Newton on F(u) = log|P(u)|
                bool converged = false;
                for (int iter = 0; iter < 80; ++iter) {
                    std::vector<double> f;
                    std::vector<std::vector<double>> grad;
                    if (!gale_value_grad(ge, sigma, u, f, grad))
                        break;
                    std::vector<double> du;
                    if (!linear_solve(grad, f, du))
                        break;
                    double step = 0.0;
                    bool outside = false;
                    for (int v = 0; v < l; ++v) {
                        u[v] += du[v];
                        step = std::max(step, std::abs(du[v]));
                        if (std::abs(u[v]) > opts.box + 1e-3)
                            outside = true;
                    }
                    if (outside)
                        break;
                    if (step < 1e-13) {
                        converged = true;
                        break;
                    }
                }
                if (converged) {
                    std::vector<double> f;
                    std::vector<std::vector<double>> grad;
                    if (gale_value_grad(ge, sigma, u, f, grad)) {
                        double rel = 0.0;
                        for (double fv : f)
                            rel = std::max(rel, std::abs(fv));
                        std::vector<double> y(l);
                        for (int v = 0; v < l; ++v)
                            y[v] = sigma[v] * std::exp(u[v]);
                        std::vector<int> signs;
                        bool positive_product = true;
                        for (int i = 0; i < ms.n; ++i)
                            signs.push_back(p_at(ge, i, y) > 0 ? 1 : -1);
                        for (int k = 0; k < l; ++k)
                            if (product_sign(ge, k, sigma, signs) != 1)
                                positive_product = false;
                        if (rel < 1e-9 && positive_product) {
                            double mag = 1.0;
                            for (int k = 0; k < l; ++k) {
                                double row = 0.0;
                                for (int v = 0; v < l; ++v)
                                    row += std::abs(grad[k][v]);
                                mag *= std::max(row, 1e-300);
                            }
                            Solution sol;
                            sol.point = y;
                            sol.orthant = sigma;
                            sol.residual = rel;
                            sol.jacobian_scale = std::abs(det_with_rows(grad)) / mag;
                            sol.nondegenerate = sol.jacobian_scale > opts.jacobian_tol;
                            sol.positive = mask == 0;
                            bool inside_cell = true;
                            for (int v = 0; v < l; ++v)
                                if (u[v] < box.lo[v] - 0.01 || u[v] > box.hi[v] + 0.01)
                                    inside_cell = false;
                            const bool nondeg = sol.nondegenerate;
                            bool duplicate = false;
                            auto& pool = nondeg ? roots : suspects;
                            for (const auto& existing : pool) {
                                if (existing.orthant != sigma)
                                    continue;
                                double d = 0.0;
                                for (int v = 0; v < l; ++v)
                                    d = std::max(d, std::abs(std::log(std::abs(existing.point[v])) -
                                                             u[v]));
                                if (d < opts.cluster_radius)
                                    duplicate = true;
                            }
                            if (!duplicate)
                                pool.push_back(std::move(sol));
                            if (inside_cell && nondeg)
                                settled = true;
                        }
                    }
                }
                if (settled)
                    continue;
                if (width <= opts.min_cell_width) {
                    std::vector<double> y(l);
                    for (int v = 0; v < l; ++v)
                        y[v] = sigma[v] * std::exp(start[v]);
                    std::vector<double> yroot;
                    TailClass cls = classify_tail(ge, y, &yroot);
                    if (cls == TailClass::kWall)
                        continue;
                    bool registered = false;
                    if (cls == TailClass::kRoot) {
                        // Verify the promoted point in log coordinates; a fake
                        // (wall limit mistaken for a root) fails loudly here.
                        bool same_orthant = true;
                        std::vector<double> ur(l);
                        for (int v = 0; v < l; ++v) {
                            if ((yroot[v] > 0.0 ? 1 : -1) != sigma[v])
                                same_orthant = false;
                            ur[v] = std::log(std::abs(yroot[v]));
                        }
                        std::vector<double> f;
                        std::vector<std::vector<double>> grad;
                        if (same_orthant && gale_value_grad(ge, sigma, ur, f, grad)) {
                            double rel = 0.0;
                            for (double fv : f)
                                rel = std::max(rel, std::abs(fv));
                            std::vector<int> signs;
                            bool positive_product = true;
                            for (int i = 0; i < ms.n; ++i)
                                signs.push_back(p_at(ge, i, yroot) > 0 ? 1 : -1);
                            for (int k = 0; k < l; ++k)
                                if (product_sign(ge, k, sigma, signs) != 1)
                                    positive_product = false;
                            if (rel < 1e-7 && positive_product) {
                                double mag = 1.0;
                                for (int k = 0; k < l; ++k) {
                                    double row = 0.0;
                                    for (int v = 0; v < l; ++v)
                                        row += std::abs(grad[k][v]);
                                    mag *= std::max(row, 1e-300);
                                }
                                Solution sol;
                                sol.point = yroot;
                                sol.orthant = sigma;
                                sol.residual = rel;
                                sol.jacobian_scale = std::abs(det_with_rows(grad)) / mag;
                                sol.nondegenerate = sol.jacobian_scale > opts.jacobian_tol;
                                sol.positive = mask == 0;
                                auto& pool = sol.nondegenerate ? roots : suspects;
                                bool duplicate = false;
                                for (const auto& existing : pool) {
                                    if (existing.orthant != sigma)
                                        continue;
                                    double d = 0.0;
                                    for (int v = 0; v < l; ++v)
                                        d = std::max(
                                            d, std::abs(std::log(std::abs(existing.point[v])) -
                                                        ur[v]));
                                    if (d < opts.cluster_radius)
                                        duplicate = true;
                                }
                                if (!duplicate)
                                    pool.push_back(std::move(sol));
                                registered = true;
                            }
                        }
                    }
                    if (registered)
                        continue;
                    Solution s;
                    s.point = y;
                    s.orthant = sigma;
                    s.nondegenerate = false;
                    suspects.push_back(std::move(s));
                    continue;
                }
            }

            Box left = box, right = box;
            double mid = 0.5 * (box.lo[widest] + box.hi[widest]);
            left.hi[widest] = mid;
            right.lo[widest] = mid;
            queue.push_back(std::move(left));
            queue.push_back(std::move(right));
        }

        for (auto& s : roots)
            out.points.push_back(std::move(s));
        for (auto& s : suspects) {
            bool duplicate = false;
            for (const auto& existing : out.suspects) {
                if (existing.orthant != s.orthant)
                    continue;
                double d = 0.0;
                for (int v = 0; v < l; ++v)
                    d = std::max(d, std::abs(std::log(std::abs(existing.point[v])) -
                                             std::log(std::abs(s.point[v]))));
                if (d < 0.2)
                    duplicate = true;
            }
            if (!duplicate)
                out.suspects.push_back(std::move(s));
        }
    }
    return out;
}

}  // namespace

int SolutionSet::positive_count() const {
    int c = 0;
    for (const auto& s : points)
        if (s.positive && s.nondegenerate)
            ++c;
    return c;
}

int SolutionSet::real_count() const {
    int c = 0;
    for (const auto& s : points)
        if (s.nondegenerate)
            ++c;
    return c;
}

SolutionSet solve_real(const FewnomialSystem& sys, const SolverOptions& opts) {
    const int n = sys.n;
    if (n > 3)
        throw Error("solver supports n <= 3 only");
    if (static_cast<int>(sys.polynomials.size()) != n)
        throw Error("non-square system");
    for (const auto& poly : sys.polynomials)
        for (const auto& [e, c] : poly.terms()) {
            (void)c;
            long total = 0;
            for (long v : e)
                total += std::labs(v);
            if (total > opts.degree_cap)
                throw Error("degree budget exceeded");
        }

    const std::vector<Poly> polys = compile(sys);
    SolutionSet out;
    const double newton_width = 0.05;

    for (int mask = 0; mask < (1 << n); ++mask) {
        OrthantContext ctx;
        ctx.polys = &polys;
        for (int m = 0; m < n; ++m)
            ctx.orthant.push_back(mask >> m & 1 ? -1 : 1);
        for (const auto& p : polys) {
            std::vector<double> s;
            for (const auto& t : p.terms)
                s.push_back(term_sign(t, ctx.orthant));
            ctx.signs.push_back(std::move(s));
        }

        std::vector<Solution> orthant_roots;
        std::vector<Solution> orthant_suspects;
        std::deque<Box> queue;
        queue.push_back(Box{std::vector<double>(n, -opts.box), std::vector<double>(n, opts.box)});

        while (!queue.empty()) {
            if (++out.cells_visited > opts.cell_budget)
                throw Error("solver cell budget exceeded");
            Box box = std::move(queue.front());
            queue.pop_front();

            bool excluded = false;
            for (int i = 0; i < n && !excluded; ++i) {
                auto [lo, hi] = eval_interval(polys[i], ctx.signs[i], box.lo, box.hi);
                if (lo > 0.0 || hi < 0.0)
                    excluded = true;
            }
            if (excluded)
                continue;

            double width = 0.0;
            int widest = 0;
            for (int m = 0; m < n; ++m)
                if (box.hi[m] - box.lo[m] > width) {
                    width = box.hi[m] - box.lo[m];
                    widest = m;
                }

            if (width <= newton_width) {
                std::vector<double> u(n);
                for (int m = 0; m < n; ++m)
                    u[m] = 0.5 * (box.lo[m] + box.hi[m]);
                std::vector<double> start = u;
                bool settled = false;
                if (newton(ctx, u, opts.box, 1e-3)) {
                    double rel = 0.0;
                    std::vector<std::vector<double>> j(n);
                    double mag_product = 1.0;
                    for (int i = 0; i < n; ++i) {
                        PointEval ev = eval_point(polys[i], ctx.signs[i], u);
                        rel = std::max(rel, std::abs(ev.value) / std::max(ev.magnitude, 1e-300));
                        j[i] = ev.grad;
                        mag_product *= std::max(ev.magnitude, 1e-300);
                    }
                    if (rel < opts.residual_tol) {
                        Solution sol;
                        sol.orthant = ctx.orthant;
                        sol.point.resize(n);
                        bool inside_cell = true;
                        for (int m = 0; m < n; ++m) {
                            sol.point[m] = ctx.orthant[m] * std::exp(u[m]);
                            if (u[m] < box.lo[m] - 0.01 || u[m] > box.hi[m] + 0.01)
                                inside_cell = false;
                        }
                        sol.residual = rel;
                        sol.jacobian_scale = std::abs(det_with_rows(j)) / mag_product;
                        sol.nondegenerate = sol.jacobian_scale > opts.jacobian_tol;
                        sol.positive = true;
                        for (int m = 0; m < n; ++m)
                            if (ctx.orthant[m] < 0)
                                sol.positive = false;
                        const bool nondegenerate = sol.nondegenerate;
                        bool duplicate = false;
                        auto& pool = nondegenerate ? orthant_roots : orthant_suspects;
                        for (const auto& existing : pool) {
                            double d = 0.0;
                            for (int m = 0; m < n; ++m) {
                                double eu = std::log(std::abs(existing.point[m]));
                                d = std::max(d, std::abs(eu - u[m]));
                            }
                            if (d < opts.cluster_radius)
                                duplicate = true;
                        }
                        if (!duplicate)
                            pool.push_back(std::move(sol));
                        // The cell's root is accounted for; no need to refine.
                        if (inside_cell && nondegenerate)
                            settled = true;
                    }
                }
                if (settled)
                    continue;
                if (width <= opts.min_cell_width) {
                    // Still not excluded and Newton found nothing convincing.
                    Solution s;
                    s.orthant = ctx.orthant;
                    s.point.resize(n);
                    for (int m = 0; m < n; ++m)
                        s.point[m] = ctx.orthant[m] * std::exp(start[m]);
                    // Residual tails toward coordinate-hyperplane solutions are
                    // expected near the box edge; they are not torus roots.
                    if (converges_to_axis(sys, s.point))
                        continue;
                    s.nondegenerate = false;
                    orthant_suspects.push_back(std::move(s));
                    continue;
                }
            }

            Box left = box, right = box;
            double mid = 0.5 * (box.lo[widest] + box.hi[widest]);
            left.hi[widest] = mid;
            right.lo[widest] = mid;
            queue.push_back(std::move(left));
            queue.push_back(std::move(right));
        }

        for (auto& s : orthant_roots)
            out.points.push_back(std::move(s));
        // Collapse suspect clusters (same cell neighborhood) to single reports.
        for (auto& s : orthant_suspects) {
            bool duplicate = false;
            for (const auto& existing : out.suspects) {
                if (existing.orthant != s.orthant)
                    continue;
                double d = 0.0;
                for (int m = 0; m < n; ++m)
                    d = std::max(d, std::abs(std::log(std::abs(existing.point[m])) -
                                             std::log(std::abs(s.point[m]))));
                if (d < 0.2)
                    duplicate = true;
            }
            if (!duplicate)
                out.suspects.push_back(std::move(s));
        }
    }
    return out;
}

int count_positive(const FewnomialSystem& sys, const SolverOptions& opts) {
    return solve_real(sys, opts).positive_count();
}

int count_real_torus(const FewnomialSystem& sys, const SolverOptions& opts) {
    return solve_real(sys, opts).real_count();
}

GaleBijectionReport verify_gale_bijection(const MixedStructure& ms, const SolverOptions& opts) {
    GaleBijectionReport rep;

    FewnomialSystem sys = system_from_structure(ms);
    SolutionSet xs = solve_real(sys, opts);
    rep.x_positive = xs.positive_count();
    rep.x_real = xs.real_count();
    rep.has_suspects = !xs.suspects.empty();

    ExponentMatrix w = exponent_matrix(ms);
    RelationBasis rb = kernel_basis(w);
    GaleSystem gs = build_gale_system(ms, rb);

    // The y picture lives in the image of the box under u -> W u.
    long wmax = 0;
    for (int i = 0; i < ms.n; ++i)
        for (int j = 0; j < ms.block_sizes[i]; ++j) {
            long s = 0;
            for (long v : ms.body_exponents[i][j])
                s += std::labs(v);
            wmax = std::max(wmax, s);
        }
    SolverOptions yopts = opts;
    yopts.box = static_cast<double>(wmax) * opts.box + 2.0;
    yopts.cell_budget = opts.cell_budget * 4;
    SolutionSet ys = solve_gale_product(ms, rb.alphas, yopts);
    if (!ys.suspects.empty())
        rep.has_suspects = true;

    // Discard cleared-system roots on p_i = 0 (not Gale solutions).
    std::vector<const Solution*> valid;
    for (const auto& sol : ys.points) {
        bool ok = true;
        for (int i = 0; i < ms.n; ++i) {
            double p = evaluate_p(ms, i, sol.point);
            double scale = std::abs(ms.constant_coeffs[i].get_d());
            for (int j = 0; j < ms.block_sizes[i]; ++j)
                scale += std::abs(ms.body_coeffs[i][j].get_d() *
                                  sol.point[gs.var_index(i, j + 1)]);
            if (std::abs(p) < 1e-7 * scale) {
                ok = false;
                if (std::abs(p) > 1e-12 * scale)
                    rep.has_suspects = true;  // borderline
            }
        }
        if (ok)
            valid.push_back(&sol);
    }
    rep.gale_all_chambers = static_cast<int>(valid.size());
    for (const auto* sol : valid) {
        bool in_delta_plus = true;
        for (double c : sol->point)
            if (c <= 0)
                in_delta_plus = false;
        for (int i = 0; i < ms.n && in_delta_plus; ++i)
            if (evaluate_p(ms, i, sol->point) <= 0)
                in_delta_plus = false;
        if (in_delta_plus)
            ++rep.gale_positive_chamber;
    }

    rep.positive_match = rep.x_positive == rep.gale_positive_chamber;
    if (odd_index_check(w)) {
        rep.real_compared = true;
        rep.real_match = rep.x_real == rep.gale_all_chambers;
    } else {
        rep.skip_reason = "trivial sign solutions (even lattice index)";
    }

    // Match x-solutions to Gale solutions through the monomial map.
    for (const auto& xsol : xs.points) {
        if (!xsol.nondegenerate)
            continue;
        std::vector<double> y = push_solution(ms, xsol.point);
        for (const auto* sol : valid) {
            double dist = 0.0;
            for (std::size_t t = 0; t < y.size(); ++t)
                dist = std::max(dist,
                                std::abs(y[t] - sol->point[t]) / (1.0 + std::abs(y[t])));
            if (dist < 1e-6) {
                ++rep.matched_pairs;
                break;
            }
        }
    }
    return rep;
}

}  // namespace fewnomial
