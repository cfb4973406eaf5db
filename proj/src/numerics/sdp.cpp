#include "adlab/numerics/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "adlab/errors.hpp"
#include "adlab/numerics/eigen.hpp"

namespace adlab {

namespace {

struct FullEntry {
    std::size_t i, j;
    double v;
};

// Constraint expanded to full (non-symmetrized) entries, grouped by block.
struct ExpandedConstraint {
    std::vector<std::vector<FullEntry>> psd;  // per PSD block
    std::vector<FullEntry> lp;                // i == j
    double rhs = 0.0;
    double norm = 0.0;  // Frobenius norm
};

struct Iterate {
    std::vector<DenseMatrix> xb;
    std::vector<double> xl;
};

class Solver {
public:
    Solver(const SdpProblem& p, const SdpOptions& o) : p_(p), o_(o) {
        nb_ = p.psd_blocks.size();
        for (std::size_t s : p.psd_blocks) total_dim_ += s;
        total_dim_ += p.lp_size;
        cons_.resize(p.constraints.size());
        for (std::size_t k = 0; k < p.constraints.size(); ++k) cons_[k] = expand(p.constraints[k].entries, p.constraints[k].rhs);
        auto c = expand(p.objective, 0.0);
        c_psd_.resize(nb_);
        for (std::size_t b = 0; b < nb_; ++b) {
            c_psd_[b] = DenseMatrix(p.psd_blocks[b], p.psd_blocks[b]);
            for (const auto& e : c.psd[b]) c_psd_[b](e.i, e.j) += e.v;
        }
        c_lp_.assign(p.lp_size, 0.0);
        for (const auto& e : c.lp) c_lp_[e.i] += e.v;
        c_norm_ = c.norm;
        for (const auto& k : cons_) b_norm_ += k.rhs * k.rhs;
        b_norm_ = std::sqrt(b_norm_);
    }

    SdpSolution run();

private:
    ExpandedConstraint expand(const std::vector<SdpEntry>& entries, double rhs) const {
        ExpandedConstraint out;
        out.psd.resize(nb_);
        out.rhs = rhs;
        double norm2 = 0.0;
        for (const auto& e : entries) {
            if (e.block > nb_) throw InputError("solve_sdp: block index out of range");
            if (!std::isfinite(e.value)) throw InputError("solve_sdp: non-finite coefficient");
            if (e.block == nb_) {
                if (e.i >= p_.lp_size || e.i != e.j) throw InputError("solve_sdp: bad LP-block entry");
                out.lp.push_back({e.i, e.i, e.value});
                norm2 += e.value * e.value;
                continue;
            }
            const std::size_t n = p_.psd_blocks[e.block];
            if (e.i >= n || e.j >= n) throw InputError("solve_sdp: entry outside its block");
            out.psd[e.block].push_back({e.i, e.j, e.value});
            norm2 += e.value * e.value;
            if (e.i != e.j) {
                out.psd[e.block].push_back({e.j, e.i, e.value});
                norm2 += e.value * e.value;
            }
        }
        out.norm = std::sqrt(norm2);
        return out;
    }

    // A(G) for arbitrary (possibly non-symmetric) block matrices G and LP vector g
    std::vector<double> apply_a(const std::vector<DenseMatrix>& g, const std::vector<double>& gl) const {
        std::vector<double> out(cons_.size(), 0.0);
        for (std::size_t k = 0; k < cons_.size(); ++k) {
            double s = 0.0;
            for (std::size_t b = 0; b < nb_; ++b)
                for (const auto& e : cons_[k].psd[b]) s += e.v * g[b](e.i, e.j);
            for (const auto& e : cons_[k].lp) s += e.v * gl[e.i];
            out[k] = s;
        }
        return out;
    }

    void apply_at(const std::vector<double>& y, std::vector<DenseMatrix>& out, std::vector<double>& outl) const {
        out.resize(nb_);
        for (std::size_t b = 0; b < nb_; ++b) out[b] = DenseMatrix(p_.psd_blocks[b], p_.psd_blocks[b]);
        outl.assign(p_.lp_size, 0.0);
        for (std::size_t k = 0; k < cons_.size(); ++k) {
            const double yk = y[k];
            if (yk == 0.0) continue;
            for (std::size_t b = 0; b < nb_; ++b)
                for (const auto& e : cons_[k].psd[b]) out[b](e.i, e.j) += yk * e.v;
            for (const auto& e : cons_[k].lp) outl[e.i] += yk * e.v;
        }
    }

    static double inner(const DenseMatrix& a, const DenseMatrix& b) {
        double s = 0.0;
        for (std::size_t k = 0; k < a.entries().size(); ++k) s += a.entries()[k] * b.entries()[k];
        return s;
    }

    // largest alpha with M + alpha * D >= 0 given the Cholesky factor of M
    static double max_step(const DenseMatrix& chol_m, const DenseMatrix& d) {
        if (d.rows() == 0) return kHuge;
        const DenseMatrix w = congruence_by_inverse(chol_m, d);
        const double lmin = min_eigenvalue(w, 1e-6);
        return lmin >= 0.0 ? kHuge : -1.0 / lmin;
    }

    static constexpr double kHuge = 1e300;

    const SdpProblem& p_;
    const SdpOptions& o_;
    std::size_t nb_ = 0;
    std::size_t total_dim_ = 0;
    std::vector<ExpandedConstraint> cons_;
    std::vector<DenseMatrix> c_psd_;
    std::vector<double> c_lp_;
    double c_norm_ = 0.0;
    double b_norm_ = 0.0;
};

SdpSolution Solver::run() {
    const std::size_t K = cons_.size();
    const std::size_t L = p_.lp_size;
    if (total_dim_ == 0) throw InputError("solve_sdp: empty variable");

    double xi = std::max(10.0, std::sqrt(double(total_dim_)));
    double eta = std::max({10.0, std::sqrt(double(total_dim_)), c_norm_});
    for (const auto& k : cons_) {
        xi = std::max(xi, (1.0 + std::abs(k.rhs)) / (1.0 + k.norm));
        eta = std::max(eta, k.norm);
    }

    std::vector<DenseMatrix> X(nb_), Z(nb_);
    for (std::size_t b = 0; b < nb_; ++b) {
        X[b] = xi * DenseMatrix::identity(p_.psd_blocks[b]);
        Z[b] = eta * DenseMatrix::identity(p_.psd_blocks[b]);
    }
    std::vector<double> x(L, xi), z(L, eta), y(K, 0.0);

    SdpSolution sol;
    double best_score = kHuge;
    auto fill_solution = [&](std::size_t it, double pres, double dres, double pobj, double dobj) {
        sol.x_blocks = X; sol.x_lp = x; sol.z_blocks = Z; sol.z_lp = z; sol.y = y;
        sol.primal_objective = pobj; sol.dual_objective = dobj;
        sol.primal_residual = pres; sol.dual_residual = dres;
        sol.relative_gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
        sol.iterations = it;
    };

    std::vector<DenseMatrix> aty;
    std::vector<double> atyl;
    for (std::size_t it = 0;; ++it) {
        // residuals
        auto ax = apply_a(X, x);
        std::vector<double> rp(K);
        double rp_norm = 0.0;
        for (std::size_t k = 0; k < K; ++k) {
            rp[k] = cons_[k].rhs - ax[k];
            rp_norm += rp[k] * rp[k];
        }
        rp_norm = std::sqrt(rp_norm);
        apply_at(y, aty, atyl);
        std::vector<DenseMatrix> rd(nb_);
        std::vector<double> rdl(L);
        double rd_norm2 = 0.0;
        for (std::size_t b = 0; b < nb_; ++b) {
            rd[b] = c_psd_[b] - Z[b] - aty[b];
            rd_norm2 += inner(rd[b], rd[b]);
        }
        for (std::size_t i = 0; i < L; ++i) {
            rdl[i] = c_lp_[i] - z[i] - atyl[i];
            rd_norm2 += rdl[i] * rdl[i];
        }
        double pobj = 0.0, dobj = 0.0, xz = 0.0;
        for (std::size_t b = 0; b < nb_; ++b) {
            pobj += inner(c_psd_[b], X[b]);
            xz += inner(X[b], Z[b]);
        }
        for (std::size_t i = 0; i < L; ++i) {
            pobj += c_lp_[i] * x[i];
            xz += x[i] * z[i];
        }
        for (std::size_t k = 0; k < K; ++k) dobj += cons_[k].rhs * y[k];
        const double pres = rp_norm / (1.0 + b_norm_);
        const double dres = std::sqrt(rd_norm2) / (1.0 + c_norm_);
        const double relgap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));
        const double score = std::max({pres, dres, relgap});
        if (score < best_score) {
            best_score = score;
            fill_solution(it, pres, dres, pobj, dobj);
        }
        if (relgap < o_.gap_tol && pres < o_.feas_tol && dres < o_.feas_tol) {
            fill_solution(it, pres, dres, pobj, dobj);
            return sol;
        }
        if (it >= o_.max_iterations) break;

        const double mu = xz / double(total_dim_);

        // factorizations
        std::vector<DenseMatrix> lx(nb_), lz(nb_), zinv(nb_);
        bool ok = true;
        for (std::size_t b = 0; b < nb_ && ok; ++b) {
            ok = cholesky(X[b], lx[b]) && cholesky(Z[b], lz[b]);
            if (ok) zinv[b] = cholesky_inverse(lz[b]);
        }
        if (!ok) break;

        // Schur complement M_kl = <A_k, X A_l Z^{-1}>
        DenseMatrix M(K, K);
        for (std::size_t k = 0; k < K; ++k) {
            for (std::size_t l = k; l < K; ++l) {
                double s = 0.0;
                for (std::size_t b = 0; b < nb_; ++b) {
                    const auto& ek = cons_[k].psd[b];
                    const auto& el = cons_[l].psd[b];
                    if (ek.empty() || el.empty()) continue;
                    const auto& xb = X[b];
                    const auto& yb = zinv[b];
                    for (const auto& e : ek)
                        for (const auto& f : el) s += e.v * f.v * xb(e.j, f.i) * yb(f.j, e.i);
                }
                if (!cons_[k].lp.empty() && !cons_[l].lp.empty()) {
                    for (const auto& e : cons_[k].lp)
                        for (const auto& f : cons_[l].lp)
                            if (e.i == f.i) s += e.v * f.v * x[e.i] / z[e.i];
                }
                M(k, l) = s;
                M(l, k) = s;
            }
        }
        DenseMatrix lm;
        double reg = 0.0;
        double diag_max = 0.0;
        for (std::size_t k = 0; k < K; ++k) diag_max = std::max(diag_max, M(k, k));
        while (!cholesky(M, lm)) {
            reg = reg == 0.0 ? 1e-14 * std::max(1.0, diag_max) : reg * 100.0;
            if (reg > 1e-2 * std::max(1.0, diag_max)) { ok = false; break; }
            for (std::size_t k = 0; k < K; ++k) M(k, k) += reg;
        }
        if (!ok) break;

        // X Rd Z^{-1} contribution is shared by predictor and corrector
        std::vector<DenseMatrix> xrdz(nb_);
        std::vector<double> xrdzl(L);
        for (std::size_t b = 0; b < nb_; ++b) xrdz[b] = matmul(matmul(X[b], rd[b]), zinv[b]);
        for (std::size_t i = 0; i < L; ++i) xrdzl[i] = x[i] * rdl[i] / z[i];
        const auto a_xrdz = apply_a(xrdz, xrdzl);

        struct Direction {
            std::vector<DenseMatrix> dx, dz;
            std::vector<double> dxl, dzl, dy;
        };
        auto direction = [&](const std::vector<DenseMatrix>& R, const std::vector<double>& Rl) {
            Direction d;
            const auto ar = apply_a(R, Rl);
            std::vector<double> rhs(K);
            for (std::size_t k = 0; k < K; ++k) rhs[k] = rp[k] - ar[k] + a_xrdz[k];
            d.dy = cholesky_solve(lm, rhs);
            std::vector<DenseMatrix> atdy;
            std::vector<double> atdyl;
            apply_at(d.dy, atdy, atdyl);
            d.dz.resize(nb_);
            d.dx.resize(nb_);
            for (std::size_t b = 0; b < nb_; ++b) {
                d.dz[b] = rd[b] - atdy[b];
                DenseMatrix t = R[b] - matmul(matmul(X[b], d.dz[b]), zinv[b]);
                for (std::size_t i = 0; i < t.rows(); ++i)
                    for (std::size_t j = i + 1; j < t.cols(); ++j) {
                        const double v = 0.5 * (t(i, j) + t(j, i));
                        t(i, j) = t(j, i) = v;
                    }
                d.dx[b] = std::move(t);
            }
            d.dzl.resize(L);
            d.dxl.resize(L);
            for (std::size_t i = 0; i < L; ++i) {
                d.dzl[i] = rdl[i] - atdyl[i];
                d.dxl[i] = Rl[i] - x[i] * d.dzl[i] / z[i];
            }
            return d;
        };
        auto steps = [&](const Direction& d) {
            double ap = kHuge, ad = kHuge;
            for (std::size_t b = 0; b < nb_; ++b) {
                ap = std::min(ap, max_step(lx[b], d.dx[b]));
                ad = std::min(ad, max_step(lz[b], d.dz[b]));
            }
            for (std::size_t i = 0; i < L; ++i) {
                if (d.dxl[i] < 0.0) ap = std::min(ap, -x[i] / d.dxl[i]);
                if (d.dzl[i] < 0.0) ad = std::min(ad, -z[i] / d.dzl[i]);
            }
            return std::pair{ap, ad};
        };

        // predictor
        std::vector<DenseMatrix> R(nb_);
        std::vector<double> Rl(L);
        for (std::size_t b = 0; b < nb_; ++b) R[b] = -1.0 * X[b];
        for (std::size_t i = 0; i < L; ++i) Rl[i] = -x[i];
        const Direction pred = direction(R, Rl);
        auto [ap_aff, ad_aff] = steps(pred);
        ap_aff = std::min(1.0, ap_aff);
        ad_aff = std::min(1.0, ad_aff);
        double mu_aff = 0.0;
        for (std::size_t b = 0; b < nb_; ++b)
            mu_aff += inner(X[b] + ap_aff * pred.dx[b], Z[b] + ad_aff * pred.dz[b]);
        for (std::size_t i = 0; i < L; ++i)
            mu_aff += (x[i] + ap_aff * pred.dxl[i]) * (z[i] + ad_aff * pred.dzl[i]);
        mu_aff /= double(total_dim_);
        double sigma = std::pow(std::max(0.0, mu_aff) / mu, 3.0);
        sigma = std::clamp(sigma, 0.0, 1.0);

        // corrector
        for (std::size_t b = 0; b < nb_; ++b) {
            R[b] = (sigma * mu) * zinv[b] - X[b] - matmul(matmul(pred.dx[b], pred.dz[b]), zinv[b]);
        }
        for (std::size_t i = 0; i < L; ++i)
            Rl[i] = sigma * mu / z[i] - x[i] - pred.dxl[i] * pred.dzl[i] / z[i];
        const Direction corr = direction(R, Rl);
        auto [ap, ad] = steps(corr);
        const double tau = o_.step_fraction;
        ap = std::min(1.0, tau * ap);
        ad = std::min(1.0, tau * ad);
        if (ap < 1e-12 && ad < 1e-12) break;

        for (std::size_t b = 0; b < nb_; ++b) {
            X[b] += ap * corr.dx[b];
            Z[b] += ad * corr.dz[b];
        }
        for (std::size_t i = 0; i < L; ++i) {
            x[i] += ap * corr.dxl[i];
            z[i] += ad * corr.dzl[i];
        }
        for (std::size_t k = 0; k < K; ++k) y[k] += ad * corr.dy[k];
    }

    // no convergence at the requested tolerance: accept a near-converged best iterate
    constexpr double kAcceptTol = 1e-7;
    if (best_score < kAcceptTol) return sol;
    throw SolverError("solve_sdp: no convergence (primal residual " + std::to_string(sol.primal_residual) +
                          ", dual residual " + std::to_string(sol.dual_residual) + ", gap " +
                          std::to_string(sol.relative_gap) + ")",
                      sol.y, best_score);
}

}  // namespace

SdpSolution solve_sdp(const SdpProblem& problem, const SdpOptions& options) {
    Solver s(problem, options);
    return s.run();
}

}  // namespace adlab
