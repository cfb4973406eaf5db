// Acceptance battery: one PASS/FAIL line per criterion, details on "#" lines.

#include <sys/wait.h>

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include "adlab/adeg/approx_degree.hpp"
#include "adlab/adeg/sweep.hpp"
#include "adlab/adversary/witness.hpp"
#include "adlab/boolfn/partial_fn.hpp"
#include "adlab/gamma2/gamma2.hpp"
#include "adlab/interp/lagrange.hpp"
#include "adlab/poly/robustness.hpp"
#include "adlab/util/format.hpp"

namespace fs = std::filesystem;
using namespace adlab;
using Clock = std::chrono::steady_clock;

namespace {

const double kPi = std::numbers::pi;
const std::size_t kJobs = std::max(1u, std::thread::hardware_concurrency());

// Collects failed sub-checks for one criterion.
class Criterion {
public:
    Criterion(int id, std::string title) : id_(id), title_(std::move(title)), start_(Clock::now()) {}

    void check(bool ok, const std::string& what) {
        if (!ok) failures_.push_back(what);
    }
    void info(const std::string& line) { info_.push_back(line); }
    double seconds() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }

    bool report() const {
        const bool ok = failures_.empty();
        std::cout << (ok ? "PASS" : "FAIL") << " criterion " << id_ << ": " << title_ << " (" << fmt_num(seconds())
                  << " s)\n";
        for (const auto& f : failures_) std::cout << "#   failed: " << f << "\n";
        for (const auto& i : info_) std::cout << "#   " << i << "\n";
        std::cout.flush();
        return ok;
    }

private:
    int id_;
    std::string title_;
    Clock::time_point start_;
    std::vector<std::string> failures_, info_;
};

// Turns any exception inside a criterion into a recorded failure.
template <class F>
bool run_criterion(int id, const std::string& title, F body) {
    Criterion c(id, title);
    try {
        body(c);
    } catch (const std::exception& e) {
        c.check(false, std::string("exception: ") + e.what());
    }
    return c.report();
}

std::size_t adeg(const std::string& name, std::size_t n, bool bounded = true) {
    AdegOptions o;
    o.bounded = bounded;
    return approx_degree(build_named(name, n), 1.0 / 3.0, o).degree;
}

// ---------------------------------------------------------------- 1

void criterion1(Criterion& c) {
    for (std::size_t n = 1; n <= 8; ++n) {
        const auto w = build_witness(n, kJobs);
        const auto r = verify(w, 1e-8, 1e-6, kJobs);
        const std::string tag = "n=" + std::to_string(n);
        c.check(r.min_eig >= -1e-8, tag + " relative min eigenvalue " + fmt_num(r.min_eig));
        c.check(r.max_constraint_dev <= 1e-6, tag + " constraint deviation " + fmt_num(r.max_constraint_dev));
        c.check(r.objective <= kPi * std::sqrt(double(n)) + 1e-8, tag + " objective " + fmt_num(r.objective));
        // Diagonal closed form, recomputed here entry by entry.
        double diag_dev = 0.0;
        for (std::uint64_t x = 0; x < w.dimension(); ++x) {
            double sum = 0.0;
            for (Subset s = 0; s < w.dimension(); ++s) sum += w.entry(s, x, x);
            const double expect = kPi / 2 * (std::sqrt(double(n)) + std::popcount(x) / std::sqrt(double(n)));
            diag_dev = std::max(diag_dev, std::abs(sum - expect));
        }
        c.check(diag_dev <= 1e-8, tag + " diagonal deviation " + fmt_num(diag_dev));
        std::string line = tag + ": min_eig " + fmt_num(r.min_eig) + ", constraint dev " +
                           fmt_num(r.max_constraint_dev) + ", objective gap " + fmt_num(r.objective_gap) +
                           ", diagonal dev " + fmt_num(diag_dev);
        if (n <= 6) {
            const double q = quadrature_crosscheck(w, 2000, 1);
            c.check(q <= 1e-7, tag + " quadrature deviation " + fmt_num(q));
            line += ", quadrature dev " + fmt_num(q);
        }
        c.info(line);
    }
    c.check(c.seconds() <= 300.0, "runtime above 5 minutes");
}

// ---------------------------------------------------------------- 2

std::map<std::string, std::size_t> golden_degrees() {
    std::ifstream f(ADLAB_GOLDEN_DIR "/adeg_or.csv");
    if (!f) throw std::runtime_error("golden adeg_or.csv not found");
    std::map<std::string, std::size_t> out;
    std::string line;
    std::getline(f, line);
    while (std::getline(f, line)) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
        out[cells.at(0)] = std::stoul(cells.at(4));
    }
    return out;
}

void criterion2(Criterion& c) {
    const auto golden = golden_degrees();
    std::size_t prev = 0;
    std::string seq;
    double lo = 1e9, hi = 0.0;
    for (std::size_t n = 1; n <= 10; ++n) {
        const std::size_t d = adeg("OR", n);
        const std::string name = "OR_" + std::to_string(n);
        seq += (n > 1 ? " " : "") + std::to_string(d);
        c.check(d >= prev, name + " decreases");
        const double ratio = d / std::sqrt(double(n));
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
        c.check(ratio >= 0.7 && ratio <= 2.0, name + " ratio " + fmt_num(ratio));
        c.check(golden.count(name) && golden.at(name) == d, name + " differs from the golden table");
        prev = d;
    }
    c.info("adeg(OR_n), n=1..10: " + seq + "; adeg/sqrt(n) in [" + fmt_num(lo) + ", " + fmt_num(hi) + "]");

    for (std::size_t n = 1; n <= 8; ++n) {
        const auto f = build_named("XOR", n);
        const auto r = approx_degree(f);
        const std::string name = "XOR_" + std::to_string(n);
        c.check(r.degree == n, name + " degree " + std::to_string(r.degree));
        // Parity dual at d = n - 1: +-2^-n with the sign of (-1)^|x|, error 1/2.
        const auto w = dual_witness(f, n - 1);
        double dev = 0.0;
        const double sign = w.phi[0] > 0 ? 1.0 : -1.0;
        for (std::uint64_t x = 0; x < w.phi.size(); ++x)
            dev = std::max(dev, std::abs(w.phi[x] - sign * ((std::popcount(x) & 1) ? -1.0 : 1.0) / double(w.phi.size())));
        c.check(dev <= 1e-9, name + " dual differs from parity by " + fmt_num(dev));
        c.check(w.certified_error > 1.0 / 3.0, name + " dual certifies only " + fmt_num(w.certified_error));
    }
}

// ---------------------------------------------------------------- 3, 4

std::vector<SweepRow> sweep(const std::string& outer, const std::string& inner, std::size_t max_a, std::size_t b) {
    std::vector<SweepInstance> spec;
    for (std::size_t a = 1; a <= max_a; ++a) {
        SweepInstance s;
        s.outer = outer + "_" + std::to_string(a);
        s.inner.assign(a, inner + "_" + std::to_string(b));
        spec.push_back(s);
    }
    return composition_sweep(spec, kJobs);
}

void criterion3(Criterion& c) {
    c.check(adeg("AND", 2) == *sweep("OR", "AND", 1, 2).at(0).adeg_composed, "adeg(OR_1 o AND_2) != adeg(AND_2)");
    std::size_t cells = 0;
    for (std::size_t b = 1; b <= 12; ++b) {
        const auto rows = sweep("OR", "AND", 12 / b, b);
        std::size_t prev = 0;
        std::string seq;
        for (std::size_t a = 1; a <= rows.size(); ++a) {
            const auto& r = rows[a - 1];
            if (r.skipped || !r.adeg_composed || !r.adeg_outer) {
                c.check(false, r.instance + " skipped: " + r.note);
                continue;
            }
            const std::size_t d = *r.adeg_composed;
            c.check(d >= *r.adeg_outer, r.instance + " below adeg(OR_a)");
            c.check(d >= r.adeg_inner.at(0), r.instance + " below adeg(AND_b)");
            c.check(d >= prev, r.instance + " breaks the monotone trend in a");
            seq += (a > 1 ? " " : "") + std::to_string(d);
            prev = d;
            ++cells;
        }
        c.info("b=" + std::to_string(b) + ", a=1.." + std::to_string(rows.size()) + ": " + seq);
    }
    c.check(cells == 35, std::to_string(cells) + " cells instead of 35");
    c.check(c.seconds() <= 600.0, "runtime above 10 minutes");
}

void criterion4(Criterion& c) {
    const auto rows = sweep("XOR", "AND", 5, 2);
    const std::size_t and2 = adeg("AND", 2);
    std::size_t prev = 0;
    std::string seq;
    for (std::size_t k = 1; k <= 5; ++k) {
        const auto& r = rows.at(k - 1);
        c.check(r.adeg_composed.has_value(), r.instance + " skipped");
        if (!r.adeg_composed) continue;
        const std::size_t d = *r.adeg_composed;
        c.check(k == 1 || d > prev, r.instance + " not strictly increasing");
        c.check(double(d) >= double(k * and2) - 1.0, r.instance + " below k adeg(AND_2) - 1");
        seq += (k > 1 ? " " : "") + std::to_string(d);
        prev = d;
    }
    c.info("adeg(XOR_k o AND_2), k=1..5: " + seq);
}

// ---------------------------------------------------------------- 5

void criterion5(Criterion& c) {
    std::string bseq, useq;
    for (std::size_t n = 1; n <= 8; ++n) {
        const auto f = build_named("PrOR", n);
        AdegOptions ub;
        ub.bounded = false;
        const auto u = approx_degree(f, 1.0 / 3.0, ub);
        const auto b = approx_degree(f);
        const std::string name = "PrOR_" + std::to_string(n);
        c.check(u.degree == 1, name + " unbounded degree " + std::to_string(u.degree));
        // sum x_i is exact on the promise |x| <= 1.
        double err = 0.0;
        for (std::uint64_t x = 0; x < (1ull << n); ++x)
            if (f.defined(x)) err = std::max(err, std::abs(double(std::popcount(x)) - f(x)));
        c.check(err == 0.0, name + " sum x_i misses the promise");
        if (n >= 4) c.check(b.degree > 1, name + " bounded degree " + std::to_string(b.degree));
        bseq += (n > 1 ? " " : "") + std::to_string(b.degree);
        useq += (n > 1 ? " " : "") + std::to_string(u.degree);
    }
    c.info("n=1..8 unbounded: " + useq + "; bounded: " + bseq);
}

// ---------------------------------------------------------------- 6

void criterion6(Criterion& c) {
    const std::vector<std::string> fs = {"AND_2", "XOR_2", "MAJ_3"};
    for (bool bounded : {true, false}) {
        std::vector<SweepInstance> spec;
        for (const auto& a : fs)
            for (const auto& b : fs) {
                SweepInstance s;
                s.outer = "OR_2";
                s.inner = {a, b};
                s.bounded = bounded;
                spec.push_back(s);
            }
        const auto rows = composition_sweep(spec, kJobs);
        std::string line = bounded ? "bounded: " : "unbounded (reference only): ";
        for (const auto& r : rows) {
            const double a = double(r.adeg_inner.at(0)), b = double(r.adeg_inner.at(1));
            const double ratio = double(r.adeg_composed.value_or(0)) / std::sqrt(a * a + b * b);
            if (bounded) c.check(ratio >= 0.5 && ratio <= 2.0, r.instance + " ratio " + fmt_num(ratio));
            line += r.instance + "=" + fmt_num(ratio) + " ";
        }
        c.info(line);
    }
}

// ---------------------------------------------------------------- 7

std::size_t binom(std::size_t n, std::size_t k) {
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

void criterion7(Criterion& c) {
    std::size_t grids = 0;
    double worst = 0.0;
    for (std::size_t n = 1; binom(n + 1, 1) <= 500; ++n)
        for (std::size_t d = 1; binom(n + d, d) <= 500; ++d) {
            const auto r = kronecker_check(n, d);
            worst = std::max(worst, r.max_deviation);
            c.check(r.max_deviation <= 1e-9, "Kronecker n=" + std::to_string(n) + " d=" + std::to_string(d));
            ++grids;
        }
    c.info(std::to_string(grids) + " grids, max Kronecker deviation " + fmt_num(worst));

    double interp_worst = 0.0;
    std::size_t bases = 0;
    for (std::size_t n = 1; n < 8; ++n)
        for (std::size_t d = 1; n + d <= 8; ++d) {
            const auto b = build_basis(n, d, {.verify = true, .trials = 50, .seed = 7});
            interp_worst = std::max(interp_worst, *b.interpolation_error);
            c.check(*b.interpolation_error <= 1e-7, "interpolation n=" + std::to_string(n) + " d=" + std::to_string(d));
            ++bases;
        }
    c.info("interpolation of 50 random polynomials on " + std::to_string(bases) + " grids, max error " +
           fmt_num(interp_worst));

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t n = 1; n < 8; ++n)
        for (std::size_t d = 1; n + d <= 8; ++d) pairs.push_back({n, d});
    std::size_t checked = 0, violations = 0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto [n, d] = pairs[i];
        const std::size_t count = 200 / pairs.size() + (i < 200 % pairs.size() ? 1 : 0);
        const auto basis = build_basis(n, d, {.verify = false});
        for (const auto& p : bounded_corpus(n, d, count, 1000 + 10 * n + d)) {
            const auto r = check_coeff_bounds(p, n, d, &basis);
            violations += r.violations.size();
            for (const auto& v : r.violations) c.check(false, v);
            ++checked;
        }
    }
    c.check(checked == 200, std::to_string(checked) + " corpus polynomials instead of 200");
    c.info(std::to_string(checked) + " corpus polynomials, " + std::to_string(violations) + " violations");
}

// ---------------------------------------------------------------- 8

DenseMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    DenseMatrix m(r, c);
    for (auto& v : m.entries()) v = u(rng);
    return m;
}

double g2(const DenseMatrix& m) { return gamma2_exact(m).value; }

void criterion8(Criterion& c) {
    double worst_ji = 0.0;
    for (std::size_t k = 1; k <= 8; ++k) {
        const double j = g2(DenseMatrix::ones(k, k)), i = g2(DenseMatrix::identity(k));
        c.check(std::abs(j - 1.0) <= 1e-5, "gamma2(J_" + std::to_string(k) + ") = " + fmt_num(j));
        c.check(std::abs(i - 1.0) <= 1e-5, "gamma2(I_" + std::to_string(k) + ") = " + fmt_num(i));
        worst_ji = std::max({worst_ji, std::abs(j - 1.0), std::abs(i - 1.0)});
    }
    c.info("J and I up to 8: max |gamma2 - 1| " + fmt_num(worst_ji));

    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> lam(-3.0, 3.0);
    auto dim = [&] { return std::size_t(2 + rng() % 5); };  // 2..6
    double slack[5] = {-1e9, -1e9, -1e9, -1e9, 0.0};
    for (int t = 0; t < 100; ++t) {
        const std::size_t r = dim(), k = dim();
        const auto a = random_matrix(rng, r, k), b = random_matrix(rng, r, k);
        const double ga = g2(a), gb = g2(b);
        const double sub = g2(a + b) - ga - gb;
        const double l = lam(rng);
        const double scale = std::abs(g2(l * a) - std::abs(l) * ga);
        std::vector<std::size_t> rows, cols;
        for (std::size_t i = 0; i < r; ++i)
            if (rng() & 1) rows.push_back(i);
        for (std::size_t j = 0; j < k; ++j)
            if (rng() & 1) cols.push_back(j);
        if (rows.empty()) rows.push_back(rng() % r);
        if (cols.empty()) cols.push_back(rng() % k);
        const double mono = g2(a.submatrix(rows, cols)) - ga;
        const double had = g2(hadamard(a, b)) - ga * gb;
        const auto s1 = random_matrix(rng, 1 + rng() % 3, 1 + rng() % 3);
        const auto s2 = random_matrix(rng, 1 + rng() % 3, 1 + rng() % 3);
        const double ten = std::abs(g2(kron(s1, s2)) - g2(s1) * g2(s2));
        const std::string tag = " (instance " + std::to_string(t) + ")";
        c.check(sub <= 1e-4, "subadditivity" + tag);
        c.check(scale <= 1e-4, "scaling" + tag);
        c.check(mono <= 1e-4, "submatrix monotonicity" + tag);
        c.check(had <= 1e-4, "Hadamard submultiplicativity" + tag);
        c.check(ten <= 1e-4, "tensor multiplicativity" + tag);
        slack[0] = std::max(slack[0], sub);
        slack[1] = std::max(slack[1], mono);
        slack[2] = std::max(slack[2], had);
        slack[3] = std::max(slack[3], scale);
        slack[4] = std::max(slack[4], ten);
    }
    c.info("axioms on 100 instances each; worst excess: subadditive " + fmt_num(slack[0]) + ", submatrix " +
           fmt_num(slack[1]) + ", Hadamard " + fmt_num(slack[2]) + ", |scaling error| " + fmt_num(slack[3]) +
           ", |tensor error| " + fmt_num(slack[4]));

    for (int t = 0; t < 100; ++t) {
        const std::size_t r = 1 + rng() % 8, k = 1 + rng() % 8;
        DenseMatrix s(r, k);
        for (auto& v : s.entries()) v = (rng() & 1) ? 1.0 : -1.0;
        const double g = g2(s);
        const double upper = s.max_abs() * std::sqrt(double(numerical_rank(s, 1e-8)));
        c.check(g >= s.max_abs() - 1e-5 && g <= upper + 1e-5, "sandwich (instance " + std::to_string(t) + ")");
    }

    std::string noteq_line;
    for (std::size_t k = 1; k <= 8; ++k) {
        const double v = approx_gamma2(noteq(k)).value;
        c.check(v <= 1.0 + 1e-5, "approx gamma2(NOTEQ_" + std::to_string(k) + ") = " + fmt_num(v));
        noteq_line += fmt_num(v) + " ";
    }
    c.info("approx gamma2(NOTEQ_k), k=1..8: " + noteq_line);

    std::string disj_line;
    double prev = 0.0;
    for (std::size_t n = 1; n <= 4; ++n) {
        const double v = approx_gamma2(build_comm("DISJ", n)).value;
        c.check(v >= prev - 1e-6, "approx gamma2(DISJ_" + std::to_string(n) + ") decreases");
        prev = v;
        disj_line += fmt_num(v) + " ";
    }
    c.info("approx gamma2(DISJ_n), n=1..4: " + disj_line);

    double min_margin = 1e9;
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    for (int t = 0; t < 50; ++t) {
        const std::size_t vars = 1 + rng() % 3, r = 2 + rng() % 3, k = 2 + rng() % 3;
        MultiPoly p(vars);
        for (int term = 0; term < 4; ++term) {
            Exponents e(vars);
            for (auto& x : e) x = rng() % 3;
            p.add_term(e, coef(rng));
        }
        std::vector<DenseMatrix> mats;
        for (std::size_t i = 0; i < vars; ++i) mats.push_back(random_matrix(rng, r, k));
        const auto h = hadamard_poly_compose(p, mats);
        const double margin = h.bound - h.sdp_value.value();
        c.check(margin >= -1e-6, "Hadamard certificate below the SDP value (instance " + std::to_string(t) + ")");
        min_margin = std::min(min_margin, margin);
    }
    c.info("Hadamard composition on 50 instances; min certificate - SDP " + fmt_num(min_margin));
}

// ---------------------------------------------------------------- 9

void criterion9(Criterion& c) {
    const auto h = build_named("OR", 2);
    const auto p = multilinear_extension(h);
    const auto full = robustness_margin(p, h, 0.1);
    const auto unit = robustness_margin(p, h, 0.1, 100000, 1, PerturbationBox::Unit);
    c.check(full.exact, "margin not exact");
    c.check(std::abs(full.margin - 0.19) <= 1e-12, "margin over [-0.1, 0.1]^2 is " + fmt_num(full.margin));
    c.info("margin over the full box " + fmt_num(full.margin) + "; restricted to [0,1]^2 " + fmt_num(unit.margin));

    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(0.0, 1.0), coef(-1.0, 1.0);
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        const std::size_t m = 1 + t % 10;
        MultiPoly q(m);
        for (int term = 0; term < 12; ++term) q = q + MultiPoly::monomial_from_mask(m, rng() & ((1ull << m) - 1), coef(rng));
        std::vector<double> y(m);
        for (auto& v : y) v = u(rng);
        // Direct enumeration of E[q(z)] as the oracle.
        double direct = 0.0;
        for (std::uint64_t z = 0; z < (1ull << m); ++z) {
            double prob = 1.0;
            std::vector<double> pt(m);
            for (std::size_t i = 0; i < m; ++i) {
                pt[i] = double((z >> i) & 1);
                prob *= pt[i] == 1.0 ? y[i] : 1.0 - y[i];
            }
            direct += prob * evaluate(q, pt);
        }
        const double at_y = evaluate(q, y);
        const double dev = std::max(std::abs(bernoulli_expectation(q, y) - at_y), std::abs(direct - at_y));
        worst = std::max(worst, dev);
        c.check(dev <= 1e-10, "Bernoulli identity (instance " + std::to_string(t) + ")");
    }
    c.info("Bernoulli identity on 100 polynomials, max deviation " + fmt_num(worst));
}

// ---------------------------------------------------------------- 10

int run_battery(const fs::path& dir) {
    const std::string cmd = std::string(ADLAB_CLI_PATH) + " battery --out " + dir.string() + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void criterion10(Criterion& c) {
    const auto root = fs::temp_directory_path() / "adlab_acceptance";
    fs::remove_all(root);
    const auto a = root / "a", b = root / "b";
    c.check(run_battery(a) == 0, "first battery run failed");
    c.check(run_battery(b) == 0, "second battery run failed");
    std::size_t files = 0;
    for (const auto& e : fs::directory_iterator(a)) {
        const auto other = b / e.path().filename();
        c.check(fs::exists(other) && slurp(e.path()) == slurp(other), e.path().filename().string() + " differs");
        ++files;
    }
    std::size_t files_b = 0;
    for ([[maybe_unused]] const auto& e : fs::directory_iterator(b)) ++files_b;
    c.check(files > 0 && files == files_b, "artifact sets differ");
    c.info(std::to_string(files) + " artifacts compared byte for byte");
    fs::remove_all(root);
}

}  // namespace

int main(int argc, char** argv) {
    // Optional arguments select criteria by number.
    std::vector<int> only;
    for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));
    auto want = [&](int id) { return only.empty() || std::find(only.begin(), only.end(), id) != only.end(); };

    const std::vector<std::pair<std::string, void (*)(Criterion&)>> all = {
        {"adversary witness, n = 1..8", criterion1},
        {"approximate degree of OR_n and XOR_n", criterion2},
        {"OR o AND composition, ab <= 12", criterion3},
        {"XOR_k o AND_2 composition, k <= 5", criterion4},
        {"PrOR bounded versus unbounded degree", criterion5},
        {"unbalanced OR_2 compositions in [0.5, 2.0]", criterion6},
        {"Lagrange basis and coefficient bounds", criterion7},
        {"gamma2 suite", criterion8},
        {"robustness margin and Bernoulli identity", criterion9},
        {"CLI battery determinism", criterion10},
    };
    int failed = 0;
    for (std::size_t i = 0; i < all.size(); ++i) {
        const int id = int(i + 1);
        if (!want(id)) continue;
        if (!run_criterion(id, all[i].first, all[i].second)) ++failed;
    }
    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << "\n";
    return failed == 0 ? 0 : 1;
}
