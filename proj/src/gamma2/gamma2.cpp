#include "adlab/gamma2/gamma2.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "adlab/errors.hpp"
#include "adlab/numerics/eigen.hpp"
#include "adlab/poly/univariate.hpp"
#include "adlab/util/format.hpp"
#include "json.hpp"

namespace adlab {

namespace {

std::string bits(std::uint64_t v, std::size_t n) {
    std::string s(n, '0');
    for (std::size_t i = 0; i < n; ++i)
        if ((v >> (n - 1 - i)) & 1) s[i] = '1';
    return s;
}

std::vector<std::string> bit_labels(std::size_t n) {
    std::vector<std::string> out;
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) out.push_back(bits(v, n));
    return out;
}

std::string upper(std::string_view s) {
    std::string out(s);
    for (auto& ch : out) ch = char(std::toupper(static_cast<unsigned char>(ch)));
    return out;
}

std::int8_t sign_of(std::uint8_t value) {
    if (value == kStar) return 0;
    return value == kOne ? 1 : -1;
}

// Box [lo, hi] for each entry of the approximant; lo == hi means fixed.
struct EntryBox {
    double lo, hi;
};

struct SolvedGamma2 {
    SdpSolution sol;
    DenseMatrix off;  // the off-diagonal block of X
    DenseMatrix b, c;
};

// minimize t  s.t.  X = [[P, W], [W^T, Q]] >= 0,  X_ii = t,  W in its boxes.
SolvedGamma2 solve_gamma2(std::size_t r, std::size_t c, const std::vector<EntryBox>& boxes,
                          const SdpOptions& options) {
    const std::size_t n = r + c;
    std::size_t free_entries = 0;
    for (const auto& bx : boxes)
        if (bx.lo < bx.hi) ++free_entries;

    SdpProblem p;
    p.psd_blocks = {n};
    p.lp_size = 1 + 2 * free_entries;
    const std::size_t lp = p.lp_block();
    p.objective.push_back({lp, 0, 0, 1.0});
    for (std::size_t i = 0; i < n; ++i) p.constraints.push_back({{{0, i, i, 1.0}, {lp, 0, 0, -1.0}}, 0.0});
    std::size_t slack = 1;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) {
            const auto& bx = boxes[i * c + j];
            const SdpEntry w{0, i, r + j, 0.5};
            if (bx.lo == bx.hi) {
                p.constraints.push_back({{w}, bx.lo});
                continue;
            }
            p.constraints.push_back({{w, {lp, slack, slack, -1.0}}, bx.lo});
            p.constraints.push_back({{w, {lp, slack + 1, slack + 1, 1.0}}, bx.hi});
            slack += 2;
        }

    SolvedGamma2 out;
    out.sol = solve_sdp(p, options);
    const DenseMatrix& x = out.sol.x_blocks[0];
    out.off = DenseMatrix(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) out.off(i, j) = 0.5 * (x(i, r + j) + x(r + j, i));

    // Gram factor of X from its eigendecomposition, keeping positive modes.
    const auto eig = symmetric_eigen(x, 1e-6);
    std::vector<std::size_t> keep;
    for (std::size_t k = 0; k < n; ++k)
        if (eig.eigenvalues[k] > 0.0) keep.push_back(k);
    out.b = DenseMatrix(r, keep.size());
    out.c = DenseMatrix(keep.size(), c);
    for (std::size_t t = 0; t < keep.size(); ++t) {
        const double s = std::sqrt(eig.eigenvalues[keep[t]]);
        for (std::size_t i = 0; i < r; ++i) out.b(i, t) = eig.eigenvectors(i, keep[t]) * s;
        for (std::size_t j = 0; j < c; ++j) out.c(t, j) = eig.eigenvectors(r + j, keep[t]) * s;
    }
    return out;
}

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.entries().size(); ++k) m = std::max(m, std::abs(a.entries()[k] - b.entries()[k]));
    return m;
}

void check_matrix(const DenseMatrix& a, std::size_t cap, const char* who) {
    if (a.rows() == 0 || a.cols() == 0) throw InputError(std::string(who) + ": empty matrix");
    if (a.rows() > cap || a.cols() > cap) {
        throw ResourceError(std::string(who) + ": " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                            " exceeds the size cap " + std::to_string(cap));
    }
    if (!a.all_finite()) throw InputError(std::string(who) + ": non-finite entry");
}

nlohmann::ordered_json matrix_json(const DenseMatrix& m) {
    auto rows = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        auto row = nlohmann::ordered_json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(round12(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

// diag((M M^T)^{1/2}), diag((M^T M)^{1/2}) and the trace norm, read from the
// eigenpairs (+-sigma, (u; +-v)/sqrt2) of [[0, M], [M^T, 0]].
struct SqrtGram {
    std::vector<double> rows, cols;
    double trace_norm = 0.0;
};

SqrtGram sqrt_gram(const DenseMatrix& m) {
    const std::size_t r = m.rows(), c = m.cols();
    DenseMatrix emb(r + c, r + c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) emb(i, r + j) = emb(r + j, i) = m(i, j);
    const auto eig = symmetric_eigen(emb);
    SqrtGram g;
    g.rows.assign(r, 0.0);
    g.cols.assign(c, 0.0);
    for (std::size_t k = 0; k < r + c; ++k) {
        const double sigma = eig.eigenvalues[k];
        if (sigma <= 0.0) continue;
        g.trace_norm += sigma;
        for (std::size_t i = 0; i < r; ++i) g.rows[i] += 2.0 * sigma * eig.eigenvectors(i, k) * eig.eigenvectors(i, k);
        for (std::size_t j = 0; j < c; ++j)
            g.cols[j] += 2.0 * sigma * eig.eigenvectors(r + j, k) * eig.eigenvectors(r + j, k);
    }
    return g;
}

}  // namespace

SignMatrix::SignMatrix(std::size_t rows, std::size_t cols, std::vector<std::int8_t> entries,
                       std::vector<std::string> row_labels, std::vector<std::string> col_labels)
    : rows_(rows), cols_(cols), e_(std::move(entries)), row_labels_(std::move(row_labels)),
      col_labels_(std::move(col_labels)) {
    if (rows_ == 0 || cols_ == 0) throw InputError("SignMatrix: empty matrix");
    if (e_.size() != rows_ * cols_) throw InputError("SignMatrix: entry count does not match the shape");
    bool any = false;
    for (auto v : e_) {
        if (v != 1 && v != -1 && v != 0) throw InputError("SignMatrix: entries must be +1, -1 or * (0)");
        any = any || v != 0;
    }
    if (!any) throw InputError("SignMatrix: no defined entry");
    if (!row_labels_.empty() && row_labels_.size() != rows_) throw InputError("SignMatrix: row label count");
    if (!col_labels_.empty() && col_labels_.size() != cols_) throw InputError("SignMatrix: column label count");
}

bool SignMatrix::partial() const { return std::find(e_.begin(), e_.end(), 0) != e_.end(); }

DenseMatrix SignMatrix::dense() const {
    DenseMatrix m(rows_, cols_);
    for (std::size_t k = 0; k < e_.size(); ++k) m.entries()[k] = e_[k];
    return m;
}

SignMatrix build_comm(std::string_view raw, std::size_t n) {
    if (n == 0) throw InputError("build_comm: n must be at least 1");
    const std::string name = upper(raw);
    if (n > 6) throw ResourceError("build_comm: 2^n exceeds " + std::to_string(kMaxGamma2Exact) + " per side");
    const std::size_t side = std::size_t{1} << n;
    std::vector<std::int8_t> e(side * side);
    for (std::uint64_t x = 0; x < side; ++x)
        for (std::uint64_t y = 0; y < side; ++y) {
            bool f;
            if (name == "DISJ") f = (x & y) != 0;
            else if (name == "IP") f = std::popcount(x & y) & 1;
            else if (name == "NOTEQ") f = x != y;
            else if (name == "EQ") f = x == y;
            else throw InputError("build_comm: unknown problem '" + std::string(raw) + "' (DISJ, IP, NOTEQ, EQ)");
            e[x * side + y] = f ? 1 : -1;
        }
    return SignMatrix(side, side, std::move(e), bit_labels(n), bit_labels(n));
}

SignMatrix gadget_matrix(Gadget gadget) {
    if (gadget == Gadget::And) return SignMatrix(2, 2, {-1, -1, -1, 1}, {"0", "1"}, {"0", "1"});
    return SignMatrix(2, 2, {-1, 1, 1, -1}, {"0", "1"}, {"0", "1"});
}

SignMatrix build_comm(const PartialFn& g, Gadget gadget) { return build_comm(g, gadget_matrix(gadget)); }

SignMatrix build_comm(const PartialFn& g, const SignMatrix& inner) {
    const std::size_t n = g.arity();
    if (n == 0) throw InputError("build_comm: the outer function needs at least one input");
    double rows = 1.0, cols = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        rows *= double(inner.rows());
        cols *= double(inner.cols());
    }
    if (rows > double(kMaxCommSide) || cols > double(kMaxCommSide)) {
        throw ResourceError("build_comm: composition on " + std::to_string(n) + " copies exceeds " +
                            std::to_string(kMaxCommSide) + " per side");
    }
    const std::size_t r = std::size_t(rows), c = std::size_t(cols);
    auto labels = [n](std::size_t base, const std::vector<std::string>& names) {
        std::vector<std::string> out;
        std::size_t total = 1;
        for (std::size_t i = 0; i < n; ++i) total *= base;
        for (std::size_t idx = 0; idx < total; ++idx) {
            std::vector<std::string> parts(n);
            std::size_t v = idx;
            for (std::size_t t = n; t-- > 0;) {
                const std::size_t digit = v % base;
                v /= base;
                parts[t] = names.empty() ? std::to_string(digit) : names[digit];
            }
            const bool single_chars =
                std::all_of(parts.begin(), parts.end(), [](const std::string& p) { return p.size() == 1; });
            out.push_back(join(parts, single_chars ? "" : "|"));
        }
        return out;
    };
    std::vector<std::int8_t> e(r * c);
    for (std::size_t x = 0; x < r; ++x)
        for (std::size_t y = 0; y < c; ++y) {
            std::uint64_t input = 0;
            bool star = false;
            std::size_t xv = x, yv = y;
            for (std::size_t t = n; t-- > 0;) {
                const std::int8_t v = inner(xv % inner.rows(), yv % inner.cols());
                xv /= inner.rows();
                yv /= inner.cols();
                if (v == 0) star = true;
                if (v > 0) input |= std::uint64_t{1} << (n - 1 - t);
            }
            e[x * c + y] = star ? 0 : sign_of(g(input));
        }
    if (std::all_of(e.begin(), e.end(), [](std::int8_t v) { return v == 0; }))
        throw InputError("build_comm: composed problem has no defined entry");
    return SignMatrix(r, c, std::move(e), labels(inner.rows(), inner.row_labels()),
                      labels(inner.cols(), inner.col_labels()));
}

SignMatrix noteq(std::size_t k) {
    if (k == 0) throw InputError("noteq: k must be at least 1");
    if (k > kMaxGamma2Exact) throw ResourceError("noteq: k exceeds " + std::to_string(kMaxGamma2Exact));
    std::vector<std::int8_t> e(k * k, 1);
    for (std::size_t i = 0; i < k; ++i) e[i * k + i] = -1;
    return SignMatrix(k, k, std::move(e));
}

std::string to_text(const SignMatrix& m) {
    std::string out = std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) out += m(i, j) > 0 ? '+' : (m(i, j) < 0 ? '-' : '*');
        out += '\n';
    }
    return out;
}

SignMatrix parse_sign_matrix(std::string_view text) {
    std::istringstream in{std::string(text)};
    long long r = -1, c = -1;
    if (!(in >> r >> c) || r <= 0 || c <= 0) throw InputError("sign matrix: expected a positive 'rows cols' header");
    std::vector<std::int8_t> e;
    char ch;
    while (in.get(ch)) {
        if (std::isspace(static_cast<unsigned char>(ch))) continue;
        if (ch == '+') e.push_back(1);
        else if (ch == '-') e.push_back(-1);
        else if (ch == '*') e.push_back(0);
        else throw InputError(std::string("sign matrix: unexpected character '") + ch + "'");
    }
    if (e.size() != std::size_t(r) * std::size_t(c)) {
        throw InputError("sign matrix: expected " + std::to_string(r * c) + " entries, found " +
                         std::to_string(e.size()));
    }
    return SignMatrix(std::size_t(r), std::size_t(c), std::move(e));
}

SignMatrix read_sign_matrix(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InputError("cannot open sign matrix file " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_sign_matrix(ss.str());
}

double max_row_norm(const DenseMatrix& m) {
    double best = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        double s = 0.0;
        for (double v : m.row(i)) s += v * v;
        best = std::max(best, s);
    }
    return std::sqrt(best);
}

double max_col_norm(const DenseMatrix& m) { return max_row_norm(m.transpose()); }

Gamma2Result gamma2_exact(const DenseMatrix& a, const Gamma2Options& options) {
    check_matrix(a, kMaxGamma2Exact, "gamma2_exact");
    std::vector<EntryBox> boxes;
    for (double v : a.entries()) boxes.push_back({v, v});
    auto s = solve_gamma2(a.rows(), a.cols(), boxes, options.sdp);
    Gamma2Result r;
    r.value = s.sol.primal_objective;
    r.b = std::move(s.b);
    r.c = std::move(s.c);
    r.factor_value = max_row_norm(r.b) * max_col_norm(r.c);
    r.residual = max_abs_diff(matmul(r.b, r.c), a);
    r.primal_residual = s.sol.primal_residual;
    r.dual_residual = s.sol.dual_residual;
    r.relative_gap = s.sol.relative_gap;
    r.iterations = s.sol.iterations;
    return r;
}

ApproxMatrixResult approx_gamma2(const SignMatrix& f, double eps, const Gamma2Options& options) {
    if (!(eps > 0.0 && eps < 1.0)) throw InputError("approx_gamma2: need 0 < eps < 1");
    if (f.rows() > kMaxGamma2Approx || f.cols() > kMaxGamma2Approx) {
        throw ResourceError("approx_gamma2: sign matrix exceeds " + std::to_string(kMaxGamma2Approx) + " per side");
    }
    std::vector<EntryBox> boxes;
    for (auto v : f.entries()) {
        if (v > 0) boxes.push_back({1.0 - eps, 1.0});
        else if (v < 0) boxes.push_back({-1.0, -1.0 + eps});
        else boxes.push_back({-1.0, 1.0});
    }
    auto s = solve_gamma2(f.rows(), f.cols(), boxes, options.sdp);
    ApproxMatrixResult r;
    r.value = s.sol.primal_objective;
    r.epsilon = eps;
    r.approximant = s.off;
    for (std::size_t k = 0; k < boxes.size(); ++k) {
        double& v = r.approximant.entries()[k];
        r.max_violation = std::max({r.max_violation, boxes[k].lo - v, v - boxes[k].hi});
        v = std::clamp(v, boxes[k].lo, boxes[k].hi);
    }
    r.b = std::move(s.b);
    r.c = std::move(s.c);
    r.factor_value = max_row_norm(r.b) * max_col_norm(r.c);
    r.residual = max_abs_diff(matmul(r.b, r.c), r.approximant);
    r.primal_residual = s.sol.primal_residual;
    r.dual_residual = s.sol.dual_residual;
    r.relative_gap = s.sol.relative_gap;
    r.iterations = s.sol.iterations;
    return r;
}

std::string to_json(const ApproxMatrixResult& r, bool include_factorization) {
    nlohmann::ordered_json j;
    j["value"] = round12(r.value);
    j["epsilon"] = round12(r.epsilon);
    j["rows"] = r.approximant.rows();
    j["cols"] = r.approximant.cols();
    j["factor_value"] = round12(r.factor_value);
    j["residual"] = round12(r.residual);
    j["max_violation"] = round12(r.max_violation);
    j["iterations"] = r.iterations;
    j["approximant"] = matrix_json(r.approximant);
    if (include_factorization) {
        j["b"] = matrix_json(r.b);
        j["c"] = matrix_json(r.c);
    }
    return j.dump(2);
}

std::string to_json(const Gamma2Result& r, bool include_factorization) {
    nlohmann::ordered_json j;
    j["value"] = round12(r.value);
    j["factor_value"] = round12(r.factor_value);
    j["residual"] = round12(r.residual);
    j["iterations"] = r.iterations;
    if (include_factorization) {
        j["b"] = matrix_json(r.b);
        j["c"] = matrix_json(r.c);
    }
    return j.dump(2);
}

Gamma2Bracket gamma2_search(const DenseMatrix& a, std::size_t restarts, std::uint64_t seed,
                            std::size_t max_iterations) {
    if (a.rows() == 0 || a.cols() == 0) throw InputError("gamma2_search: empty matrix");
    // Zero rows and columns change nothing; drop them so every scaling stays positive.
    std::vector<std::size_t> ri, ci;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        bool nz = false;
        for (std::size_t j = 0; j < a.cols(); ++j) nz = nz || a(i, j) != 0.0;
        if (nz) ri.push_back(i);
    }
    for (std::size_t j = 0; j < a.cols(); ++j) {
        bool nz = false;
        for (std::size_t i = 0; i < a.rows(); ++i) nz = nz || a(i, j) != 0.0;
        if (nz) ci.push_back(j);
    }
    Gamma2Bracket out;
    out.restarts = restarts;
    if (ri.empty()) return out;
    const DenseMatrix m0 = a.submatrix(ri, ci);
    const std::size_t r = m0.rows(), c = m0.cols();

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> start(0.1, 1.0);
    out.lower = 0.0;
    out.upper = std::numeric_limits<double>::infinity();
    for (std::size_t rs = 0; rs < std::max<std::size_t>(restarts, 1); ++rs) {
        std::vector<double> u(r), v(c);
        for (auto& x : u) x = start(rng);
        for (auto& x : v) x = start(rng);
        auto normalize = [](std::vector<double>& w) {
            double s = 0.0;
            for (double x : w) s += x * x;
            for (double& x : w) x /= std::sqrt(s);
        };
        normalize(u);
        normalize(v);
        for (std::size_t it = 0; it < max_iterations; ++it) {
            DenseMatrix m(r, c);
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < c; ++j) m(i, j) = u[i] * m0(i, j) * v[j];
            const auto g = sqrt_gram(m);
            const auto& p = g.rows;
            const auto& q = g.cols;
            const double f = g.trace_norm;
            double row = 0.0, col = 0.0;
            for (std::size_t i = 0; i < r; ++i) row = std::max(row, p[i] / (u[i] * u[i]));
            for (std::size_t j = 0; j < c; ++j) col = std::max(col, q[j] / (v[j] * v[j]));
            const double upper = std::sqrt(row * col);
            out.lower = std::max(out.lower, f);
            out.upper = std::min(out.upper, upper);
            if (upper - f <= 1e-12 * upper) break;
            for (std::size_t i = 0; i < r; ++i) u[i] = std::sqrt(std::max(p[i], 1e-300) / f);
            for (std::size_t j = 0; j < c; ++j) v[j] = std::sqrt(std::max(q[j], 1e-300) / f);
            normalize(u);
            normalize(v);
        }
        if (out.upper - out.lower <= 1e-12 * out.upper) break;
    }
    return out;
}

DenseMatrix substitute_columns(const DenseMatrix& a, const ProductLayout& layout, std::uint64_t s, std::size_t b,
                               std::optional<std::size_t> row_symbol) {
    const std::size_t n = layout.copies;
    if (n == 0 || n > 63) throw InputError("substitute_columns: copies must be in 1..63");
    if (s >> n) throw InputError("substitute_columns: S names a copy beyond " + std::to_string(n));
    if (b >= layout.inner_cols) throw InputError("substitute_columns: column symbol out of range");
    if (row_symbol && *row_symbol >= layout.inner_rows) throw InputError("substitute_columns: row symbol out of range");
    auto power = [](std::size_t base, std::size_t e) {
        double p = 1.0;
        for (std::size_t i = 0; i < e; ++i) p *= double(base);
        return p;
    };
    if (double(a.rows()) != power(layout.inner_rows, n) || double(a.cols()) != power(layout.inner_cols, n))
        throw InputError("substitute_columns: matrix shape does not match the product layout");

    // Replace digit i (copy i + 1, most significant first) by `sym` when i is outside S.
    auto project = [&](std::size_t index, std::size_t base, std::size_t sym) {
        std::size_t out = 0, scale = 1;
        for (std::size_t t = 0; t < n; ++t) {
            const std::size_t i = n - 1 - t;  // copy index of the current least significant digit
            const std::size_t digit = index % base;
            index /= base;
            out += scale * (((s >> i) & 1) ? digit : sym);
            scale *= base;
        }
        return out;
    };
    std::vector<std::size_t> rows(a.rows()), cols(a.cols());
    for (std::size_t x = 0; x < a.rows(); ++x) rows[x] = row_symbol ? project(x, layout.inner_rows, *row_symbol) : x;
    for (std::size_t y = 0; y < a.cols(); ++y) cols[y] = project(y, layout.inner_cols, b);
    return a.submatrix(rows, cols);
}

DenseMatrix substitute_columns(const DenseMatrix& a, const SignMatrix& inner, std::size_t copies, std::uint64_t s) {
    const ProductLayout layout{copies, inner.rows(), inner.cols()};
    for (std::size_t b = 0; b < inner.cols(); ++b) {
        bool zero = true;
        for (std::size_t x = 0; x < inner.rows() && zero; ++x) zero = inner(x, b) == -1;
        if (zero) return substitute_columns(a, layout, s, b);
    }
    for (std::size_t x = 0; x < inner.rows(); ++x)
        for (std::size_t b = 0; b < inner.cols(); ++b)
            if (inner(x, b) == -1) return substitute_columns(a, layout, s, b, x);
    throw PreconditionError("substitute_columns: the inner problem has no input pair with value 0");
}

HadamardComposition hadamard_poly_compose(const MultiPoly& p, const std::vector<DenseMatrix>& mats, bool solve_b,
                                          std::vector<double> input_gamma2) {
    if (mats.empty()) throw InputError("hadamard_poly_compose: no matrices");
    if (p.num_vars() != mats.size()) {
        throw InputError("hadamard_poly_compose: polynomial has " + std::to_string(p.num_vars()) + " variables but " +
                         std::to_string(mats.size()) + " matrices were given");
    }
    for (const auto& m : mats)
        if (m.rows() != mats[0].rows() || m.cols() != mats[0].cols())
            throw InputError("hadamard_poly_compose: matrices differ in shape");
    if (!input_gamma2.empty() && input_gamma2.size() != mats.size())
        throw InputError("hadamard_poly_compose: one gamma2 value per matrix expected");

    HadamardComposition h;
    h.b = DenseMatrix(mats[0].rows(), mats[0].cols());
    std::vector<double> vals(mats.size());
    for (std::size_t i = 0; i < h.b.rows(); ++i)
        for (std::size_t j = 0; j < h.b.cols(); ++j) {
            for (std::size_t k = 0; k < mats.size(); ++k) vals[k] = mats[k](i, j);
            h.b(i, j) = evaluate(p, vals);
        }
    h.gamma2_inputs = std::move(input_gamma2);
    if (h.gamma2_inputs.empty())
        for (const auto& m : mats) h.gamma2_inputs.push_back(gamma2_exact(m).value);
    for (double g : h.gamma2_inputs) h.max_gamma2 = std::max(h.max_gamma2, g);
    for (const auto& [e, c] : p.terms()) {
        std::size_t deg = 0;
        for (auto v : e) deg += v;
        h.bound += std::abs(c) * std::pow(h.max_gamma2, double(deg));
    }
    if (solve_b) h.sdp_value = gamma2_exact(h.b).value;
    return h;
}

AmplifiedMatrix amplify_matrix(const DenseMatrix& a, double eps, double eps_target, bool certify) {
    if (!(eps > 0.0 && eps < 1.0)) throw InputError("amplify_matrix: need 0 < eps < 1");
    if (!(eps_target > 0.0)) throw InputError("amplify_matrix: target error must be positive");
    AmplifiedMatrix out;
    if (eps_target >= eps) {
        out.a = a;
        out.poly = MultiPoly::variable(1, 0);
    } else {
        // q maps [1 - eps, 1] into [1 - eps_target, 1] iff A_k(eps/2) <= eps_target/2.
        out.order = majority_order(eps / 2.0, eps_target / 2.0);
        out.poly = pm_amplifier(out.order);
        const UniPoly maj = majority_poly(out.order);
        out.a = DenseMatrix(a.rows(), a.cols());
        for (std::size_t k = 0; k < a.entries().size(); ++k)
            out.a.entries()[k] = 2.0 * maj((a.entries()[k] + 1.0) / 2.0) - 1.0;
    }
    if (certify) out.certificate = hadamard_poly_compose(out.poly, {a});
    return out;
}

}  // namespace adlab
