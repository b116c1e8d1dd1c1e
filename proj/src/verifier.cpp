#include "pdm/verifier.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <cstdio>
#include <limits>

#include "pdm/errors.hpp"
#include "pdm/special_functions.hpp"

namespace pdm {

namespace {

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

double radial_diagonal(const MassValue& mv, double r, double l) {
    return l * (l + 1.0) / (2.0 * mv.m * r * r) - mv.dm / (2.0 * mv.m * mv.m * r);
}

}  // namespace

TridiagonalOperator discretize_pdm(const MassProfile& mass, const RealFunction& V, std::optional<double> l,
                                   const Grid& grid, std::optional<double> anchor) {
    grid.validate();
    std::vector<double> pts;
    if (anchor) {
        if (!(*anchor < grid.left)) throw ParameterError("anchor must lie left of the grid");
        pts.push_back(*anchor);
    }
    for (int i = 0; i < grid.points; ++i) pts.push_back(grid.x(i));
    const std::size_t M = pts.size() - 2;

    // w[k] = 1 / (m(midpoint) * width) on interval (pts[k], pts[k+1])
    std::vector<double> w(pts.size() - 1);
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        double h = pts[k + 1] - pts[k];
        double m = mass.eval(0.5 * (pts[k] + pts[k + 1])).m;
        w[k] = 1.0 / (m * h);
        if (!std::isfinite(w[k]) || !(m > 0.0))
            throw SingularityError("mass not finite and positive near x = " + num(pts[k]));
    }

    TridiagonalOperator op;
    op.nodes.resize(M);
    op.cells.resize(M);
    op.diagonal.resize(M);
    op.off_diagonal.resize(M - 1);
    for (std::size_t j = 1; j <= M; ++j) {
        double x = pts[j];
        double D = 0.5 * (pts[j + 1] - pts[j - 1]);
        double pot = V(x);
        if (l) pot += radial_diagonal(mass.eval(x), x, *l);
        if (!std::isfinite(pot)) throw SingularityError("potential not finite at x = " + num(x));
        op.nodes[j - 1] = x;
        op.cells[j - 1] = D;
        op.diagonal[j - 1] = 0.5 * (w[j - 1] + w[j]) / D + pot;
    }
    for (std::size_t j = 0; j + 1 < M; ++j)
        op.off_diagonal[j] = -0.5 * w[j + 1] / std::sqrt(op.cells[j] * op.cells[j + 1]);
    return op;
}

namespace {

int sturm_count(const TridiagonalOperator& op, const std::vector<double>& e2, double x, double pivmin) {
    int count = 0;
    double q = op.diagonal[0] - x;
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++count;
    for (std::size_t i = 1; i < op.diagonal.size(); ++i) {
        q = op.diagonal[i] - x - e2[i - 1] / q;
        if (std::abs(q) < pivmin) q = -pivmin;
        if (q < 0.0) ++count;
    }
    return count;
}

void check_operator(const TridiagonalOperator& op) {
    if (op.diagonal.empty()) throw ParameterError("empty operator");
    if (op.off_diagonal.size() + 1 != op.diagonal.size())
        throw ParameterError("off-diagonal length must be N-1");
}

double operator_norm(const TridiagonalOperator& op) {
    double norm = 0.0;
    const std::size_t n = op.diagonal.size();
    for (std::size_t i = 0; i < n; ++i) {
        double row = std::abs(op.diagonal[i]);
        if (i > 0) row += std::abs(op.off_diagonal[i - 1]);
        if (i + 1 < n) row += std::abs(op.off_diagonal[i]);
        norm = std::max(norm, row);
    }
    return norm;
}

}  // namespace

std::vector<double> lowest_eigenvalues(const TridiagonalOperator& op, int k) {
    check_operator(op);
    const std::size_t n = op.diagonal.size();
    if (k < 1 || static_cast<std::size_t>(k) > n)
        throw ParameterError("requested " + std::to_string(k) + " eigenvalues of a " + std::to_string(n) +
                             "x" + std::to_string(n) + " operator");
    std::vector<double> e2(n - 1);
    double emax = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        e2[i] = op.off_diagonal[i] * op.off_diagonal[i];
        emax = std::max(emax, e2[i]);
    }
    double pivmin = DBL_MIN * std::max(1.0, emax);

    double lo = std::numeric_limits<double>::max(), hi = -lo;
    for (std::size_t i = 0; i < n; ++i) {
        double rad = (i > 0 ? std::abs(op.off_diagonal[i - 1]) : 0.0) + (i + 1 < n ? std::abs(op.off_diagonal[i]) : 0.0);
        lo = std::min(lo, op.diagonal[i] - rad);
        hi = std::max(hi, op.diagonal[i] + rad);
    }
    double pad = 2.0 * DBL_EPSILON * std::max(std::abs(lo), std::abs(hi)) + pivmin;
    lo -= pad;
    hi += pad;

    std::vector<double> out;
    double left = lo;
    for (int j = 0; j < k; ++j) {
        double a = left, b = hi;
        for (int it = 0; it < 400; ++it) {
            double mid = 0.5 * (a + b);
            if (mid <= a || mid >= b) break;
            if (b - a <= 2.0 * DBL_EPSILON * std::max(std::abs(a), std::abs(b)) + pivmin) break;
            if (sturm_count(op, e2, mid, pivmin) > j)
                b = mid;
            else
                a = mid;
        }
        out.push_back(0.5 * (a + b));
        left = a;
    }
    return out;
}

namespace {

struct TridiagLU {
    std::vector<double> dl, d, du, du2;
    std::vector<std::size_t> ipiv;
};

TridiagLU factor_shifted(const TridiagonalOperator& op, double lambda, double tiny) {
    const std::size_t n = op.diagonal.size();
    TridiagLU f;
    f.d.resize(n);
    for (std::size_t i = 0; i < n; ++i) f.d[i] = op.diagonal[i] - lambda;
    f.dl = op.off_diagonal;
    f.du = op.off_diagonal;
    f.du2.assign(n > 2 ? n - 2 : 0, 0.0);
    f.ipiv.resize(n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (std::abs(f.d[i]) >= std::abs(f.dl[i])) {
            if (f.d[i] == 0.0) f.d[i] = tiny;
            double fact = f.dl[i] / f.d[i];
            f.dl[i] = fact;
            f.d[i + 1] -= fact * f.du[i];
            f.ipiv[i] = i;
        } else {
            double fact = f.d[i] / f.dl[i];
            f.d[i] = f.dl[i];
            f.dl[i] = fact;
            double temp = f.du[i];
            f.du[i] = f.d[i + 1];
            f.d[i + 1] = temp - fact * f.d[i + 1];
            if (i + 2 < n) {
                f.du2[i] = f.du[i + 1];
                f.du[i + 1] = -fact * f.du[i + 1];
            }
            f.ipiv[i] = i + 1;
        }
    }
    if (f.d[n - 1] == 0.0) f.d[n - 1] = tiny;
    return f;
}

void solve_lu(const TridiagLU& f, std::vector<double>& b) {
    const std::size_t n = b.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (f.ipiv[i] == i) {
            b[i + 1] -= f.dl[i] * b[i];
        } else {
            std::swap(b[i], b[i + 1]);
            b[i + 1] -= f.dl[i] * b[i];
        }
    }
    b[n - 1] /= f.d[n - 1];
    if (n > 1) b[n - 2] = (b[n - 2] - f.du[n - 2] * b[n - 1]) / f.d[n - 2];
    for (std::size_t i = n >= 3 ? n - 3 : 0; n >= 3; --i) {
        b[i] = (b[i] - f.du[i] * b[i + 1] - f.du2[i] * b[i + 2]) / f.d[i];
        if (i == 0) break;
    }
}

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

}  // namespace

GridFunction eigenvector(const TridiagonalOperator& op, double lambda) {
    check_operator(op);
    const std::size_t n = op.diagonal.size();
    double scale = operator_norm(op);
    double tiny = DBL_EPSILON * std::max(1.0, scale);
    // an accurate eigenvector still leaves a residual of a few ulps of the operator
    double tol = std::max(1e-8, 16.0 * DBL_EPSILON * scale);

    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 + 0.1 * std::sin(static_cast<double>(i) + 1.0);
    TridiagLU f = factor_shifted(op, lambda, tiny);
    double res = 0.0;
    bool converged = false;
    for (int it = 0; it < 20; ++it) {
        solve_lu(f, v);
        double nv = norm2(v);
        if (!std::isfinite(nv) || nv == 0.0) throw ConvergenceError("inverse iteration broke down");
        for (double& x : v) x /= nv;
        std::vector<double> r(n);
        for (std::size_t i = 0; i < n; ++i) {
            double t = (op.diagonal[i] - lambda) * v[i];
            if (i > 0) t += op.off_diagonal[i - 1] * v[i - 1];
            if (i + 1 < n) t += op.off_diagonal[i] * v[i + 1];
            r[i] = t;
        }
        res = norm2(r);
        if (res <= tol) {
            converged = true;
            break;
        }
    }
    if (!converged) throw ConvergenceError("inverse iteration residual " + num(res) + " above " + num(tol));

    double vmax = 0.0;
    for (double x : v) vmax = std::max(vmax, std::abs(x));
    for (double x : v) {
        if (std::abs(x) > 1e-3 * vmax) {
            if (x < 0.0)
                for (double& y : v) y = -y;
            break;
        }
    }
    GridFunction g;
    g.values = v;
    if (!op.nodes.empty()) {
        g.x = op.nodes;
        g.left = op.nodes.front();
        g.right = op.nodes.back();
        g.spacing = n > 1 ? (g.right - g.left) / static_cast<double>(n - 1) : 0.0;
    }
    return g;
}

GridFunction eigenfunction(const TridiagonalOperator& op, double lambda) {
    GridFunction g = eigenvector(op, lambda);
    if (op.cells.size() == g.values.size())
        for (std::size_t i = 0; i < g.values.size(); ++i) g.values[i] /= std::sqrt(op.cells[i]);
    return g;
}

double residual_norm(const MassProfile& mass, const RealFunction& V, std::optional<double> l, const Grid& grid,
                     const RealFunction& phi, double E) {
    grid.validate();
    const int N = grid.points;
    const double h = grid.spacing();
    std::vector<double> f(static_cast<std::size_t>(N)), w(static_cast<std::size_t>(N - 1));
    for (int i = 0; i < N; ++i) {
        f[static_cast<std::size_t>(i)] = phi(grid.x(i));
        if (!std::isfinite(f[static_cast<std::size_t>(i)]))
            throw SingularityError("wavefunction not finite at x = " + num(grid.x(i)));
    }
    for (int i = 0; i + 1 < N; ++i)
        w[static_cast<std::size_t>(i)] = 1.0 / (mass.eval(0.5 * (grid.x(i) + grid.x(i + 1))).m * h);
    double rr = 0.0, ff = 0.0;
    for (int i = 1; i + 1 < N; ++i) {
        auto u = static_cast<std::size_t>(i);
        double x = grid.x(i);
        double pot = V(x);
        if (l) pot += radial_diagonal(mass.eval(x), x, *l);
        double kin = -0.5 * (w[u] * (f[u + 1] - f[u]) - w[u - 1] * (f[u] - f[u - 1])) / h;
        double r = kin + (pot - E) * f[u];
        rr += r * r;
        ff += f[u] * f[u];
    }
    if (ff == 0.0) throw ParameterError("residual_norm: wavefunction vanishes on the grid");
    return std::sqrt(rr / ff);
}

bool VerificationReport::all_pass() const {
    return std::all_of(levels.begin(), levels.end(), [](const LevelRecord& r) { return r.pass; });
}

bool level_passes(double abs_err, double rel_err, double reference_energy, double tol) {
    if (rel_err <= tol) return true;
    return std::abs(reference_energy) < 1.0 && abs_err <= tol;
}

std::vector<double> solve_reference(const ReferencePotential& ref, double lp, double y_l, double y_r, int points,
                                    int k) {
    MassProfile unit = constant_mass();
    auto V = [&ref, lp](double y) { return ref.effective(y, lp); };
    TridiagonalOperator op = discretize_pdm(unit, V, std::nullopt, Grid{y_l, y_r, points});
    return lowest_eigenvalues(op, k);
}

std::optional<double> anchor_for(const TargetModel& model, const Grid& grid) {
    double edge = model.domain().lower;
    if (!std::isfinite(edge)) return std::nullopt;
    double gap = grid.left - edge;
    if (gap > 0.0 && gap <= grid.spacing()) return edge;
    return std::nullopt;
}

namespace {

// y beyond which |psi| stays below 1e-10 of its maximum
double support_extent(const ReferencePotential& ref, int n, double lp) {
    double peak = 0.0, last = 0.0;
    for (double y = 1e-3; y < 1e7; y *= 1.01) {
        double v = std::abs(ref.psi(n, lp, y));
        if (!std::isfinite(v)) continue;
        peak = std::max(peak, v);
        if (v >= 1e-10 * peak) last = y;
    }
    return 1.2 * last;
}

struct Shape {
    double diff = 0.0;
    bool finite = true;
};

// max difference of two functions after trapezoid normalization and sign alignment
Shape shape_difference(const std::vector<double>& x, const std::vector<double>& f, const std::vector<double>& g) {
    Shape s;
    double nf = 0.0, ng = 0.0, dot = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        double dx = x[i + 1] - x[i];
        nf += 0.5 * dx * (f[i] * f[i] + f[i + 1] * f[i + 1]);
        ng += 0.5 * dx * (g[i] * g[i] + g[i + 1] * g[i + 1]);
        dot += 0.5 * dx * (f[i] * g[i] + f[i + 1] * g[i + 1]);
    }
    if (!std::isfinite(nf) || !std::isfinite(ng) || !std::isfinite(dot) || nf == 0.0 || ng == 0.0) {
        s.finite = false;
        return s;
    }
    double sf = 1.0 / std::sqrt(nf), sg = (dot < 0.0 ? -1.0 : 1.0) / std::sqrt(ng);
    for (std::size_t i = 0; i < x.size(); ++i) s.diff = std::max(s.diff, std::abs(f[i] * sf - g[i] * sg));
    return s;
}

double safe_eval(const std::function<double(double)>& fn, const TargetModel& model, double x) {
    if (!model.domain().contains(x)) return 0.0;
    return fn(x);
}

struct Notes {
    std::vector<std::string> items;
    void add(std::string s) { items.push_back(std::move(s)); }
};

void one_dimensional_notes(const TargetModel& model, const Grid& grid, double tol, int n_max, Notes& notes) {
    const auto& eq = model.descriptor().equations;
    const std::string cid = to_string(model.id);
    const double A = model.reference.A, B = model.reference.B;

    // printed spectrum against the reference spectrum it was derived from
    for (int n = 0; n <= n_max; ++n) {
        double ref_printed = kratzer_energy(n, A, B);
        double case_printed = model.energy_printed(n, 0);
        if (std::abs(ref_printed - case_printed) > tol * std::max(1.0, std::abs(ref_printed))) {
            notes.add(cid + ": eq 21 with A = theta*beta gives E_" + std::to_string(n) + " = " + num(ref_printed) +
                      " but eq " + std::to_string(eq[1]) + " prints " + num(case_printed) + " (ratio " +
                      num(ref_printed / case_printed) + ", missing factor 2)");
            break;
        }
    }
    for (int n = 0; n <= n_max; ++n) {
        double exact = kratzer_energy_exact(n, A, B);
        double printed = kratzer_energy(n, A, B);
        if (std::abs(exact - printed) > tol * std::max(1.0, std::abs(exact))) {
            notes.add(cid + ": eq 21 gives eps_" + std::to_string(n) + " = " + num(printed) +
                      " while the Kratzer problem has -A^2/(2(n+s)^2) = " + num(exact) +
                      " with s = 1/2 + sqrt(1/4 + 2B); radicand 1-16B should read 1+8B");
            break;
        }
    }

    // sigma: closed form and printed form against quadrature of sqrt(m)
    double lo = std::max(grid.left, model.domain().lower);
    double hi = grid.right;
    double x0 = model.map->x0;
    double base = std::isfinite(x0) ? x0 : lo + 0.01 * (hi - lo);
    double closed_dev = 0.0, printed_dev = 0.0, worst_x = 0.0;
    int printed_nonfinite = 0;
    auto sqrt_m = [&model](double t) { return std::sqrt(model.profile.eval(t).m); };
    for (int k = 1; k <= 50; ++k) {
        double x = lo + (hi - lo) * k / 51.0;
        if (x == base) continue;
        double q = (x >= base ? adaptive_quad(sqrt_m, base, x) : -adaptive_quad(sqrt_m, x, base)) / model.map->beta;
        double sb = model.map->sigma(base);
        closed_dev = std::max(closed_dev, std::abs(model.map->sigma(x) - sb - q));
        double pb = model.sigma_printed(base), px = model.sigma_printed(x);
        if (!std::isfinite(pb) || !std::isfinite(px)) {
            ++printed_nonfinite;
            continue;
        }
        double d = std::abs(px - pb - q);
        if (d > printed_dev) {
            printed_dev = d;
            worst_x = x;
        }
    }
    if (printed_dev > 1e-8 || printed_nonfinite > 0) {
        std::string s = cid + ": sigma printed with eqs " + std::to_string(eq[0]) + "-" + std::to_string(eq[2]);
        if (printed_dev > 1e-8)
            s += " deviates from the quadrature of sqrt(m) by up to " + num(printed_dev) + " (at x = " + num(worst_x) + ")";
        if (printed_nonfinite > 0)
            s += std::string(printed_dev > 1e-8 ? ";" : "") + " is not finite in double precision at " +
                 std::to_string(printed_nonfinite) + " of 50 sample points";
        s += "; the closed form used here agrees with quadrature to " + num(closed_dev);
        notes.add(s);
    }

    // printed target potential
    double vdev = 0.0, vx = 0.0;
    int v_nonfinite = 0;
    for (int i = 1; i + 1 < grid.points; ++i) {
        double x = grid.x(i);
        if (!model.domain().contains(x)) continue;
        double vc = model.potential(x), vp = model.potential_printed(x);
        if (!std::isfinite(vp)) {
            ++v_nonfinite;
            continue;
        }
        double d = std::abs(vp - vc) / std::max(1.0, std::abs(vc));
        if (d > vdev) {
            vdev = d;
            vx = x;
        }
    }
    if (vdev > tol || v_nonfinite > 0)
        notes.add(cid + ": potential printed as eq " + std::to_string(eq[0]) + " differs from U(beta sigma) + mass term by up to " +
                  num(vdev) + " (relative, at x = " + num(vx) + ")" +
                  (v_nonfinite ? ", not finite at " + std::to_string(v_nonfinite) + " grid points" : std::string()));
}

}  // namespace

VerificationReport verify_model(const TargetModel& model, const Grid& grid, int n_max, const std::vector<int>& l_set,
                                double tol, const VerifyOptions& options) {
    grid.validate();
    if (n_max < 0) throw ParameterError("n_max must be non-negative");
    if (!(tol > 0.0)) throw ParameterError("tol must be positive");
    Interval dom = model.domain();
    if (grid.left < dom.lower || grid.right > dom.upper)
        throw DomainError(to_string(model.id) + ": grid [" + num(grid.left) + ", " + num(grid.right) +
                          "] leaves the domain");

    VerificationReport rep;
    rep.case_id = to_string(model.id);
    rep.grid = grid;
    rep.tol = tol;
    rep.generated_by = kGeneratedBy;
    Notes notes;
    const auto& eq = model.descriptor().equations;
    const std::string cid = rep.case_id;
    const int k = n_max + 1;

    std::vector<int> ls = model.radial() ? l_set : std::vector<int>{0};
    std::sort(ls.begin(), ls.end());
    ls.erase(std::unique(ls.begin(), ls.end()), ls.end());

    std::optional<double> anchor = anchor_for(model, grid);
    double left_node = anchor ? *anchor : grid.left;

    if (!model.radial()) one_dimensional_notes(model, grid, tol, n_max, notes);

    std::vector<double> xs;
    for (int i = 0; i < grid.points; ++i) xs.push_back(grid.x(i));

    for (int l : ls) {
        std::optional<double> lrad = model.radial() ? std::optional<double>(l) : std::nullopt;
        auto V = [&model, l](double x) { return model.potential(x, l); };
        TridiagonalOperator op = discretize_pdm(model.profile, V, lrad, grid, anchor);
        std::vector<double> Enum = lowest_eigenvalues(op, k);

        double lp = model.reference_lp(l);
        double y_l = model.to_reference(left_node, l);
        double y_r = model.to_reference(grid.right, l);
        bool per_level = model.radial() && model.radial_case(l).branch == Branch::NuB;
        std::vector<double> eps_shared;
        if (!per_level) eps_shared = solve_reference(model.reference_for(0, l), lp, y_l, y_r, grid.points, k);

        for (int n = 0; n <= n_max; ++n) {
            LevelRecord rec;
            rec.n = n;
            rec.l = l;
            rec.E_construction = model.energy(n, l);
            rec.E_numeric = Enum[static_cast<std::size_t>(n)];
            try {
                rec.E_printed = model.energy_printed(n, l);
            } catch (const Error& e) {
                rec.E_printed = std::numeric_limits<double>::quiet_NaN();
                notes.add(cid + ": spectrum printed as eq " + std::to_string(eq[1]) + " not evaluable at n = " +
                          std::to_string(n) + ", l = " + std::to_string(l) + ": " + e.what());
            }
            ReferencePotential ref = model.reference_for(n, l);
            double eps_num = per_level ? solve_reference(ref, lp, y_l, y_r, grid.points, k)[static_cast<std::size_t>(n)]
                                       : eps_shared[static_cast<std::size_t>(n)];
            rec.E_reference = model.energy_from_reference(n, l, eps_num);

            auto phi = [&model, n, l](double x) {
                return safe_eval([&](double t) { return model.wavefunction(n, l, t); }, model, x);
            };
            std::vector<double> fc(xs.size());
            double peak = 0.0;
            for (std::size_t i = 0; i < xs.size(); ++i) {
                fc[i] = phi(xs[i]);
                peak = std::max(peak, std::abs(fc[i]));
            }
            double edge_val = std::abs(fc.back());
            if (!anchor) edge_val = std::max(edge_val, std::abs(fc.front()));
            bool covered = edge_val < 1e-6 * peak;

            if (covered) {
                rec.oracle = "closed_form";
                rec.abs_err = std::abs(rec.E_numeric - rec.E_construction);
                rec.rel_err = rec.abs_err / std::abs(rec.E_construction);
                rec.pass = level_passes(rec.abs_err, rec.rel_err, rec.E_construction, tol);
            } else {
                if (options.strict_support)
                    throw SupportError(cid + ": level n = " + std::to_string(n) + ", l = " + std::to_string(l) +
                                       " does not decay inside the grid");
                rec.oracle = "reference_numeric";
                double Y = support_extent(ref, n, lp);
                int pts = std::max(grid.points, 20001);
                double eps_own = solve_reference(ref, lp, 0.0, Y, pts, k)[static_cast<std::size_t>(n)];
                double E_check = model.energy_from_reference(n, l, eps_own);
                double d1 = std::abs(rec.E_numeric - rec.E_reference);
                double d2 = std::abs(E_check - rec.E_construction);
                rec.abs_err = std::max(d1, d2);
                rec.rel_err = std::max(d1 / std::abs(rec.E_reference), d2 / std::abs(rec.E_construction));
                rec.pass = level_passes(rec.abs_err, rec.rel_err, rec.E_reference, tol);
                notes.add(cid + ": n = " + std::to_string(n) + ", l = " + std::to_string(l) +
                          " extends past the grid (edge/peak " + num(edge_val / peak) +
                          "); oracle is the reference problem solved on the mapped interval [" + num(y_l) + ", " +
                          num(y_r) + "], closed form checked on [0, " + num(Y) + "]");
            }
            rec.residual = residual_norm(model.profile, V, lrad, grid, phi, rec.E_construction);

            if (std::isfinite(rec.E_printed)) {
                double d = std::abs(rec.E_printed - rec.E_construction);
                if (!level_passes(d, d / std::abs(rec.E_construction), rec.E_construction, tol))
                    notes.add(cid + ": spectrum printed as eq " + std::to_string(eq[1]) + " gives E(n=" +
                              std::to_string(n) + ", l=" + std::to_string(l) + ") = " + num(rec.E_printed) +
                              ", construction and numerics give " + num(rec.E_construction) + " / " +
                              num(rec.E_numeric));
            }

            // printed eigenfunction shape
            std::vector<double> fp(xs.size());
            bool evaluable = true;
            std::string why;
            try {
                for (std::size_t i = 0; i < xs.size(); ++i)
                    fp[i] = safe_eval([&](double t) { return model.wavefunction_printed(n, l, t); }, model, xs[i]);
            } catch (const Error& e) {
                evaluable = false;
                why = e.what();
            }
            if (!evaluable) {
                notes.add(cid + ": eigenfunction printed as eq " + std::to_string(eq[2]) + " not evaluable at n = " +
                          std::to_string(n) + ", l = " + std::to_string(l) + ": " + why);
            } else {
                Shape s = shape_difference(xs, fc, fp);
                if (!s.finite || s.diff > tol) {
                    std::string msg = cid + ": eigenfunction printed as eq " + std::to_string(eq[2]) + " at n = " +
                                      std::to_string(n) + ", l = " + std::to_string(l);
                    if (!s.finite) {
                        msg += " is not normalizable on the grid";
                    } else {
                        msg += " differs in normalized shape by " + num(s.diff);
                        try {
                            auto pp = [&](double x) {
                                return safe_eval([&](double t) { return model.wavefunction_printed(n, l, t); }, model, x);
                            };
                            double rp = residual_norm(model.profile, V, lrad, grid, pp, rec.E_construction);
                            msg += "; residual " + num(rp) + " vs " + num(rec.residual) + " for the transported form";
                        } catch (const Error&) {
                        }
                    }
                    notes.add(msg);
                }
            }

            if (!model.radial()) {
                std::vector<double> fi(xs.size());
                for (std::size_t i = 0; i < xs.size(); ++i)
                    fi[i] = safe_eval([&](double t) { return model.wavefunction_inverse_prefactor(n, 0, t); }, model,
                                      xs[i]);
                Shape s = shape_difference(xs, fc, fi);
                if (!s.finite || s.diff > tol) {
                    auto pi = [&](double x) {
                        return safe_eval([&](double t) { return model.wavefunction_inverse_prefactor(n, 0, t); }, model, x);
                    };
                    double ri = residual_norm(model.profile, V, lrad, grid, pi, rec.E_construction);
                    notes.add(cid + ": n = " + std::to_string(n) + ": prefactor sqrt(h'/m) = m^(-1/4) of eq 12 gives residual " +
                              num(ri) + ", the m^(+1/4) prefactor of eq " + std::to_string(eq[2]) + " gives " +
                              num(rec.residual) + "; eq " + std::to_string(eq[2]) + " is the consistent one");
                }
            }
            rep.levels.push_back(rec);
        }
    }
    rep.notes = std::move(notes.items);
    return rep;
}

ConvergenceStudy convergence_study(const MassProfile& mass, const RealFunction& V, std::optional<double> l,
                                   const std::vector<Grid>& grids, int n, double exact, std::optional<double> anchor) {
    if (grids.size() < 3) throw ParameterError("convergence study needs at least 3 grids");
    ConvergenceStudy st;
    for (const Grid& g : grids) {
        TridiagonalOperator op = discretize_pdm(mass, V, l, g, anchor);
        double E = lowest_eigenvalues(op, n + 1)[static_cast<std::size_t>(n)];
        st.spacing.push_back(g.spacing());
        st.error.push_back(std::abs(E - exact));
    }
    for (std::size_t i = 1; i < grids.size(); ++i) {
        double ratio = st.spacing[i - 1] / st.spacing[i];
        if (!(ratio > 1.05)) throw ParameterError("grids must be successively refined");
        if (st.error[i] == 0.0 || st.error[i - 1] == 0.0) throw ParameterError("zero error, order undefined");
        st.orders.push_back(std::log(st.error[i - 1] / st.error[i]) / std::log(ratio));
    }
    st.order = st.orders.back();
    return st;
}

ConvergenceStudy convergence_study(const TargetModel& model, const std::vector<Grid>& grids, int n, int l) {
    if (grids.empty()) throw ParameterError("convergence study needs at least 3 grids");
    std::optional<double> anchor = anchor_for(model, grids.back());
    std::optional<double> lrad = model.radial() ? std::optional<double>(l) : std::nullopt;
    auto V = [&model, l](double x) { return model.potential(x, l); };
    return convergence_study(model.profile, V, lrad, grids, n, model.energy(n, l), anchor);
}

}  // namespace pdm
