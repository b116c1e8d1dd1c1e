#include "pdm/special_functions.hpp"

#include <array>
#include <cmath>
#include <string>

#include "pdm/errors.hpp"

namespace pdm {

namespace {

// Double-double value hi + lo with |lo| <= ulp(hi)/2.
struct DD {
    double hi = 0.0;
    double lo = 0.0;
};

DD two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

DD quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}

DD two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

DD add(DD a, DD b) {
    DD s = two_sum(a.hi, b.hi);
    DD t = two_sum(a.lo, b.lo);
    s.lo += t.hi;
    s = quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return quick_two_sum(s.hi, s.lo);
}

DD mul(DD a, double b) {
    DD p = two_prod(a.hi, b);
    p.lo += a.lo * b;
    return quick_two_sum(p.hi, p.lo);
}

DD mul(DD a, DD b) {
    DD p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}

DD div(DD a, DD b) {
    double q1 = a.hi / b.hi;
    DD r = add(a, mul(b, -q1));
    double q2 = r.hi / b.hi;
    r = add(r, mul(b, -q2));
    double q3 = r.hi / b.hi;
    DD q = quick_two_sum(q1, q2);
    return add(q, DD{q3, 0.0});
}

void check_pole(int n, double b) {
    if (n < 0) throw ParameterError("kummer_poly: negative degree " + std::to_string(n));
    // (b)_k with k <= n vanishes iff b is a non-positive integer > -n
    for (int k = 0; k < n; ++k) {
        if (b + k == 0.0)
            throw PoleError("kummer_poly: (b)_k vanishes for b = " + std::to_string(b));
    }
}

}  // namespace

double PolySeries::operator()(double x) const {
    double acc = 0.0;
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) acc = acc * x + *it;
    return acc;
}

double kummer_poly(int n, double b, double x) {
    check_pole(n, b);
    // term ratio t_{k+1}/t_k = (k-n) x / ((b+k)(k+1)), carried in double-double
    // so the alternating sum keeps full double accuracy
    DD term{1.0, 0.0};
    DD sum{1.0, 0.0};
    for (int k = 0; k < n; ++k) {
        DD num = two_prod(static_cast<double>(k - n), x);
        DD den = mul(two_sum(b, static_cast<double>(k)), static_cast<double>(k + 1));
        term = div(mul(term, num), den);
        sum = add(sum, term);
    }
    return sum.hi + sum.lo;
}

PolySeries kummer_series(int n, double b) {
    check_pole(n, b);
    PolySeries p;
    p.degree = n;
    p.coefficients.resize(static_cast<std::size_t>(n) + 1);
    double c = 1.0;
    p.coefficients[0] = c;
    for (int k = 0; k < n; ++k) {
        c *= static_cast<double>(k - n) / ((b + k) * (k + 1));
        p.coefficients[static_cast<std::size_t>(k) + 1] = c;
    }
    return p;
}

double laguerre(int n, double alpha, double x) {
    if (n < 0) throw ParameterError("laguerre: negative degree");
    if (!(alpha > -1.0)) throw ParameterError("laguerre: alpha must exceed -1");
    double prev = 1.0;
    if (n == 0) return prev;
    double cur = 1.0 + alpha - x;
    for (int k = 1; k < n; ++k) {
        double next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    if (!std::isfinite(cur)) throw std::overflow_error("laguerre: overflow");
    return cur;
}

double pochhammer(double b, int n) {
    double p = 1.0;
    for (int k = 0; k < n; ++k) p *= b + k;
    return p;
}

namespace {

constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights on nodes 1, 3, 5, 7 of the Kronrod set
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Estimate {
    double value;
    double error;
};

Estimate gk15(const RealFunction& f, double a, double b) {
    double c = 0.5 * (a + b);
    double h = 0.5 * (b - a);
    double fc = f(c);
    if (!std::isfinite(fc)) throw SingularityError("adaptive_quad: non-finite integrand");
    double kron = kKronrodWeights[7] * fc;
    double gauss = kGaussWeights[3] * fc;
    for (int i = 0; i < 7; ++i) {
        double dx = h * kKronrodNodes[static_cast<std::size_t>(i)];
        double s = f(c - dx) + f(c + dx);
        if (!std::isfinite(s)) throw SingularityError("adaptive_quad: non-finite integrand");
        kron += kKronrodWeights[static_cast<std::size_t>(i)] * s;
        if (i % 2 == 1) gauss += kGaussWeights[static_cast<std::size_t>(i / 2)] * s;
    }
    return {kron * h, std::abs((kron - gauss) * h)};
}

double refine(const RealFunction& f, double a, double b, Estimate whole, double tol, int depth,
              int max_depth) {
    if (whole.error <= tol) return whole.value;
    if (depth >= max_depth)
        throw ConvergenceError("adaptive_quad: subdivision limit reached near x = " +
                               std::to_string(0.5 * (a + b)));
    double c = 0.5 * (a + b);
    Estimate left = gk15(f, a, c);
    Estimate right = gk15(f, c, b);
    return refine(f, a, c, left, 0.5 * tol, depth + 1, max_depth) +
           refine(f, c, b, right, 0.5 * tol, depth + 1, max_depth);
}

}  // namespace

double adaptive_quad(const RealFunction& f, double a, double b, double tol, int max_depth) {
    if (!(tol > 0.0)) throw ParameterError("adaptive_quad: tol must be positive");
    if (!(a <= b)) throw ParameterError("adaptive_quad: requires a <= b");
    if (!std::isfinite(a) || !std::isfinite(b))
        throw ParameterError("adaptive_quad: infinite limits");
    if (a == b) return 0.0;
    return refine(f, a, b, gk15(f, a, b), 0.1 * tol, 0, max_depth);
}

}  // namespace pdm
