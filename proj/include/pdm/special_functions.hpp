#pragma once

#include <functional>
#include <vector>

namespace pdm {

// Polynomial in ascending powers.
struct PolySeries {
    int degree = 0;
    std::vector<double> coefficients;

    double operator()(double x) const;
};

// 1F1(-n; b; x), a polynomial of degree n. Throws PoleError when (b)_k
// vanishes for some k <= n.
double kummer_poly(int n, double b, double x);

// Coefficients of 1F1(-n; b; x) in ascending powers of x.
PolySeries kummer_series(int n, double b);

// Generalized Laguerre L_n^(alpha)(x) by the three-term recurrence in n.
double laguerre(int n, double alpha, double x);

// (b)_n as a running product.
double pochhammer(double b, int n);

using RealFunction = std::function<double(double)>;

// Adaptive Gauss-Kronrod (7/15) bisection. Absolute error target tol.
double adaptive_quad(const RealFunction& f, double a, double b, double tol = 1e-10,
                     int max_depth = 50);

}  // namespace pdm
