#include "pdm/catalog.hpp"

#include <cmath>
#include <sstream>

#include "pdm/errors.hpp"
#include "pdm/special_functions.hpp"

namespace pdm {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << v;
    return os.str();
}

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw ParameterError(std::string(what) + " must be positive and finite, got " + fmt(v));
}

// log(1 + exp(t)) without overflow
double softplus(double t) { return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t)); }

}  // namespace

std::string to_string(MassId id) {
    switch (id) {
        case MassId::Rational: return "Rational";
        case MassId::Lorentzian: return "Lorentzian";
        case MassId::Tanh: return "Tanh";
        case MassId::RadialPower: return "RadialPower";
        case MassId::Constant: return "Constant";
    }
    return "?";
}

MassValue MassProfile::eval(double x) const {
    if (!domain.contains(x))
        throw DomainError(to_string(id) + " mass: x = " + fmt(x) + " outside domain (" +
                          fmt(domain.lower) + ", " + fmt(domain.upper) + ")");
    return evaluator(x);
}

MassValue mass_eval(const MassProfile& profile, double x) { return profile.eval(x); }

MassProfile constant_mass() {
    MassProfile p;
    p.id = MassId::Constant;
    p.evaluator = [](double) { return MassValue{1.0, 0.0, 0.0}; };
    p.antiderivative = [](double x) { return x; };
    return p;
}

MassProfile rational_mass(double delta) {
    require_positive(delta, "delta");
    MassProfile p;
    p.id = MassId::Rational;
    p.params = {{"delta", delta}};
    const double d1 = delta - 1.0;
    p.evaluator = [d1](double x) {
        double q = 1.0 + x * x;
        double g = 1.0 + d1 / q;
        double g1 = -2.0 * x * d1 / (q * q);
        double g2 = d1 * (6.0 * x * x - 2.0) / (q * q * q);
        return MassValue{g * g, 2.0 * g * g1, 2.0 * (g1 * g1 + g * g2)};
    };
    p.antiderivative = [d1](double x) { return x + d1 * std::atan(x); };
    p.printed_antiderivative = [d1](double x) { return x + d1 / std::tan(x); };
    return p;
}

MassProfile lorentzian_mass(double a, double dp) {
    require_positive(a, "a");
    require_positive(dp, "dp");
    MassProfile p;
    p.id = MassId::Lorentzian;
    p.params = {{"a", a}, {"dp", dp}};
    p.evaluator = [a, dp](double x) {
        double q = dp + x * x;
        return MassValue{a / q, -2.0 * a * x / (q * q), a * (6.0 * x * x - 2.0 * dp) / (q * q * q)};
    };
    p.antiderivative = [a, dp](double x) { return std::sqrt(a) * std::asinh(x / std::sqrt(dp)); };
    p.printed_antiderivative = [a](double x) {
        return std::sqrt(a) * std::log(x + std::sqrt(1.0 + x * x));
    };
    return p;
}

MassProfile tanh_mass(double dpp) {
    require_positive(dpp, "dpp");
    MassProfile p;
    p.id = MassId::Tanh;
    p.params = {{"dpp", dpp}};
    // with s = 1/(1+exp(-2kx)): m = 2s, and s, 1-s are both formed without cancellation
    p.evaluator = [k = dpp](double x) {
        double s = 1.0 / (1.0 + std::exp(-2.0 * k * x));
        double r = 1.0 / (1.0 + std::exp(2.0 * k * x));
        return MassValue{2.0 * s, 4.0 * k * s * r, 8.0 * k * k * s * r * (r - s)};
    };
    // (sqrt2/k) atanh(u), u = sqrt(s), rewritten as (1/(sqrt2 k)) [2 log(1+u) - log(1-s)]
    p.antiderivative = [k = dpp](double x) {
        double s = 1.0 / (1.0 + std::exp(-2.0 * k * x));
        double u = std::sqrt(s);
        return (2.0 * std::log1p(u) + softplus(2.0 * k * x)) / (std::sqrt(2.0) * k);
    };
    p.printed_antiderivative = [k = dpp](double x) {
        return std::sqrt(2.0) / k * std::atanh(std::sqrt(1.0 + std::tanh(k * x)) / std::sqrt(2.0));
    };
    return p;
}

MassProfile radial_power_mass(double mu, double kappa) {
    require_positive(mu, "mu");
    if (!std::isfinite(kappa)) throw ParameterError("kappa must be finite");
    MassProfile p;
    p.id = MassId::RadialPower;
    p.params = {{"mu", mu}, {"kappa", kappa}};
    p.domain = {0.0, kInf};
    p.evaluator = [mu, kappa](double r) {
        double m = mu * std::pow(r, kappa);
        return MassValue{m, kappa * m / r, kappa * (kappa - 1.0) * m / (r * r)};
    };
    if (kappa == -2.0) {
        p.antiderivative = [mu](double r) { return std::sqrt(mu) * std::log(r); };
    } else {
        double e = 0.5 * kappa + 1.0;
        p.antiderivative = [mu, e](double r) { return std::sqrt(mu) * std::pow(r, e) / e; };
    }
    return p;
}

std::string to_string(ReferenceId id) {
    switch (id) {
        case ReferenceId::Kratzer: return "Kratzer";
        case ReferenceId::CoulombConst: return "CoulombConst";
        case ReferenceId::CoulombInvSq: return "CoulombInvSq";
        case ReferenceId::OscInvSq: return "OscInvSq";
    }
    return "?";
}

ReferencePotential kratzer(double A, double B) {
    ReferencePotential r;
    r.id = ReferenceId::Kratzer;
    r.A = A;
    r.B = B;
    return r;
}

ReferencePotential coulomb_const(double a, double c) {
    ReferencePotential r;
    r.id = ReferenceId::CoulombConst;
    r.a = a;
    r.c = c;
    return r;
}

ReferencePotential coulomb_invsq(double a, double c) {
    ReferencePotential r;
    r.id = ReferenceId::CoulombInvSq;
    r.a = a;
    r.c = c;
    return r;
}

ReferencePotential osc_invsq(double a, double c) {
    ReferencePotential r;
    r.id = ReferenceId::OscInvSq;
    r.a = a;
    r.c = c;
    return r;
}

Params ReferencePotential::params() const {
    if (id == ReferenceId::Kratzer) return {{"A", A}, {"B", B}};
    return {{"a", a}, {"c", c}};
}

double ReferencePotential::U(double y) const {
    switch (id) {
        case ReferenceId::Kratzer: return A / y + B / (y * y);
        case ReferenceId::CoulombConst: return -a / y + c;
        case ReferenceId::CoulombInvSq: return -a / y + c / (y * y);
        case ReferenceId::OscInvSq: return a / (y * y) + c * y * y;
    }
    return 0.0;
}

double ReferencePotential::effective(double y, double lp) const {
    if (!radial()) return U(y);
    return U(y) + 0.5 * lp * (lp + 1.0) / (y * y);
}

std::string ReferencePotential::invalid_reason(int n, double lp) const {
    if (n < 0) return "level n must be non-negative";
    switch (id) {
        case ReferenceId::Kratzer:
            if (!(A < 0.0)) return "Kratzer requires A < 0, got A = " + fmt(A);
            if (16.0 * B > 1.0) return "Kratzer requires 16 B <= 1, got B = " + fmt(B);
            if (0.25 + 2.0 * B < 0.0) return "Kratzer requires B >= -1/8";
            return {};
        case ReferenceId::CoulombConst:
            if (!(a > 0.0)) return "Coulomb reference requires a > 0, got a = " + fmt(a);
            if (!(lp >= -0.5)) return "reference l' must be >= -1/2, got " + fmt(lp);
            return {};
        case ReferenceId::CoulombInvSq:
            if (!(a > 0.0)) return "Coulomb reference requires a > 0, got a = " + fmt(a);
            if (!(lp >= -0.5)) return "reference l' must be >= -1/2, got " + fmt(lp);
            if ((lp + 0.5) * (lp + 0.5) + 2.0 * c < 0.0)
                return "(l'+1/2)^2 + 2c must be non-negative";
            return {};
        case ReferenceId::OscInvSq:
            if (!(c > 0.0)) return "oscillator reference requires c > 0, got c = " + fmt(c);
            if (!(lp >= -0.5)) return "reference l' must be >= -1/2, got " + fmt(lp);
            if ((2.0 * lp + 1.0) * (2.0 * lp + 1.0) + 8.0 * a < 0.0)
                return "(2l'+1)^2 + 8a must be non-negative";
            return {};
    }
    return {};
}

void ReferencePotential::require_valid(int n, double lp) const {
    std::string why = invalid_reason(n, lp);
    if (!why.empty()) throw ParameterError(why);
}

namespace {

double kratzer_s(double B) { return 0.5 + std::sqrt(0.25 + 2.0 * B); }

// index lambda + 1/2 of the effective centrifugal barrier
double coulomb_invsq_index(double lp, double c) { return std::sqrt((lp + 0.5) * (lp + 0.5) + 2.0 * c); }

double osc_index(double lp, double a) {
    return 0.5 * std::sqrt((2.0 * lp + 1.0) * (2.0 * lp + 1.0) + 8.0 * a);
}

}  // namespace

double ReferencePotential::epsilon(int n, double lp) const {
    require_valid(n, lp);
    switch (id) {
        case ReferenceId::Kratzer: return kratzer_energy_exact(n, A, B);
        case ReferenceId::CoulombConst: return coulomb_const_energy(n, lp, a, c);
        case ReferenceId::CoulombInvSq: return coulomb_invsq_energy(n, lp, a, c);
        case ReferenceId::OscInvSq: return osc_invsq_energy(n, lp, a, c);
    }
    return 0.0;
}

double ReferencePotential::epsilon_printed(int n, double lp) const {
    if (id == ReferenceId::Kratzer) {
        require_valid(n, lp);
        return kratzer_energy(n, A, B);
    }
    return epsilon(n, lp);
}

double ReferencePotential::psi(int n, double lp, double y) const {
    require_valid(n, lp);
    if (!domain().contains(y)) throw DomainError("reference wavefunction requires y > 0, got " + fmt(y));
    switch (id) {
        case ReferenceId::Kratzer: {
            double s = kratzer_s(B);
            double xi = -A / (n + s);
            return std::pow(y, s) * std::exp(-xi * y) * kummer_poly(n, 2.0 * s, 2.0 * xi * y);
        }
        case ReferenceId::CoulombConst: {
            double zeta = a / (n + lp + 1.0);
            return std::pow(y, lp + 1.0) * std::exp(-zeta * y) *
                   kummer_poly(n, 2.0 * lp + 2.0, 2.0 * zeta * y);
        }
        case ReferenceId::CoulombInvSq: {
            double big = coulomb_invsq_index(lp, c) - 0.5;
            double zeta = a / (n + big + 1.0);
            return std::pow(y, big + 1.0) * std::exp(-zeta * y) *
                   kummer_poly(n, 2.0 * big + 2.0, 2.0 * zeta * y);
        }
        case ReferenceId::OscInvSq: {
            double lam = osc_index(lp, a) - 0.5;
            double omega = std::sqrt(2.0 * c);
            double delta = 0.5 * (lam + 1.0);
            return std::pow(omega, delta) * std::pow(y, lam + 1.0) * std::exp(-0.5 * omega * y * y) *
                   kummer_poly(n, lam + 1.5, omega * y * y);
        }
    }
    return 0.0;
}

double ReferencePotential::psi_printed(int n, double lp, double y) const {
    require_valid(n, lp);
    if (!domain().contains(y)) throw DomainError("reference wavefunction requires y > 0, got " + fmt(y));
    switch (id) {
        case ReferenceId::Kratzer: {
            double r = std::sqrt(-A);
            double xi = std::sqrt(-2.0 * kratzer_energy(n, A, B));
            return std::pow(y, 0.5 + r) * std::exp(-xi * y) * kummer_poly(n, 1.0 + 2.0 * r, 2.0 * xi * y);
        }
        case ReferenceId::CoulombConst: return psi(n, lp, y);
        case ReferenceId::CoulombInvSq: {
            double big = coulomb_invsq_index(lp, c) - 0.5;
            double zeta = a / (n + big + 1.0);
            return std::exp(-zeta * y) * kummer_poly(n, 2.0 * big + 2.0, 2.0 * zeta * y);
        }
        case ReferenceId::OscInvSq: {
            double delta = 0.25 * (1.0 + 2.0 * osc_index(lp, a));
            return std::pow(2.0 * c, 0.5 * delta) * std::pow(y, 2.0 * delta) * std::exp(-0.5 * c * y * y) *
                   kummer_poly(n, 2.0 * delta + 0.5, std::sqrt(2.0 * c) * y * y);
        }
    }
    return 0.0;
}

double kratzer_energy(int n, double A, double B) {
    if (n < 0) throw ParameterError("level n must be non-negative");
    if (!(A < 0.0)) throw ParameterError("Kratzer requires A < 0, got A = " + fmt(A));
    double rad = 1.0 - 16.0 * B;
    if (rad < 0.0) throw ParameterError("Kratzer: 1 - 16B is negative (B = " + fmt(B) + ")");
    double d = 2.0 * n + 1.0 + std::sqrt(rad);
    return -2.0 * A * A / (d * d);
}

double kratzer_energy_exact(int n, double A, double B) {
    if (n < 0) throw ParameterError("level n must be non-negative");
    if (!(A < 0.0)) throw ParameterError("Kratzer requires A < 0, got A = " + fmt(A));
    if (0.25 + 2.0 * B < 0.0) throw ParameterError("Kratzer requires B >= -1/8");
    double d = n + kratzer_s(B);
    return -A * A / (2.0 * d * d);
}

double coulomb_const_energy(int n, double lp, double a, double c) {
    if (n < 0) throw ParameterError("level n must be non-negative");
    double d = n + lp + 1.0;
    return c - a * a / (2.0 * d * d);
}

double coulomb_invsq_energy(int n, double lp, double a, double c) {
    if (n < 0) throw ParameterError("level n must be non-negative");
    double rad = (lp + 0.5) * (lp + 0.5) + 2.0 * c;
    if (rad < 0.0) throw ParameterError("(l'+1/2)^2 + 2c is negative");
    double d = n + 0.5 + std::sqrt(rad);
    return -0.5 * a * a / (d * d);
}

double osc_invsq_energy(int n, double lp, double a, double c) {
    if (n < 0) throw ParameterError("level n must be non-negative");
    if (!(c > 0.0)) throw ParameterError("oscillator reference requires c > 0");
    double rad = (2.0 * lp + 1.0) * (2.0 * lp + 1.0) + 8.0 * a;
    if (rad < 0.0) throw ParameterError("(2l'+1)^2 + 8a is negative");
    return std::sqrt(2.0 * c) * (2.0 * n + 1.0 + 0.5 * std::sqrt(rad));
}

double reference_wavefunction(const ReferencePotential& ref, int n, double lp, double y) {
    return ref.psi(n, lp, y);
}

}  // namespace pdm
