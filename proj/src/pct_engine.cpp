#include "pdm/pct_engine.hpp"

#include <cmath>
#include <limits>
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

}  // namespace

PctMap build_map(const MassProfile& profile, double beta, double x0) {
    if (!(beta > 0.0) || !std::isfinite(beta)) throw ParameterError("beta must be positive, got " + fmt(beta));
    bool edge = x0 == profile.domain.lower || x0 == profile.domain.upper;
    if (!profile.domain.contains(x0) && !edge)
        throw DomainError("sigma lower limit x0 = " + fmt(x0) + " outside the profile domain");
    PctMap map;
    map.beta = beta;
    map.x0 = x0;
    map.source = profile.id;
    map.h_prime = [profile](double x) { return std::sqrt(profile.eval(x).m); };
    if (profile.has_closed_sigma()) {
        double s0 = profile.antiderivative(x0);
        if (!std::isfinite(s0))
            throw ParameterError("sigma antiderivative is not finite at x0 = " + fmt(x0));
        map.sigma = [S = profile.antiderivative, s0, beta](double x) { return (S(x) - s0) / beta; };
    } else {
        if (!std::isfinite(x0)) throw ParameterError("quadrature sigma needs a finite x0");
        map.sigma = [profile, x0, beta](double x) {
            auto f = [&profile](double t) { return std::sqrt(profile.eval(t).m); };
            double q = x >= x0 ? adaptive_quad(f, x0, x) : -adaptive_quad(f, x, x0);
            return q / beta;
        };
    }
    return map;
}

double mass_term(const MassValue& mv) {
    double r1 = mv.dm / mv.m;
    return (0.5 * mv.d2m / mv.m - 0.875 * r1 * r1) / (4.0 * mv.m);
}

double mass_term(const MassProfile& profile, double x) { return mass_term(profile.eval(x)); }

double pct_correction(const MassValue& mv, double h1, double h2, double h3) {
    // f = (1/2) (u g')' / g with g = sqrt(m/h'), u = 1/m
    double lg1 = 0.5 * (mv.dm / mv.m - h2 / h1);
    double dlg1 = 0.5 * (mv.d2m / mv.m - (mv.dm / mv.m) * (mv.dm / mv.m) - h3 / h1 + (h2 / h1) * (h2 / h1));
    double ratio = -mv.dm / (mv.m * mv.m) * lg1 + (dlg1 + lg1 * lg1) / mv.m;
    return 0.5 * ratio;
}

double target_potential_1d(const MassProfile& profile, const ReferencePotential& ref, const PctMap& map,
                           double x) {
    double y = map.y(x);
    if (!ref.domain().contains(y))
        throw DomainError("transported coordinate " + fmt(y) + " leaves the reference domain");
    return ref.U(y) + mass_term(profile, x);
}

Spectrum transport_spectrum(const ReferencePotential& ref, int n_max) {
    Spectrum s;
    for (int n = 0; n <= n_max; ++n) s.entries.push_back({n, 0, ref.epsilon(n, 0.0)});
    return s;
}

namespace {

double transported(const MassProfile& profile, const ReferencePotential& ref, const PctMap& map, int n,
                   double x, double power, bool printed_psi) {
    double m = profile.eval(x).m;
    double y = map.y(x);
    if (!ref.domain().contains(y))
        throw DomainError("transported coordinate " + fmt(y) + " leaves the reference domain");
    double psi = printed_psi ? ref.psi_printed(n, 0.0, y) : ref.psi(n, 0.0, y);
    return std::pow(m, power) * psi;
}

}  // namespace

double transport_wavefunction(const MassProfile& profile, const ReferencePotential& ref, const PctMap& map,
                              int n, double x) {
    return transported(profile, ref, map, n, x, 0.25, false);
}

double transport_wavefunction_printed(const MassProfile& profile, const ReferencePotential& ref,
                                      const PctMap& map, int n, double x) {
    return transported(profile, ref, map, n, x, -0.25, false);
}

std::string to_string(Family f) {
    switch (f) {
        case Family::B1: return "B1";
        case Family::B2: return "B2";
        case Family::B3: return "B3";
    }
    return "?";
}

std::string to_string(Branch b) {
    switch (b) {
        case Branch::NuA: return "a";
        case Branch::NuB: return "b";
        case Branch::Log: return "log";
    }
    return "?";
}

double radial_rhs(const MassValue& mv, double r, const MapDerivatives& d, const ReferencePotential& ref,
                  double lp, double eps) {
    double k = d.h1 * d.h1 / mv.m;
    double rhs = k * (ref.U(d.h) - eps);
    if (ref.radial()) rhs += lp * (lp + 1.0) * k / (2.0 * d.h * d.h);
    rhs += mv.dm / (2.0 * mv.m * mv.m * r);
    rhs += pct_correction(mv, d.h1, d.h2, d.h3);
    return rhs;
}

MapDerivatives RadialCase::map(double r) const {
    if (branch == Branch::Log) return {std::log(r) / a, 1.0 / (a * r), -1.0 / (a * r * r), 2.0 / (a * r * r * r)};
    double p = std::pow(r, nu);
    return {p, nu * p / r, nu * (nu - 1.0) * p / (r * r), nu * (nu - 1.0) * (nu - 2.0) * p / (r * r * r)};
}

MassValue RadialCase::mass(double r) const {
    double m = mu * std::pow(r, kappa);
    return {m, kappa * m / r, kappa * (kappa - 1.0) * m / (r * r)};
}

Interval RadialCase::domain() const { return branch == Branch::Log ? Interval{1.0, kInf} : Interval{0.0, kInf}; }

std::string RadialCase::id() const { return to_string(family) + to_string(branch); }

int RadialCase::v_equation() const { return phi_equation() - 2; }
int RadialCase::e_equation() const { return phi_equation() - 1; }

int RadialCase::phi_equation() const {
    static const int table[3][3] = {{38, 41, 44}, {50, 53, 56}, {61, 64, 67}};
    return table[static_cast<int>(family)][static_cast<int>(branch)];
}

namespace {

double index_from_radicand(double rad, const std::string& what) {
    if (rad < 0.0) throw ParameterError(what + ": negative radicand " + fmt(rad));
    return std::sqrt(rad);
}

}  // namespace

RadialCase radial_case(Family family, Branch branch, double kappa, double mu, int l, double coupling, double a,
                       double c) {
    if (!(mu > 0.0)) throw ParameterError("mu must be positive, got " + fmt(mu));
    if (l < 0) throw ParameterError("l must be non-negative");
    if (!std::isfinite(kappa) || !std::isfinite(coupling) || !std::isfinite(a) || !std::isfinite(c))
        throw ParameterError("radial case parameters must be finite");
    if (branch == Branch::Log && kappa != -2.0) throw ParameterError("log branch requires kappa = -2");
    if (branch != Branch::Log && kappa == -2.0) throw ParameterError("power branches require kappa != -2");
    RadialCase rc;
    rc.family = family;
    rc.branch = branch;
    rc.kappa = kappa;
    rc.mu = mu;
    rc.l = l;
    rc.coupling = coupling;
    rc.a = a;
    rc.c = c;
    double ll = l * (l + 1.0);
    double k2 = kappa + 2.0;
    double km = (kappa - 1.0) * (kappa - 1.0);
    std::string name = to_string(family) + to_string(branch);

    if (branch == Branch::Log) {
        if (!(a > 0.0)) throw ParameterError(name + ": log scale a must be positive");
        rc.nu = 0.0;
        double g = family == Family::B3 ? 8.0 * mu * coupling : 4.0 * mu * coupling;
        rc.L = 0.5 * index_from_radicand(1.0 + g, name + " angular index");
        rc.lp = rc.L - 0.5;
    } else {
        if (family == Family::B3)
            rc.nu = branch == Branch::NuA ? 1.0 + 0.5 * kappa : 0.5 + 0.25 * kappa;
        else
            rc.nu = branch == Branch::NuA ? 1.0 + 0.5 * kappa : kappa + 2.0;
        double printed_rad = 0.0;
        switch (family) {
            case Family::B1: printed_rad = 4.0 * ll + km; break;
            case Family::B2: printed_rad = 4.0 * ll + km - 2.0 * c * k2 * k2; break;
            case Family::B3:
                printed_rad = branch == Branch::NuA ? 4.0 * ll + km - 2.0 * a * k2 * k2
                                                    : 16.0 * ll + 4.0 * km - 2.0 * a * k2 * k2;
                break;
        }
        // only the printed formulas use L; they report the failure when evaluated
        rc.L = printed_rad >= 0.0 ? std::sqrt(printed_rad) / std::abs(k2) : std::numeric_limits<double>::quiet_NaN();

        // match the r^{-kappa-2} coefficient of the construction identity:
        // nu^2 (lp(lp+1) + extra) + K = l(l+1), K from the mass/map terms at r = 1
        MassValue m1 = rc.mass(1.0);
        MapDerivatives d1 = rc.map(1.0);
        double K = 2.0 * mu * (m1.dm / (2.0 * m1.m * m1.m) + pct_correction(m1, d1.h1, d1.h2, d1.h3));
        double extra = family == Family::B2 ? 2.0 * c : family == Family::B3 ? 2.0 * a : 0.0;
        double q2 = 0.25 + (ll - K) / (rc.nu * rc.nu) - extra;
        rc.lp = index_from_radicand(q2, name + " reference angular index") - 0.5;
    }

    if (family == Family::B1 && branch == Branch::NuA && coupling == 0.0)
        throw ParameterError(name + " requires C != 0");
    if (family == Family::B2 && branch != Branch::NuB && !(a > 0.0))
        throw ParameterError(name + " requires a > 0");
    if (family == Family::B3 && branch != Branch::NuB && !(c > 0.0))
        throw ParameterError(name + " requires c > 0");
    return rc;
}

namespace {

double invsq_index(double lp, double c) { return std::sqrt((lp + 0.5) * (lp + 0.5) + 2.0 * c); }
double osc_index(double lp, double a) { return std::sqrt((lp + 0.5) * (lp + 0.5) + 2.0 * a); }

}  // namespace

ReferencePotential RadialCase::reference(int n) const {
    if (n < 0) throw ParameterError("level n must be non-negative");
    const double C = coupling;
    if (branch == Branch::NuB && family != Family::B3 && !(C < 0.0))
        throw ParameterError(id() + " binds only for C < 0, got C = " + fmt(C));
    if (branch == Branch::NuB && family == Family::B3 && !(C > 0.0))
        throw ParameterError(id() + " binds only for C > 0, got C = " + fmt(C));
    switch (family) {
        case Family::B1:
            if (branch == Branch::NuA) return coulomb_const(mu * mu * C * C / (nu * nu), 0.0);
            if (branch == Branch::NuB) return coulomb_const((n + lp + 1.0) * mu * std::sqrt(-C) / nu, 0.0);
            return coulomb_const(a, 0.0);
        case Family::B2:
            if (branch == Branch::NuB) {
                double big1 = invsq_index(lp, c) + 0.5;
                return coulomb_invsq(2.0 * (n + big1) * mu * std::sqrt(-C) / nu, c);
            }
            return coulomb_invsq(a, c);
        case Family::B3:
            if (branch == Branch::NuB) {
                double t = 2.0 * mu * mu * C / (nu * nu * (2.0 * n + 1.0 + osc_index(lp, a)));
                return osc_invsq(a, 0.5 * t * t);
            }
            return osc_invsq(a, c);
    }
    return {};
}

double RadialCase::energy_from_reference(int n, double eps) const {
    switch (branch) {
        case Branch::NuA: return nu * nu / mu * eps;
        case Branch::Log: return eps / (a * a * mu) + 9.0 / (8.0 * mu) + l * (l + 1.0) / (2.0 * mu);
        case Branch::NuB: {
            ReferencePotential ref = reference(n);
            double target = ref.epsilon(n, lp);
            double scale = family == Family::B3 ? std::pow(target / eps, 2.0) : std::sqrt(target / eps);
            return energy(n) * scale;
        }
    }
    return 0.0;
}

double RadialCase::energy(int n) const {
    ReferencePotential ref = reference(n);
    if (branch != Branch::NuB) return energy_from_reference(n, ref.epsilon(n, lp));
    ref.require_valid(n, lp);
    if (family == Family::B3) return -nu * nu / mu * ref.c;
    return ref.a * nu * nu / mu;
}

double RadialCase::potential(double r) const {
    if (!domain().contains(r)) throw DomainError(id() + ": r = " + fmt(r) + " outside the domain");
    const double C = coupling;
    switch (family) {
        case Family::B1:
            if (branch == Branch::NuA) return -mu * C * C * std::pow(r, -1.0 - 0.5 * kappa);
            if (branch == Branch::NuB) return -0.5 * mu * C * std::pow(r, kappa + 2.0);
            {
                double lr = std::log(r);
                return -1.0 / (mu * lr) + 0.5 * C / (lr * lr);
            }
        case Family::B2:
            if (branch == Branch::NuA) return -a * nu * nu / mu * std::pow(r, -1.0 - 0.5 * kappa);
            if (branch == Branch::NuB) return -2.0 * mu * C * std::pow(r, kappa + 2.0);
            {
                double lr = std::log(r);
                return -1.0 / (mu * lr) + (c / mu + 0.5 * C) / (lr * lr);
            }
        case Family::B3:
            if (branch == Branch::NuA) return c * nu * nu / mu * std::pow(r, kappa + 2.0);
            if (branch == Branch::NuB) return -2.0 * mu * C * std::pow(r, -1.0 - 0.5 * kappa);
            {
                double lr = std::log(r);
                return c * lr * lr / (mu * std::pow(a, 4)) + (a / mu + C) / (lr * lr);
            }
    }
    return 0.0;
}

double RadialCase::energy_printed(int n) const {
    if (n < 0) throw ParameterError("level n must be non-negative");
    if (std::isnan(L)) throw ParameterError(id() + ": printed angular index has a negative radicand");
    const double C = coupling;
    switch (family) {
        case Family::B1:
            if (branch == Branch::NuA) {
                double am = reference(n).a;
                double d = n + L + 0.5;
                return -0.5 * am * mu * C * C / (d * d);
            }
            if (branch == Branch::NuB) {
                double an = reference(n).a;
                double d = 2.0 * n + 2.0 * L + 1.0;
                return mu * C / (2.0 * an) * d * d;
            }
            {
                double d = n + 0.5 + L;
                return (-0.5 / (d * d) - 9.0 / 8.0) / mu;
            }
        case Family::B2:
            if (branch == Branch::NuA) {
                double d = n + 0.5 + std::sqrt(L * L + 2.0 * c);
                return -a * a * nu * nu / (2.0 * mu) / (d * d);
            }
            if (branch == Branch::NuB) {
                double an = reference(n).a;
                double d = n + 0.5 + std::sqrt(L * L + 2.0 * c);
                return -4.0 * mu * C / an * (d * d);
            }
            {
                double rad = L + 2.0 * c;
                if (rad < 0.0) throw ParameterError("B2log printed spectrum: negative radicand");
                double d = n + 0.5 + std::sqrt(rad);
                return (-0.5 * d * d - 9.0 / 8.0) / mu;
            }
        case Family::B3:
            if (branch == Branch::NuA) {
                double rad = 2.0 * L * L + 2.0 * a;
                if (rad < 0.0) throw ParameterError("B3a printed spectrum: negative radicand");
                return std::sqrt(2.0 * c * std::pow(nu, 4) / (mu * mu)) * (2.0 * n + 1.0 + std::sqrt(rad));
            }
            if (branch == Branch::NuB) {
                double cn = reference(n).c;
                double rad = L * L + 2.0 * a;
                if (rad < 0.0) throw ParameterError("B3b printed spectrum: negative radicand");
                return -std::sqrt(2.0 * C * C * mu * mu * cn) / (2.0 * n + 1.0 + std::sqrt(rad));
            }
            {
                double rad = L * L + 2.0 * a;
                if (rad < 0.0) throw ParameterError("B3log printed spectrum: negative radicand");
                return std::sqrt(2.0 * c / (mu * mu * std::pow(a, 4))) * (2.0 * n + 1.0 + std::sqrt(rad)) -
                       9.0 / (8.0 * mu);
            }
    }
    return 0.0;
}

double RadialCase::wavefunction(int n, double r) const {
    if (!domain().contains(r)) throw DomainError(id() + ": r = " + fmt(r) + " outside the domain");
    MapDerivatives d = map(r);
    MassValue mv = mass(r);
    return std::sqrt(mv.m / d.h1) * reference(n).psi(n, lp, d.h);
}

double RadialCase::wavefunction_printed(int n, double r) const {
    if (!domain().contains(r)) throw DomainError(id() + ": r = " + fmt(r) + " outside the domain");
    if (std::isnan(L)) throw ParameterError(id() + ": printed angular index has a negative radicand");
    ReferencePotential ref = reference(n);
    ref.require_valid(n, lp);
    const double k2 = kappa + 2.0;
    switch (family) {
        case Family::B1:
            if (branch == Branch::NuA) {
                double zeta = ref.a / (n + L + 0.5);
                double rn = std::pow(r, 1.0 + 0.5 * kappa);
                return std::sqrt(2.0 * mu / k2) * std::exp(-zeta * rn) *
                       std::pow(r, (1.0 + 0.5 * kappa) * (L + 0.5) + 0.25 * kappa) *
                       kummer_poly(n, 2.0 * L + 1.0, 2.0 * zeta * rn);
            }
            if (branch == Branch::NuB) {
                double zeta = ref.a / (n + L + 0.5);
                return std::sqrt(mu / k2) * std::exp(-zeta * std::pow(r, k2)) *
                       std::pow(r, k2 * (L + 0.5) - 0.5) *
                       kummer_poly(n, 2.0 * L + 1.0, 2.0 * zeta * std::pow(r, 1.0 + 0.5 * kappa));
            }
            {
                double lr = std::log(r);
                double eta = 1.0 / (n + 0.5 + L);
                return std::pow(r, -0.5) * std::pow(lr, 0.5 + L) * std::exp(-eta * lr) *
                       kummer_poly(n, 1.0 + 2.0 * L, 2.0 * eta * lr);
            }
        case Family::B2: {
            double s = std::sqrt(L * L + 2.0 * c);
            if (branch == Branch::NuA) {
                double w = ref.a / (n + 0.5 + s);
                double rn = std::pow(r, 1.0 + 0.5 * kappa);
                return std::sqrt(2.0 * mu / k2) * std::pow(r, 0.25 * kappa) * std::exp(-w * rn) *
                       kummer_poly(n, 1.0 + 2.0 * s, 2.0 * w * rn);
            }
            if (branch == Branch::NuB) {
                double w = ref.a / (n + 0.5 + s);
                return std::sqrt(mu / k2) * std::pow(r, -0.5) * std::exp(-w) *
                       kummer_poly(n, 1.0 + 2.0 * s, 2.0 * w * std::pow(r, k2));
            }
            double lr = std::log(r);
            double eta = 1.0 / (n + 0.5 + s);
            return std::pow(r, -0.5) * std::exp(-eta * lr) * kummer_poly(n, 1.0 + 2.0 * s, 2.0 * eta * lr);
        }
        case Family::B3: {
            double delta = 0.25 * (1.0 + std::sqrt(4.0 * L * L + 8.0 * a));
            if (branch == Branch::NuA) {
                double rn = std::pow(r, k2);
                return std::sqrt(2.0 * mu / k2) * std::pow(r, delta * k2 + 0.25 * kappa) *
                       std::exp(-std::sqrt(0.5 * c) * rn) *
                       kummer_poly(n, 2.0 * delta + 0.5, std::sqrt(2.0 * c) * rn);
            }
            if (branch == Branch::NuB) {
                double cn = ref.c;
                return std::sqrt(2.0 * mu / k2) * std::pow(r, delta * (1.0 + 0.5 * kappa) + 0.25 * kappa) *
                       std::exp(-std::sqrt(0.5 * cn) * std::pow(r, 1.0 + 0.5 * kappa)) *
                       kummer_poly(n, 2.0 * delta + 0.5, std::sqrt(2.0 * cn) * std::pow(r, 0.5 * kappa));
            }
            double l2 = std::log(r) * std::log(r);
            double a4 = std::pow(a, 4);
            return std::sqrt(mu * a) * std::pow(std::sqrt(2.0 * c) / (a * a), delta) * std::pow(r, -0.5) *
                   std::exp(-std::sqrt(c / (2.0 * a4)) * l2) *
                   kummer_poly(n, 2.0 * delta + 0.5, std::sqrt(2.0 * c / a4) * l2);
        }
    }
    return 0.0;
}

RadialTarget radial_target(const RadialCase& rc, double r) {
    if (!(r > 0.0)) throw DomainError("radial target requires r > 0, got " + fmt(r));
    if (rc.branch == Branch::Log && std::log(r) == 0.0)
        throw DomainError("log branch is singular at r = 1");
    RadialTarget t;
    t.V = rc.potential(r);
    t.energy = [rc](int n) { return rc.energy(n); };
    t.energy_printed = [rc](int n) { return rc.energy_printed(n); };
    t.v_equation = rc.v_equation();
    t.e_equation = rc.e_equation();
    return t;
}

}  // namespace pdm
