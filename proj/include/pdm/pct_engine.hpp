#pragma once

#include <functional>
#include <string>
#include <vector>

#include "pdm/catalog.hpp"

namespace pdm {

// y = h(x) = beta * sigma(x) with h' = sqrt(m).
struct PctMap {
    double beta = 1.0;
    double x0 = 0.0;
    MassId source = MassId::Constant;
    std::function<double(double)> h_prime;
    std::function<double(double)> sigma;

    double y(double x) const { return beta * sigma(x); }
};

PctMap build_map(const MassProfile& profile, double beta, double x0);

// (1/(4m)) [ (1/2) m''/m - (7/8) (m'/m)^2 ]
double mass_term(const MassProfile& profile, double x);
double mass_term(const MassValue& mv);

// f(m; h) for an arbitrary map h, given h', h'', h'''. With h' = sqrt(m) it
// reduces to mass_term.
double pct_correction(const MassValue& mv, double h1, double h2, double h3);

double target_potential_1d(const MassProfile& profile, const ReferencePotential& ref, const PctMap& map,
                           double x);

struct SpectrumEntry {
    int n = 0;
    int l = 0;
    double energy = 0.0;
};

struct Spectrum {
    std::vector<SpectrumEntry> entries;
};

Spectrum transport_spectrum(const ReferencePotential& ref, int n_max);

// m^{1/4} psi_n(beta sigma(x)), the transported eigenfunction of the target.
double transport_wavefunction(const MassProfile& profile, const ReferencePotential& ref, const PctMap& map,
                              int n, double x);
// sqrt(h'/m) psi_n = m^{-1/4} psi_n, the general prefactor as printed.
double transport_wavefunction_printed(const MassProfile& profile, const ReferencePotential& ref,
                                      const PctMap& map, int n, double x);

enum class Family { B1, B2, B3 };
enum class Branch { NuA, NuB, Log };

std::string to_string(Family f);
std::string to_string(Branch b);

struct MapDerivatives {
    double h = 0.0;
    double h1 = 0.0;
    double h2 = 0.0;
    double h3 = 0.0;
};

// Radial case with m = mu r^kappa and h = r^nu (or h = ln(r)/a when kappa = -2).
// `coupling` is C (B1, B2, B3 branch b) or Theta (B3 log); B3 branch a has no
// target coupling. `a` and `c` are the reference constants.
class RadialCase {
public:
    Family family = Family::B1;
    Branch branch = Branch::NuA;
    double kappa = 0.0;
    double mu = 1.0;
    int l = 0;
    double nu = 1.0;
    double L = 0.0;  // printed angular index (L, Lambda, Lambda', Gamma)
    double coupling = 0.0;
    double a = 1.0;
    double c = 0.0;
    double lp = 0.0;  // reference angular momentum matched to the target

    MapDerivatives map(double r) const;
    MassValue mass(double r) const;
    Interval domain() const;

    // reference whose level n transports onto target level n
    ReferencePotential reference(int n) const;

    double potential(double r) const;
    double energy(int n) const;
    double energy_printed(int n) const;
    double wavefunction(int n, double r) const;
    double wavefunction_printed(int n, double r) const;

    // Target energy implied by a (numerically obtained) reference eigenvalue
    // of reference(n).
    double energy_from_reference(int n, double eps) const;

    int v_equation() const;
    int e_equation() const;
    int phi_equation() const;
    std::string id() const;
};

RadialCase radial_case(Family family, Branch branch, double kappa, double mu, int l, double coupling,
                       double a = 1.0, double c = 0.0);

// Right-hand side of the radial construction identity
//   V - E + l(l+1)/(2 m r^2) = (h'^2/m)(U(h) - eps) + lp(lp+1) h'^2/(2 m h^2) + m'/(2 m^2 r) + f(m;h)
double radial_rhs(const MassValue& mv, double r, const MapDerivatives& d, const ReferencePotential& ref,
                  double lp, double eps);

struct RadialTarget {
    double V = 0.0;
    std::function<double(int)> energy;
    std::function<double(int)> energy_printed;
    int v_equation = 0;
    int e_equation = 0;
};

RadialTarget radial_target(const RadialCase& rc, double r);

}  // namespace pdm
