#pragma once

#include <functional>
#include <limits>
#include <map>
#include <string>

namespace pdm {

using Params = std::map<std::string, double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Open interval (lower, upper).
struct Interval {
    double lower = -kInf;
    double upper = kInf;

    bool contains(double x) const { return x > lower && x < upper; }
};

struct MassValue {
    double m = 1.0;
    double dm = 0.0;
    double d2m = 0.0;
};

enum class MassId { Rational, Lorentzian, Tanh, RadialPower, Constant };

std::string to_string(MassId id);

class MassProfile {
public:
    MassId id = MassId::Constant;
    Params params;
    Interval domain;
    std::function<MassValue(double)> evaluator;
    // S with S' = sqrt(m); sigma(x) = (S(x) - S(x0)) / beta. Empty when absent.
    std::function<double(double)> antiderivative;
    // Antiderivative as printed alongside the case, kept for the discrepancy notes.
    std::function<double(double)> printed_antiderivative;

    MassValue eval(double x) const;
    bool has_closed_sigma() const { return static_cast<bool>(antiderivative); }
};

MassProfile constant_mass();
// m = (delta + x^2)^2 / (1 + x^2)^2
MassProfile rational_mass(double delta);
// m = a / (dp + x^2)
MassProfile lorentzian_mass(double a, double dp);
// m = 1 + tanh(dpp x)
MassProfile tanh_mass(double dpp);
// m = mu r^kappa on r > 0
MassProfile radial_power_mass(double mu, double kappa);

MassValue mass_eval(const MassProfile& profile, double x);

enum class ReferenceId { Kratzer, CoulombConst, CoulombInvSq, OscInvSq };

std::string to_string(ReferenceId id);

// Constant-mass solvable potential on y > 0.
//   Kratzer       U = A/y + B/y^2            (one dimension, lp unused)
//   CoulombConst  U = -a/y + c
//   CoulombInvSq  U = -a/y + c/y^2
//   OscInvSq      U = a/y^2 + c y^2
// Radial references add lp(lp+1)/(2 y^2); lp may be any real >= -1/2.
class ReferencePotential {
public:
    ReferenceId id = ReferenceId::CoulombConst;
    double A = 0.0;
    double B = 0.0;
    double a = 0.0;
    double c = 0.0;

    bool radial() const { return id != ReferenceId::Kratzer; }
    Interval domain() const { return {0.0, kInf}; }
    Params params() const;

    double U(double y) const;
    double effective(double y, double lp) const;

    // Exact bound-state energy and unnormalized eigenfunction.
    double epsilon(int n, double lp) const;
    double psi(int n, double lp, double y) const;

    // As printed next to the reference potential.
    double epsilon_printed(int n, double lp) const;
    double psi_printed(int n, double lp, double y) const;

    // Empty when bound state (n, lp) exists for these parameters.
    std::string invalid_reason(int n, double lp) const;
    bool valid(int n, double lp) const { return invalid_reason(n, lp).empty(); }
    void require_valid(int n, double lp) const;
};

ReferencePotential kratzer(double A, double B);
ReferencePotential coulomb_const(double a, double c);
ReferencePotential coulomb_invsq(double a, double c);
ReferencePotential osc_invsq(double a, double c);

// Printed Kratzer spectrum -2A^2 / [2n+1+sqrt(1-16B)]^2.
double kratzer_energy(int n, double A, double B);
// Exact Kratzer spectrum -A^2 / (2 (n+s)^2), s = 1/2 + sqrt(1/4 + 2B).
double kratzer_energy_exact(int n, double A, double B);
double coulomb_const_energy(int n, double lp, double a, double c);
double coulomb_invsq_energy(int n, double lp, double a, double c);
double osc_invsq_energy(int n, double lp, double a, double c);

double reference_wavefunction(const ReferencePotential& ref, int n, double lp, double y);

}  // namespace pdm
