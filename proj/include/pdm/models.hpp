#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pdm/catalog.hpp"
#include "pdm/grid.hpp"
#include "pdm/pct_engine.hpp"

namespace pdm {

enum class CaseId { A1, A2, A3, B1a, B1b, B1log, B2a, B2b, B2log, B3a, B3b, B3log };

inline constexpr int kCaseCount = 12;

std::string to_string(CaseId id);
// throws ParameterError for an unknown id
CaseId case_from_string(const std::string& s);
std::vector<CaseId> all_cases();

struct CaseDescriptor {
    std::string id;
    std::string description;
    std::vector<std::string> params;   // accepted parameter names
    Params defaults;                   // desk set
    std::string constraints;
    std::vector<int> equations;        // potential, spectrum, wavefunction
    std::vector<int> default_l;
    Grid default_grid;
    int default_levels = 4;
};

std::vector<CaseDescriptor> list_cases();
const CaseDescriptor& describe(CaseId id);

class TargetModel {
public:
    CaseId id = CaseId::A1;
    Params params;
    MassProfile profile;
    ReferencePotential reference;  // one-dimensional cases only
    std::optional<PctMap> map;     // one-dimensional cases only

    bool radial() const;
    Interval domain() const;
    const CaseDescriptor& descriptor() const { return describe(id); }
    std::vector<int> default_l() const;

    MassValue mass(double x) const;
    RadialCase radial_case(int l) const;

    double potential(double x, int l = 0) const;
    double potential_printed(double x, int l = 0) const;
    double energy(int n, int l = 0) const;
    double energy_printed(int n, int l = 0) const;
    double wavefunction(int n, int l, double x) const;
    double wavefunction_printed(int n, int l, double x) const;
    // Transported eigenfunction with the m^{-1/4} prefactor of the general map.
    double wavefunction_inverse_prefactor(int n, int l, double x) const;

    // Reference problem whose level n maps to target level (n, l).
    ReferencePotential reference_for(int n, int l) const;
    double reference_lp(int l) const;
    double to_reference(double x, int l = 0) const;
    double energy_from_reference(int n, int l, double eps) const;

    // sigma as printed next to the case (one-dimensional cases only)
    double sigma_printed(double x) const;
};

TargetModel make_model(CaseId id, const Params& params = {});

Spectrum eval_spectrum(const TargetModel& model, int n_max, const std::vector<int>& l_set);
Spectrum eval_spectrum_printed(const TargetModel& model, int n_max, const std::vector<int>& l_set);

double eval_wavefunction(const TargetModel& model, int n, int l, double x);
// Samples on the grid; with normalize the trapezoid integral of phi^2 is 1.
GridFunction eval_wavefunction(const TargetModel& model, int n, int l, const Grid& grid, bool normalize);

}  // namespace pdm
