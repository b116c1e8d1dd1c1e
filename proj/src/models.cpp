#include "pdm/models.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pdm/errors.hpp"

namespace pdm {

void Grid::validate() const {
    if (points < 3) throw ParameterError("grid needs at least 3 points");
    if (!std::isfinite(left) || !std::isfinite(right) || !(right > left))
        throw ParameterError("grid interval must be finite with right > left");
}

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << v;
    return os.str();
}

const std::vector<CaseDescriptor>& descriptor_table() {
    static const std::vector<CaseDescriptor> table = {
        {"A1", "Kratzer reference, mass (delta+x^2)^2/(1+x^2)^2 on x > 0",
         {"theta", "beta", "delta", "B"}, {{"theta", -0.2}, {"beta", 1.0}, {"delta", 2.0}},
         "theta*beta < 0, |theta*beta| <= 1/4, delta > 0", {23, 24, 25}, {0}, {0.0, 500.0, 25001}, 4},
        {"A2", "Kratzer reference, mass a/(dp+x^2) on x > 0",
         {"theta", "beta", "a", "dp", "B"}, {{"theta", -0.2}, {"beta", 1.0}, {"a", 1.0}, {"dp", 1.0}},
         "theta*beta < 0, |theta*beta| <= 1/4, a > 0, dp > 0", {26, 27, 28}, {0}, {0.0, 20.0, 96001}, 4},
        {"A3", "Kratzer reference, mass 1+tanh(dpp x) on the real line",
         {"theta", "beta", "dpp", "B"}, {{"theta", -0.2}, {"beta", 1.0}, {"dpp", 1.0}},
         "theta*beta < 0, |theta*beta| <= 1/4, dpp > 0", {29, 30, 31}, {0}, {-9.0, 450.0, 25001}, 4},
        {"B1a", "Coulomb reference, m = mu r^kappa, h = r^(1+kappa/2)",
         {"mu", "kappa", "C", "l"}, {{"mu", 1.0}, {"kappa", 2.0}, {"C", 1.0}},
         "mu > 0, kappa != -2, C != 0", {36, 37, 38}, {1}, {1e-3, 30.0, 6000}, 4},
        {"B1b", "Coulomb reference, m = mu r^kappa, h = r^(kappa+2)",
         {"mu", "kappa", "C", "l"}, {{"mu", 1.0}, {"kappa", 2.0}, {"C", -1.0}},
         "mu > 0, kappa != -2, C < 0", {39, 40, 41}, {1}, {1e-3, 6.0, 6000}, 4},
        {"B1log", "Coulomb reference, m = mu/r^2, h = ln(r)/a on r > 1",
         {"mu", "C", "a", "l"}, {{"mu", 1.0}, {"C", 1.0}, {"a", 1.0}},
         "mu > 0, 1 + 4 mu C >= 0, a > 0", {42, 43, 44}, {0, 1}, {1.0005, 200.0, 40000}, 4},
        {"B2a", "Coulomb plus inverse-square reference, m = mu r^kappa, h = r^(1+kappa/2)",
         {"mu", "kappa", "a", "c", "l"}, {{"mu", 1.0}, {"kappa", 2.0}, {"a", 1.0}, {"c", 0.05}},
         "mu > 0, kappa != -2, a > 0, real reference index", {48, 49, 50}, {1}, {1e-3, 16.0, 6000}, 4},
        {"B2b", "Coulomb plus inverse-square reference, m = mu r^kappa, h = r^(kappa+2)",
         {"mu", "kappa", "C", "c", "l"}, {{"mu", 1.0}, {"kappa", 2.0}, {"C", -1.0}, {"c", 0.05}},
         "mu > 0, kappa != -2, C < 0, real reference index", {51, 52, 53}, {1}, {1e-3, 5.0, 6000}, 4},
        {"B2log", "Coulomb plus inverse-square reference, m = mu/r^2, h = ln(r)/a on r > 1",
         {"mu", "C", "c", "a", "l"}, {{"mu", 1.0}, {"C", 1.0}, {"c", 0.5}, {"a", 1.0}},
         "mu > 0, 1 + 4 mu C >= 0, a > 0", {54, 55, 56}, {0, 1}, {1.0005, 200.0, 40000}, 4},
        {"B3a", "oscillator plus inverse-square reference, m = mu r^kappa, h = r^(1+kappa/2)",
         {"mu", "kappa", "a", "c", "l"}, {{"mu", 1.0}, {"kappa", 2.0}, {"a", 0.0}, {"c", 0.5}},
         "mu > 0, kappa != -2, c > 0, real reference index", {59, 60, 61}, {1}, {1e-3, 5.0, 6000}, 4},
        {"B3b", "oscillator plus inverse-square reference, m = mu r^kappa, h = r^(1/2+kappa/4)",
         {"mu", "kappa", "C", "a", "l"}, {{"mu", 1.0}, {"kappa", 2.0}, {"C", 1.0}, {"a", 0.0}},
         "mu > 0, kappa != -2, C > 0, L'(l)^2 >= 0", {62, 63, 64}, {1}, {1e-3, 20.0, 6000}, 4},
        {"B3log", "oscillator plus inverse-square reference, m = mu/r^2, h = ln(r)/a on r > 1",
         {"mu", "Theta", "c", "a", "l"}, {{"mu", 1.0}, {"Theta", 0.5}, {"c", 0.5}, {"a", 1.0}},
         "mu > 0, 1 + 8 mu Theta >= 0, a > 0, c > 0", {65, 66, 67}, {0, 1}, {1.001, 1100.0, 40000}, 4},
    };
    return table;
}

bool is_a_family(CaseId id) { return id == CaseId::A1 || id == CaseId::A2 || id == CaseId::A3; }

Family family_of(CaseId id) {
    switch (id) {
        case CaseId::B1a: case CaseId::B1b: case CaseId::B1log: return Family::B1;
        case CaseId::B2a: case CaseId::B2b: case CaseId::B2log: return Family::B2;
        default: return Family::B3;
    }
}

Branch branch_of(CaseId id) {
    switch (id) {
        case CaseId::B1a: case CaseId::B2a: case CaseId::B3a: return Branch::NuA;
        case CaseId::B1b: case CaseId::B2b: case CaseId::B3b: return Branch::NuB;
        default: return Branch::Log;
    }
}

double get(const Params& p, const std::string& key, double fallback = 0.0) {
    auto it = p.find(key);
    return it == p.end() ? fallback : it->second;
}

}  // namespace

std::string to_string(CaseId id) { return descriptor_table()[static_cast<std::size_t>(id)].id; }

CaseId case_from_string(const std::string& s) {
    const auto& t = descriptor_table();
    for (std::size_t i = 0; i < t.size(); ++i)
        if (t[i].id == s) return static_cast<CaseId>(i);
    throw ParameterError("unknown case id '" + s + "'");
}

std::vector<CaseId> all_cases() {
    std::vector<CaseId> v;
    for (int i = 0; i < kCaseCount; ++i) v.push_back(static_cast<CaseId>(i));
    return v;
}

std::vector<CaseDescriptor> list_cases() { return descriptor_table(); }

const CaseDescriptor& describe(CaseId id) { return descriptor_table()[static_cast<std::size_t>(id)]; }

TargetModel make_model(CaseId id, const Params& params) {
    const CaseDescriptor& d = describe(id);
    TargetModel model;
    model.id = id;
    model.params = d.defaults;
    for (const auto& [key, value] : params) {
        if (std::find(d.params.begin(), d.params.end(), key) == d.params.end())
            throw ParameterError("case " + d.id + " does not take parameter '" + key + "'");
        if (!std::isfinite(value)) throw ParameterError("parameter '" + key + "' must be finite");
        model.params[key] = value;
    }
    const Params& p = model.params;

    if (is_a_family(id)) {
        double theta = get(p, "theta"), beta = get(p, "beta");
        if (!(beta > 0.0)) throw ParameterError("beta must be positive, got " + fmt(beta));
        double A = theta * beta;
        if (!(A < 0.0)) throw ParameterError("theta*beta must be negative, got " + fmt(A));
        if (std::abs(A) > 0.25) throw ParameterError("|theta*beta| > 1/4 (got " + fmt(std::abs(A)) + ")");
        double B = p.count("B") ? p.at("B") : A * A;
        model.reference = kratzer(A, B);
        model.reference.require_valid(0, 0.0);
        double x0 = 0.0;
        switch (id) {
            case CaseId::A1: model.profile = rational_mass(get(p, "delta")); break;
            case CaseId::A2: model.profile = lorentzian_mass(get(p, "a"), get(p, "dp")); break;
            default:
                model.profile = tanh_mass(get(p, "dpp"));
                x0 = -kInf;
                break;
        }
        model.map = build_map(model.profile, beta, x0);
        return model;
    }

    if (p.count("l") && (p.at("l") < 0.0 || std::floor(p.at("l")) != p.at("l")))
        throw ParameterError("l must be a non-negative integer");
    double kappa = branch_of(id) == Branch::Log ? -2.0 : get(p, "kappa");
    model.params["kappa"] = kappa;
    model.profile = radial_power_mass(get(p, "mu"), kappa);
    // validate at every default angular momentum
    for (int l : model.default_l()) model.radial_case(l).reference(0);
    return model;
}

bool TargetModel::radial() const { return !is_a_family(id); }

Interval TargetModel::domain() const {
    if (!radial()) return id == CaseId::A3 ? Interval{-kInf, kInf} : Interval{0.0, kInf};
    return branch_of(id) == Branch::Log ? Interval{1.0, kInf} : Interval{0.0, kInf};
}

std::vector<int> TargetModel::default_l() const {
    if (params.count("l")) return {static_cast<int>(params.at("l"))};
    return descriptor().default_l;
}

MassValue TargetModel::mass(double x) const { return profile.eval(x); }

RadialCase TargetModel::radial_case(int l) const {
    if (!radial()) throw ParameterError(to_string(id) + " is not a radial case");
    double coupling = family_of(id) == Family::B3 && branch_of(id) == Branch::Log ? get(params, "Theta")
                                                                                  : get(params, "C");
    return pdm::radial_case(family_of(id), branch_of(id), get(params, "kappa"), get(params, "mu"), l, coupling,
                            get(params, "a", 1.0), get(params, "c"));
}

namespace {

void check_domain(const TargetModel& m, double x) {
    if (!m.domain().contains(x))
        throw DomainError(to_string(m.id) + ": x = " + fmt(x) + " outside the domain");
}

void check_l(const TargetModel& m, int l) {
    if (!m.radial() && l != 0) throw ParameterError(to_string(m.id) + " is one-dimensional; l must be 0");
    if (l < 0) throw ParameterError("l must be non-negative");
}

}  // namespace

double TargetModel::potential(double x, int l) const {
    check_l(*this, l);
    check_domain(*this, x);
    if (radial()) return radial_case(l).potential(x);
    return target_potential_1d(profile, reference, *map, x);
}

double TargetModel::sigma_printed(double x) const {
    if (radial()) throw ParameterError("printed sigma exists for one-dimensional cases only");
    return profile.printed_antiderivative(x) / map->beta;
}

double TargetModel::potential_printed(double x, int l) const {
    check_l(*this, l);
    check_domain(*this, x);
    if (radial()) return radial_case(l).potential(x);
    const double tb = get(params, "theta") * get(params, "beta");
    switch (id) {
        case CaseId::A1: {
            double delta = get(params, "delta");
            double s = profile.printed_antiderivative(x);
            double x2 = x * x;
            return tb / s * (1.0 + tb / s) +
                   0.5 * (delta - 1.0) * (3.0 * x2 * x2 + 2.0 * (2.0 - delta) * x2 - delta) /
                       std::pow(delta + x2, 4);
        }
        case CaseId::A2: {
            double a = get(params, "a"), dp = get(params, "dp");
            double s = profile.printed_antiderivative(x);
            return tb / s * (1.0 + tb / s) - (x * x + 2.0 * dp) / (8.0 * a * (dp + x * x));
        }
        default: {
            double k = get(params, "dpp");
            double theta = get(params, "theta");
            double sigma = sigma_printed(x);
            double sc = std::sinh(k * x) + std::cosh(k * x);
            return theta / sigma * (1.0 + theta / sigma) - k * k / 32.0 * (7.0 + std::tanh(k * x)) / (sc * sc);
        }
    }
}

double TargetModel::energy(int n, int l) const {
    check_l(*this, l);
    if (radial()) return radial_case(l).energy(n);
    return reference.epsilon(n, 0.0);
}

double TargetModel::energy_printed(int n, int l) const {
    check_l(*this, l);
    if (radial()) return radial_case(l).energy_printed(n);
    if (n < 0) throw ParameterError("level n must be non-negative");
    double tb = get(params, "theta") * get(params, "beta");
    double d = 2.0 * n + 1.0 + std::sqrt(1.0 - 16.0 * tb * tb);
    return -tb * tb / (d * d);
}

double TargetModel::wavefunction(int n, int l, double x) const {
    check_l(*this, l);
    check_domain(*this, x);
    if (radial()) return radial_case(l).wavefunction(n, x);
    return transport_wavefunction(profile, reference, *map, n, x);
}

double TargetModel::wavefunction_inverse_prefactor(int n, int l, double x) const {
    check_l(*this, l);
    check_domain(*this, x);
    if (radial()) throw ParameterError("defined for one-dimensional cases only");
    return transport_wavefunction_printed(profile, reference, *map, n, x);
}

double TargetModel::wavefunction_printed(int n, int l, double x) const {
    check_l(*this, l);
    check_domain(*this, x);
    if (radial()) return radial_case(l).wavefunction_printed(n, x);
    double m = profile.eval(x).m;
    return std::pow(m, 0.25) * reference.psi_printed(n, 0.0, map->y(x));
}

ReferencePotential TargetModel::reference_for(int n, int l) const {
    check_l(*this, l);
    if (radial()) return radial_case(l).reference(n);
    return reference;
}

double TargetModel::reference_lp(int l) const {
    check_l(*this, l);
    return radial() ? radial_case(l).lp : 0.0;
}

double TargetModel::to_reference(double x, int l) const {
    if (radial()) {
        if (x == domain().lower) return 0.0;
        return radial_case(l).map(x).h;
    }
    if (x == -kInf) return 0.0;
    return map->y(x);
}

double TargetModel::energy_from_reference(int n, int l, double eps) const {
    check_l(*this, l);
    if (radial()) return radial_case(l).energy_from_reference(n, eps);
    return eps;
}

namespace {

Spectrum spectrum(const TargetModel& model, int n_max, const std::vector<int>& l_set, bool printed) {
    if (n_max < 0) throw ParameterError("n_max must be non-negative");
    std::vector<int> ls = l_set;
    std::sort(ls.begin(), ls.end());
    ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
    Spectrum s;
    for (int l : ls)
        for (int n = 0; n <= n_max; ++n)
            s.entries.push_back({n, l, printed ? model.energy_printed(n, l) : model.energy(n, l)});
    return s;
}

}  // namespace

Spectrum eval_spectrum(const TargetModel& model, int n_max, const std::vector<int>& l_set) {
    return spectrum(model, n_max, l_set, false);
}

Spectrum eval_spectrum_printed(const TargetModel& model, int n_max, const std::vector<int>& l_set) {
    return spectrum(model, n_max, l_set, true);
}

double eval_wavefunction(const TargetModel& model, int n, int l, double x) { return model.wavefunction(n, l, x); }

GridFunction eval_wavefunction(const TargetModel& model, int n, int l, const Grid& grid, bool normalize) {
    grid.validate();
    GridFunction g;
    g.left = grid.left;
    g.right = grid.right;
    g.spacing = grid.spacing();
    for (int i = 0; i < grid.points; ++i) {
        double x = grid.x(i);
        g.x.push_back(x);
        g.values.push_back(model.domain().contains(x) ? model.wavefunction(n, l, x) : 0.0);
    }
    if (normalize) {
        double sum = 0.0;
        for (std::size_t i = 0; i + 1 < g.values.size(); ++i)
            sum += 0.5 * (g.values[i] * g.values[i] + g.values[i + 1] * g.values[i + 1]) * (g.x[i + 1] - g.x[i]);
        if (!(sum > 0.0)) throw ParameterError("wavefunction vanishes on the grid");
        double s = 1.0 / std::sqrt(sum);
        for (double& v : g.values) v *= s;
    }
    return g;
}

}  // namespace pdm
