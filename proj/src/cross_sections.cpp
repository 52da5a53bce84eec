#include "pdirac/cross_sections.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <json.hpp>

namespace pdirac
{
namespace
{

constexpr double kPi = std::numbers::pi;

ExternalLeg leg(const OnShellMomentum& p) { return {p.p(), p.m()}; }

FourVector photon(double omega, double cos_theta)
{
    const double s = std::sqrt(std::max(0.0, 1.0 - cos_theta * cos_theta));
    return {omega, omega * s, 0.0, omega * cos_theta};
}

AmplitudeResult representative_amplitude(const XSecConfig& cfg, const AngularPoint& pt)
{
    const WaveNormalization box = WaveNormalization::box(cfg.L);
    const GammaBasis& g = *cfg.basis;
    const double e = cfg.charge();
    if (cfg.process == Process::mu_pair)
    {
        const OnShellMomentum p1{pt.incident[0].p, cfg.m_e}, p2{pt.incident[1].p, cfg.m_e};
        const OnShellMomentum p3{pt.final[0].p, cfg.m_mu}, p4{pt.final[1].p, cfg.m_mu};
        return muon_pair_amplitude(PlaneWave::particle(p1, 1, box, g), antiparticle_wave(p2, 1, box, g),
                                   PlaneWave::particle(p3, 1, box, g), antiparticle_wave(p4, 1, box, g), e);
    }
    const OnShellMomentum p{pt.incident[0].p, cfg.m_e}, p_out{pt.final[1].p, cfg.m_e};
    const FourVector k = pt.incident[1].p, k_out = pt.final[0].p;
    ProcessSpec spec;
    spec.incident.push_back(PlaneWave::particle(p, 1, box, g));
    spec.final.push_back(PlaneWave::particle(p_out, 1, box, g));
    spec.photons.push_back({transverse_polarizations(k_out)[0].vec().cast<cplx>(), k_out, PhotonLeg::Direction::outgoing});
    spec.photons.push_back({transverse_polarizations(k)[0].vec().cast<cplx>(), k, PhotonLeg::Direction::incoming});
    return compton_amplitude(spec, e);
}

}  // namespace

PlaneWave box_normalize(const PlaneWave& w, double L)
{
    return w.with_normalization(WaveNormalization::box(L));
}

void AuditTrail::apply(std::string label, const RegScalar& factor)
{
    total *= factor;
    steps.push_back({std::move(label), factor, total});
}

RegScalar rate_from_squared(double msq, const RegScalar& norm2, int mass_deltas, double L, AuditTrail* trail)
{
    AuditTrail local;
    AuditTrail& t = trail ? *trail : local;
    t.apply("item 1: squared box normalization of external waves", norm2);
    t.apply("item 2: spin-averaged squared reduced element", RegScalar::number(msq));
    t.apply("squared four-momentum delta: (2pi)^4 delta4(0) = L^4", RegScalar::four_volume(L));
    t.apply("squared mass deltas: one 2pi delta(0) each", RegScalar::tau_interval(mass_deltas));
    t.apply("item 3: per unit four-volume and per unit tau", RegScalar::number(1.0) / (RegScalar::four_volume(L) * RegScalar::tau_interval(1)));
    return t.total;
}

RegScalar rate_from_amplitude(const AmplitudeResult& a, double L, AuditTrail* trail)
{
    const auto n4 = a.count(ConservationDelta::Kind::energy_momentum);
    const auto nm = a.count(ConservationDelta::Kind::mass);
    if (n4 != 1 || nm < 1) throw std::invalid_argument("missing conservation factors");
    return rate_from_squared(std::norm(a.reduced), a.normalization * a.normalization, static_cast<int>(nm), L, trail);
}

RegScalar incident_flux(const ExternalLeg& a, const ExternalLeg& b, double L)
{
    if (a.p[0] <= 0.0 || b.p[0] <= 0.0) throw std::domain_error("incident flux needs positive energies");
    const double pp = dot(a.p, b.p);
    RegScalar j = RegScalar::box_power(L, -8);
    if (a.m > 0.0 && b.m > 0.0)
    {
        const double radicand = pp * pp - a.m * a.m * b.m * b.m;
        if (radicand <= 0.0) throw std::domain_error("degenerate incident flux");
        return j * (std::sqrt(radicand) / (a.m * b.m));
    }
    const double m = std::max(a.m, b.m);
    if (m <= 0.0 || pp == 0.0) throw std::domain_error("degenerate incident flux");
    return j * (2.0 * std::abs(pp) / m);
}

RegScalar incident_flux(const OnShellMomentum& a, const OnShellMomentum& b, double L)
{
    return incident_flux(leg(a), leg(b), L);
}

RegScalar phase_space_count(const ExternalLeg& leg, double L)
{
    const double jac = leg.m > 0.0 ? leg.m / leg.p[0] : 1.0 / (2.0 * leg.p[0]);
    return RegScalar::box_power(L, 4) * jac;
}

double two_body_phase_space(const FourVector& p3, const FourVector& p4)
{
    const double k3 = p3.spatial_norm();
    double pn = 0.0;
    for (int j = 1; j <= 3; ++j) pn += (p3[j] + p4[j]) * p3[j] / k3;
    return k3 * k3 / (16.0 * kPi * kPi * std::abs(k3 * p4[0] + p3[0] * (k3 - pn)));
}

double two_body_density(const FourVector& p3, const FourVector& p4)
{
    return 4.0 * p3[0] * p4[0] * two_body_phase_space(p3, p4);
}

std::string to_string(Process p) { return p == Process::mu_pair ? "mu-pair" : "compton"; }

Process process_from_string(const std::string& s)
{
    if (s == "mu-pair") return Process::mu_pair;
    if (s == "compton") return Process::compton;
    throw std::invalid_argument("unknown process '" + s + "'");
}

double XSecConfig::charge() const { return std::sqrt(4.0 * kPi * alpha); }

AngularPoint angular_point(const XSecConfig& cfg, double cos_theta)
{
    const GammaBasis& g = *cfg.basis;
    const double e = cfg.charge();
    AngularPoint pt;
    pt.cos_theta = cos_theta;
    const double sin_theta = std::sqrt(std::max(0.0, 1.0 - cos_theta * cos_theta));

    if (cfg.process == Process::mu_pair)
    {
        const double E = 0.5 * cfg.sqrt_s;
        if (E <= cfg.m_mu || E <= cfg.m_e) throw std::domain_error("below threshold");
        const double pe = std::sqrt(E * E - cfg.m_e * cfg.m_e);
        const double pm = std::sqrt(E * E - cfg.m_mu * cfg.m_mu);
        const auto p1 = OnShellMomentum::from_three_momentum(cfg.m_e, 0.0, 0.0, pe);
        const auto p2 = OnShellMomentum::from_three_momentum(cfg.m_e, 0.0, 0.0, -pe);
        const auto p3 = OnShellMomentum::from_three_momentum(cfg.m_mu, pm * sin_theta, 0.0, pm * cos_theta);
        const auto p4 = OnShellMomentum::from_three_momentum(cfg.m_mu, -pm * sin_theta, 0.0, -pm * cos_theta);
        pt.incident = {leg(p1), leg(p2)};
        pt.final = {leg(p3), leg(p4)};
        const bool traces = cfg.route == MsqRoute::traces;
        pt.msq_avg = 0.25 * (traces ? muon_pair_trace_sum(p1, p2, p3, p4, e, g) : muon_pair_spin_sum(p1, p2, p3, p4, e, g));
        pt.fermion_mass_product = std::pow(2.0 * cfg.m_e, 2) * std::pow(2.0 * cfg.m_mu, 2);
        return pt;
    }

    if (cfg.omega <= 0.0) throw std::domain_error("photon energy must be positive");
    const double m = cfg.m_e;
    const double w = cfg.omega;
    const double w_out = w / (1.0 + (w / m) * (1.0 - cos_theta));
    const auto p = OnShellMomentum::from_three_momentum(m, 0.0, 0.0, 0.0);
    const FourVector k{w, 0.0, 0.0, w};
    const FourVector k_out = photon(w_out, cos_theta);
    const auto p_out = OnShellMomentum::from_three_momentum(m, -w_out * sin_theta, 0.0, w - w_out * cos_theta);
    pt.incident = {leg(p), {k, 0.0}};
    pt.final = {{k_out, 0.0}, leg(p_out)};
    const bool spinors = cfg.route == MsqRoute::spinors;
    pt.msq_avg = 0.25 * (spinors ? compton_spin_sum(p, k, p_out, k_out, e, g) : compton_trace_sum(p, k, p_out, k_out, e, g));
    pt.fermion_mass_product = std::pow(2.0 * m, 2);
    return pt;
}

RegScalar recipe_dsigma_domega(const XSecConfig& cfg, const AngularPoint& pt, AuditTrail* trail)
{
    AuditTrail local;
    AuditTrail& t = trail ? *trail : local;

    // Normalization and conservation factors come from an actual box-normalized amplitude.
    const AmplitudeResult a = representative_amplitude(cfg, pt);
    RegScalar norm2 = a.normalization * a.normalization;
    int mass_deltas = static_cast<int>(a.count(ConservationDelta::Kind::mass));
    if (a.count(ConservationDelta::Kind::energy_momentum) != 1 || mass_deltas < 1)
        throw std::invalid_argument("missing conservation factors");
    for (const auto& d : a.deltas)
        if (!d.satisfied(1e-9 * std::max(1.0, pt.incident[0].p[0])))
            throw std::logic_error("conservation delta '" + d.label + "' not satisfied by the kinematics");
    // Photon legs enter as classical potentials: wave factor 1/L² each, one mass delta per photon line.
    int photons = 0;
    for (const auto* legs : {&pt.incident, &pt.final})
        for (const auto& l : *legs) photons += l.m == 0.0;
    norm2 *= RegScalar::box_power(cfg.L, -4 * photons);
    mass_deltas += photons / 2;

    rate_from_squared(pt.msq_avg, norm2, mass_deltas, cfg.L, &t);
    for (std::size_t i = 0; i < pt.final.size(); ++i)
        t.apply("items 4 and 6: final particle " + std::to_string(i + 1) + " phase-space count", phase_space_count(pt.final[i], cfg.L));
    t.apply("remaining delta4 integrated per solid angle", RegScalar::number(two_body_density(pt.final[0].p, pt.final[1].p)));
    t.apply("item 5: division by incident flux", RegScalar::number(1.0) / incident_flux(pt.incident[0], pt.incident[1], cfg.L));
    t.apply("item 7: division by the proper-time interval 2pi delta(0)", RegScalar::number(1.0) / RegScalar::tau_interval(1));

    if (!t.total.regulator_free())
        throw std::logic_error("residual regularization powers: " + to_string(t.total));
    return t.total;
}

double textbook_dsigma_domega(const AngularPoint& pt)
{
    const auto& a = pt.incident[0];
    const auto& b = pt.incident[1];
    const double pp = dot(a.p, b.p);
    const double flux = 4.0 * std::sqrt(pp * pp - a.m * a.m * b.m * b.m);
    return pt.msq_avg * pt.fermion_mass_product / flux * two_body_phase_space(pt.final[0].p, pt.final[1].p);
}

double total_cross_section(const XSecConfig& cfg, double* error_estimate)
{
    auto f = [&](double c) { return recipe_dsigma_domega(cfg, angular_point(cfg, c)).value; };
    double err = 0.0;
    const double integral =
        boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, -1.0, 1.0, 8, cfg.quad_tol, &err);
    if (error_estimate) *error_estimate = 2.0 * kPi * err;
    return 2.0 * kPi * integral;
}

XSecResult cross_section(const XSecConfig& cfg)
{
    if (cfg.grid_points < 2) throw std::invalid_argument("angle grid needs at least two points");
    XSecResult r;
    r.process = cfg.process;
    r.config = cfg;
    const int n = cfg.grid_points;
    for (int i = 0; i < n; ++i)
    {
        const double c = std::clamp(-1.0 + 2.0 * i / (n - 1), -1.0, 1.0);
        const AngularPoint pt = angular_point(cfg, c);
        AuditTrail trail;
        const RegScalar v = recipe_dsigma_domega(cfg, pt, &trail);
        if (i == 0) r.audit = trail;
        if (!(v.value >= 0.0)) throw std::logic_error("negative differential cross section");
        r.cos_theta.push_back(c);
        r.dsigma_domega.push_back(v.value);
        r.dsigma_textbook.push_back(textbook_dsigma_domega(pt));
    }
    r.sigma = total_cross_section(cfg, &r.sigma_error);
    return r;
}

double compton_zero_energy_limit(XSecConfig cfg)
{
    cfg.process = Process::compton;
    constexpr int n = 6;
    std::array<double, n> x{}, y{};
    for (int k = 0; k < n; ++k)
    {
        x[static_cast<std::size_t>(k)] = 0.02 * std::ldexp(1.0, -k);
        cfg.omega = x[static_cast<std::size_t>(k)] * cfg.m_e;
        y[static_cast<std::size_t>(k)] = total_cross_section(cfg);
    }
    // Neville's scheme evaluated at x = 0.
    for (int level = 1; level < n; ++level)
        for (int i = n - 1; i >= level; --i)
        {
            const auto ui = static_cast<std::size_t>(i);
            const auto uj = static_cast<std::size_t>(i - level);
            y[ui] = (x[uj] * y[ui] - x[ui] * y[ui - 1]) / (x[uj] - x[ui]);
        }
    return y[n - 1];
}

void write_csv(std::ostream& os, const XSecResult& r)
{
    os << "cos_theta,dsigma_domega,units\n";
    char buf[96];
    for (std::size_t i = 0; i < r.cos_theta.size(); ++i)
    {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,MeV^-2\n", r.cos_theta[i], r.dsigma_domega[i]);
        os << buf;
    }
}

std::string audit_json(const XSecResult& r)
{
    using nlohmann::json;
    json steps = json::array();
    for (const auto& s : r.audit.steps)
        steps.push_back({{"label", s.label},
                         {"factor", {{"value", s.factor.value}, {"power_L", s.factor.power_L}, {"power_dtau", s.factor.power_dtau}}},
                         {"running", {{"value", s.running.value}, {"power_L", s.running.power_L}, {"power_dtau", s.running.power_dtau}}}});
    double worst = 0.0;
    for (std::size_t i = 0; i < r.dsigma_domega.size(); ++i)
        worst = std::max(worst, std::abs(r.dsigma_domega[i] / r.dsigma_textbook[i] - 1.0));
    const auto& c = r.config;
    json j = {
        {"process", to_string(r.process)},
        {"units", "MeV^-2"},
        {"config", {{"alpha", c.alpha}, {"m_e", c.m_e}, {"m_mu", c.m_mu}, {"sqrt_s", c.sqrt_s}, {"omega", c.omega},
                    {"L", c.L}, {"grid_points", c.grid_points}, {"basis", c.basis->name}}},
        {"sigma", r.sigma},
        {"sigma_quadrature_error", r.sigma_error},
        {"regularization", {{"trail", steps}, {"final_power_L", r.audit.total.power_L}, {"final_power_dtau", r.audit.total.power_dtau}}},
        {"textbook_max_relative_deviation", worst},
    };
    return j.dump(2);
}

}  // namespace pdirac
