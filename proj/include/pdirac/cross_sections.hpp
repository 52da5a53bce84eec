#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pdirac/amplitudes.hpp"
#include "pdirac/regularization.hpp"

namespace pdirac
{

/// Replaces the continuum factor 1/(2π)² by 1/L².
PlaneWave box_normalize(const PlaneWave& w, double L);

/// One factor of the regularization audit, with the running product after it was applied.
struct AuditStep
{
    std::string label;
    RegScalar factor;
    RegScalar running;
};

struct AuditTrail
{
    std::vector<AuditStep> steps;
    RegScalar total;

    void apply(std::string label, const RegScalar& factor);
};

/// Rate per unit four-volume and per unit τ from a squared amplitude.
///
/// msq is the (spin-averaged) |reduced|², norm2 the squared product of the external wave
/// normalizations. The squared δ⁴ contributes L⁴, each squared mass delta one symbolic 2πδ(0),
/// and the division by (2π)⁴δ⁴(0)·2πδ(0) follows.
RegScalar rate_from_squared(double msq, const RegScalar& norm2, int mass_deltas, double L,
                            AuditTrail* trail = nullptr);

/// Same, for a single box-normalized amplitude. Requires exactly one four-momentum delta and
/// at least one mass delta; throws std::invalid_argument("missing conservation factors") otherwise.
RegScalar rate_from_amplitude(const AmplitudeResult& a, double L, AuditTrail* trail = nullptr);

/// External leg for flux and phase-space factors. m = 0 marks a photon, handled as the ϖ → 0
/// limit of a massive boson whose wave carries an extra 1/sqrt(2ϖ).
struct ExternalLeg
{
    FourVector p;
    double m = 0.0;
};

/// Invariant incident flux sqrt((p·p')² - m²m'²) / (m m' L⁸), power_L = -8.
/// For a photon partner the ϖ → 0 limit including its 1/(2ϖ) wave factor: 2|p·k| / (m L⁸).
/// Throws std::domain_error for a nonpositive radicand or negative energies.
RegScalar incident_flux(const ExternalLeg& a, const ExternalLeg& b, double L);
RegScalar incident_flux(const OnShellMomentum& a, const OnShellMomentum& b, double L);

/// L⁴ d⁴p/(2π)⁴ for one final particle after its mass integral: L⁴ × m/E (massive) or L⁴ / (2ω) (photon).
/// The d³p/(2π)³ left over is integrated against the remaining δ⁴ by two_body_density.
RegScalar phase_space_count(const ExternalLeg& leg, double L);

/// dΦ/dΩ of the textbook two-body phase space for particle 3 at direction n, total three-momentum P.
double two_body_phase_space(const FourVector& p3, const FourVector& p4);

/// ∫ d³p₃ d³p₄ /(2π)⁶ (2π)⁴δ⁴ per solid angle of particle 3 = 4 E₃ E₄ dΦ/dΩ.
double two_body_density(const FourVector& p3, const FourVector& p4);

enum class Process
{
    mu_pair,  ///< e⁻e⁺ → μ⁻μ⁺ in the center-of-momentum frame, θ of the μ⁻
    compton,  ///< e⁻γ → e⁻γ with the electron at rest, θ of the outgoing photon
};

std::string to_string(Process p);
Process process_from_string(const std::string& s);

enum class MsqRoute
{
    automatic,  ///< spinors for mu_pair, traces for compton
    spinors,
    traces,
};

struct XSecConfig
{
    Process process = Process::mu_pair;
    double alpha = 1.0 / 137.035999;
    double m_e = 0.51099895;
    double m_mu = 105.6583755;
    double sqrt_s = 1000.0;  ///< mu_pair
    double omega = 1.0;      ///< compton lab photon energy
    double L = 1.0;
    int grid_points = 181;
    double quad_tol = 1e-11;
    MsqRoute route = MsqRoute::automatic;
    const GammaBasis* basis = &GammaBasis::dirac();

    double charge() const;
};

/// Kinematics and spin-averaged |reduced|² at one angle.
struct AngularPoint
{
    double cos_theta = 0.0;
    std::vector<ExternalLeg> incident;
    std::vector<ExternalLeg> final;
    double msq_avg = 0.0;
    double fermion_mass_product = 1.0;  ///< Π 2m over external fermions, |M_std|² = |M_red|² × this
};

AngularPoint angular_point(const XSecConfig& cfg, double cos_theta);

/// The parametrized recipe at one angle, with its audit.
RegScalar recipe_dsigma_domega(const XSecConfig& cfg, const AngularPoint& pt, AuditTrail* trail = nullptr);

/// |M_std|²/(4 sqrt((p₁·p₂)² - m₁²m₂²)) × dΦ/dΩ from the same squared amplitude.
double textbook_dsigma_domega(const AngularPoint& pt);

struct XSecResult
{
    Process process = Process::mu_pair;
    XSecConfig config;
    std::vector<double> cos_theta;
    std::vector<double> dsigma_domega;
    std::vector<double> dsigma_textbook;
    double sigma = 0.0;
    double sigma_error = 0.0;  ///< quadrature error estimate
    AuditTrail audit;          ///< trail at the first grid angle
};

/// Errors: std::domain_error("below threshold"), std::logic_error on residual regulator powers.
XSecResult cross_section(const XSecConfig& cfg);

/// Total σ only (same recipe), for scans.
double total_cross_section(const XSecConfig& cfg, double* error_estimate = nullptr);

/// ω → 0 limit of the Compton total cross section by polynomial extrapolation of
/// σ(ω) sampled at ω/m = 0.02·2^{-k}, k = 0..5.
double compton_zero_energy_limit(XSecConfig cfg);

void write_csv(std::ostream& os, const XSecResult& r);
std::string audit_json(const XSecResult& r);

}  // namespace pdirac
