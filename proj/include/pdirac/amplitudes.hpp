#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pdirac/propagators.hpp"
#include "pdirac/regularization.hpp"
#include "pdirac/spinor_basis.hpp"

namespace pdirac
{

/// Normalization of one external wave as a tagged scalar: (2π)⁻² or L⁻² (power_L = -2).
RegScalar normalization_factor(const WaveNormalization& n);

/// A conservation delta kept symbolically: (2π)⁴δ⁴(Σk) or 2πδ(m_f - m_i).
struct ConservationDelta
{
    enum class Kind
    {
        energy_momentum,
        mass,
    };
    Kind kind;
    std::string label;
    FourVector mismatch;  ///< argument of the delta; only component 0 is used for mass deltas

    bool satisfied(double tol = 1e-9) const;
};

struct AmplitudeResult
{
    cplx reduced{0.0, 0.0};  ///< includes couplings, i's and the leading sign
    int leading_sign = +1;
    RegScalar normalization;  ///< product of external wave normalizations
    std::vector<ConservationDelta> deltas;

    std::size_t count(ConservationDelta::Kind k) const;
};

/// Real photon (or classical potential) leg A^μ = ε^μ e^{±ik·x}: incoming legs carry e^{+ik·x},
/// outgoing legs carry ε* e^{-ik·x}.
struct PhotonLeg
{
    enum class Direction
    {
        incoming,
        outgoing,
    };
    Eigen::Vector4cd polarization;
    FourVector k;
    Direction direction = Direction::outgoing;

    /// Polarization as it enters the vertex (conjugated for outgoing legs).
    Eigen::Vector4cd vertex_polarization() const;
    /// Momentum flowing into the vertex.
    FourVector inflow() const;
    /// Throws std::domain_error("photon leg off the light cone") unless k·k = 0 and ε·k = 0.
    void validate(double tol = 1e-10) const;
};

/// Two transverse unit polarizations for a lightlike k, real and orthogonal to k and to the time axis.
std::array<FourVector, 2> transverse_polarizations(const FourVector& k);

/// Single Fourier mode of an external potential, A^μ(x) = amplitude^μ e^{ik·x}.
/// Potentials built from currents carry the current's normalization and deltas along.
struct PotentialMode
{
    Eigen::Vector4cd amplitude = Eigen::Vector4cd::Zero();
    FourVector k;
    RegScalar normalization;
    std::vector<ConservationDelta> deltas;
};

/// An external potential, known either as Fourier modes or only pointwise.
class ExternalPotential
{
  public:
    ExternalPotential() = default;
    static ExternalPotential zero() { return ExternalPotential{std::vector<PotentialMode>{}}; }
    explicit ExternalPotential(std::vector<PotentialMode> modes) : modes_(std::move(modes)) {}
    explicit ExternalPotential(PotentialMode mode) : modes_(std::vector<PotentialMode>{std::move(mode)}) {}
    explicit ExternalPotential(Potential pointwise) : pointwise_(std::move(pointwise)) {}

    const std::optional<std::vector<PotentialMode>>& modes() const noexcept { return modes_; }
    FourVector operator()(const FourVector& x) const;

  private:
    std::optional<std::vector<PotentialMode>> modes_;
    Potential pointwise_;
};

/// Transition current out̄ γ^λ in with the τ-integral taken (concatenation).
struct MollerCurrent
{
    Eigen::Vector4cd bilinear;  ///< ā_out γ^λ a_in, contravariant
    FourVector momentum;        ///< J(y) ∝ e^{i momentum·y}
    RegScalar normalization;
    ConservationDelta mass_delta;

    Eigen::Vector4cd operator()(const FourVector& y) const;
};

/// General transition current between two waves sharing a normalization convention.
MollerCurrent transition_current(const PlaneWave& out, const PlaneWave& in);

/// J^λ(y) = ∫dσ h̄⁽⁻⁾(y, σ) γ^λ f⁽⁺⁾(y, σ). Requires in = f⁽⁺⁾ and out = h⁽⁻⁾.
MollerCurrent moller_current(const PlaneWave& out, const PlaneWave& in);

/// A^λ(x) = e ∫d⁴y D^{λν}(x - y) J_ν(y) for a plane-wave current, with the massless
/// (gauge-reduced) influence function unless varpi ≠ 0.
PotentialMode potential_from_current(const MollerCurrent& j, double charge, double varpi = 0.0);

/// (±) i e ∫dτ ∫d⁴x φ̄_f slash(A) φ_i for plane waves and a single-mode potential.
/// Throws std::invalid_argument("supply Fourier mode") for pointwise-only potentials.
AmplitudeResult first_order_amplitude(const PlaneWave& final_wave, const PlaneWave& initial_wave,
                                      const ExternalPotential& potential, double charge);

/// Internal fermion line after the τ-integrals: (slash(ℓ) - ω) / (-ℓ·ℓ - ω²),
/// where ω is the external τ-frequency carried through the line.
SpinorMatrix internal_line(const FourVector& l, double omega, const GammaBasis& g = GammaBasis::dirac());

/// Second-order amplitude (±)(-i e²) φ̄_f slash(A) Γ⁰₊ slash(B) φ_i reduced for plane waves.
/// Photon a attaches next to the final wave, photon b next to the initial wave. With
/// include_crossed the photon-exchanged diagram is added.
AmplitudeResult second_order_amplitude(const PlaneWave& final_wave, const PhotonLeg& a, const PhotonLeg& b,
                                       const PlaneWave& initial_wave, double charge, bool include_crossed);

/// Declaration of external legs for an amplitude computation.
struct ProcessSpec
{
    std::vector<PlaneWave> incident;
    std::vector<PlaneWave> final;
    std::vector<PhotonLeg> photons;

    void validate() const;
};

/// e⁻ (f⁽⁺⁾) + two real photons → e⁺ (h⁽⁻⁾). photons[0] attaches next to the positron.
AmplitudeResult pair_annihilation_amplitude(const ProcessSpec& spec, double charge, bool include_crossed = false);

/// e⁻ (f⁽⁺⁾) + γ → e⁻ (f⁽⁺⁾) + γ; the same second-order structure with a forward final wave.
AmplitudeResult compton_amplitude(const ProcessSpec& spec, double charge, bool include_crossed = true);

/// Which pair's current sources the exchanged boson.
enum class CurrentSource
{
    electron_pair,
    muon_pair,
};

/// e⁻(f⁽⁺⁾_1) e⁺(h⁽⁻⁾_2) → μ⁻(f⁽⁺⁾_3) μ⁺(h⁽⁻⁾_4) through one massless boson, assembled as a
/// first-order vertex in the potential of the other pair's Møller current.
AmplitudeResult muon_pair_amplitude(const PlaneWave& electron, const PlaneWave& positron, const PlaneWave& muon,
                                    const PlaneWave& antimuon, double charge,
                                    CurrentSource source = CurrentSource::electron_pair);

/// Σ over spins of |reduced|² for e⁻e⁺ → μ⁻μ⁺ with explicit spinors.
double muon_pair_spin_sum(const OnShellMomentum& p1, const OnShellMomentum& p2, const OnShellMomentum& p3,
                          const OnShellMomentum& p4, double charge, const GammaBasis& g = GammaBasis::dirac());

/// Same spin sum from Dirac traces of the spin projectors, expanded into trace_product calls.
double muon_pair_trace_sum(const OnShellMomentum& p1, const OnShellMomentum& p2, const OnShellMomentum& p3,
                           const OnShellMomentum& p4, double charge, const GammaBasis& g = GammaBasis::dirac());

/// Compton kinematics e(p) γ(k) → e(p') γ(k'): Σ over spins and the two transverse
/// polarizations of each photon of |reduced|², both diagrams.
double compton_spin_sum(const OnShellMomentum& p, const FourVector& k, const OnShellMomentum& p_out,
                        const FourVector& k_out, double charge, const GammaBasis& g = GammaBasis::dirac());

/// Same sum from traces with Σ ε^μ ε^ν → g^{μν}.
double compton_trace_sum(const OnShellMomentum& p, const FourVector& k, const OnShellMomentum& p_out,
                         const FourVector& k_out, double charge, const GammaBasis& g = GammaBasis::dirac());

/// Virtual-vertex expansion of a wave about parameter value ρ:
///   ψ(x, τ) = (1/i) ∫d⁴z {θ(τ-ρ)Γ⁰₊ - θ(ρ-τ)Γ⁰₋}(x - z, τ - ρ) ψ(z, ρ).
struct VirtualVertexExpansion
{
    SpinorField trivial_vertex;  ///< the physical wave sampled at ρ, z ↦ ψ(z, ρ)
    FermionKernelSpec forward;
    FermionKernelSpec backward;
    SpaceTimeLattice lattice;
    double rho = 0.0;

    /// The propagated (virtual) leg evaluated at (x, τ); reproduces the original wave.
    Spinor recompose(const FourVector& x, double tau) const;
};

VirtualVertexExpansion virtual_vertex_expand(const PlaneWave& wave, double rho, const MomentumGrid& grid,
                                             const SpaceTimeLattice& lattice);

/// Vertex/leg bookkeeping for a tree diagram in the τ picture.
struct DiagramCount
{
    int physical_vertices = 0;
    int trivial_vertices = 0;
    int physical_fermion_legs = 0;
    int virtual_fermion_legs = 0;
    bool every_vertex_mixed = false;  ///< each vertex has one on-shell and one off-shell fermion leg
};

/// Counts for the muon-pair ansatz after inserting a trivial vertex on each incident physical leg.
DiagramCount expand_muon_pair_vertices();

/// Finite-window mass delta (1/2π) ∫_{-T}^{T} e^{i Δ τ} dτ; tends to δ(Δ) as T → ∞.
cplx windowed_mass_delta(double mismatch, double half_window);

}  // namespace pdirac
